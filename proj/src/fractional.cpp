#include "docbin/fractional.hpp"

#include <cmath>
#include <stdexcept>

namespace docbin {

GlCoeffs gl_coeffs(double alpha, int truncation) {
  if (!(alpha > 0.0 && alpha <= 2.0)) throw std::invalid_argument("gl_coeffs: alpha must be in (0, 2]");
  if (truncation < 1) throw std::invalid_argument("gl_coeffs: truncation must be >= 1");
  GlCoeffs c;
  c.alpha = alpha;
  c.truncation = truncation;
  c.weights.resize(static_cast<size_t>(truncation) + 1);
  c.weights[0] = 1.0;
  for (int k = 1; k <= truncation; ++k) {
    c.weights[k] = c.weights[k - 1] * (1.0 - (alpha + 1.0) / k);
  }
  return c;
}

Field frac_grad_mag(const Field& u, const GlCoeffs& coeffs) {
  const int h = u.height();
  const int w = u.width();
  const int K = coeffs.truncation;
  if (K > h || K > w) {
    throw std::invalid_argument("frac_grad_mag: truncation exceeds field dimension (mirror extension covers one period)");
  }
  Field out(w, h);
  for (int i = 0; i < h; ++i) {
    for (int j = 0; j < w; ++j) {
      double dx = 0.0, dy = 0.0;
      for (int k = 0; k <= K; ++k) {
        const double wk = coeffs.weights[k];
        dx += wk * u.reflect(i, j - k);
        dy += wk * u.reflect(i - k, j);
      }
      out(i, j) = std::sqrt(dx * dx + dy * dy);
    }
  }
  return out;
}

Field diffusivity(const Field& grad_mag) {
  const double zeta = grad_mag.mean();
  Field g(grad_mag.width(), grad_mag.height(), 1.0);
  if (zeta < 1e-12) return g;
  const double inv_z2 = 1.0 / (zeta * zeta);
  for (size_t i = 0; i < g.data().size(); ++i) {
    const double z = grad_mag.data()[i];
    g.data()[i] = std::exp(-z * z * inv_z2);
  }
  return g;
}

Field dh_diffusivity(const Field& u) {
  const int h = u.height();
  const int w = u.width();
  Field sq(w, h);
  for (int i = 0; i < h; ++i) {
    for (int j = 0; j < w; ++j) {
      const double ux = 0.5 * (u.reflect(i, j + 1) - u.reflect(i, j - 1));
      const double uy = 0.5 * (u.reflect(i + 1, j) - u.reflect(i - 1, j));
      sq(i, j) = ux * ux + uy * uy;
    }
  }
  const double kappa = sq.mean();
  Field g(w, h, 1.0);
  if (kappa < 1e-12) return g;
  for (size_t i = 0; i < g.data().size(); ++i) g.data()[i] = 1.0 / (1.0 + sq.data()[i] / kappa);
  return g;
}

}  // namespace docbin
