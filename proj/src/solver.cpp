#include "docbin/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

#include "docbin/fractional.hpp"

namespace docbin {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(std::string("SolverParams: ") + what);
}

double clamp01(double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); }

// Relative L2 change between consecutive foreground iterates.
double relative_change(const Field& next, const Field& prev) {
  double dn = 0.0, pn = 0.0;
  for (size_t i = 0; i < prev.data().size(); ++i) {
    const double d = next.data()[i] - prev.data()[i];
    dn += d * d;
    pn += prev.data()[i] * prev.data()[i];
  }
  return std::sqrt(dn) / std::max(std::sqrt(pn), 1e-12);
}

}  // namespace

void SolverParams::validate() const {
  require(a11 >= 0.0 && a12 >= 0.0 && a21 >= 0.0 && a22 >= 0.0 && a24 >= 0.0, "coupling strengths must be nonnegative");
  require(a23 > 0.0 && a23 < 1.0, "a23 must lie strictly inside (0,1)");
  require(lambda11 >= 0.0 && lambda12 >= 0.0 && lambda21 >= 0.0 && lambda22 >= 0.0, "lambda strengths must be nonnegative");
  require(lambda23 > 0.0 && lambda23 < 1.0, "lambda23 must lie strictly inside (0,1)");
  require(rho > 0.0, "rho must be positive");
  require(r >= 1, "r must be at least 1");
  require(epsilon > 0.0, "epsilon must be positive");
  require(alpha > 0.0 && alpha <= 2.0, "alpha must be in (0,2]");
  require(tau > 0.0, "tau must be positive");
  require(K >= 1, "K must be at least 1");
  require(max_iters >= 0, "max_iters must be nonnegative");
  require(rel_tol >= 0.0, "rel_tol must be nonnegative");
  const double diff_b = model == Model::proposed ? a11 : lambda11;
  const double diff_u = model == Model::proposed ? a21 : lambda21;
  if (tau * 4.0 * diff_b > 1.0 || tau * 4.0 * diff_u > 1.0) {
    std::fprintf(stderr, "warning: tau * 4 * diffusion exceeds 1; the explicit scheme may be unstable\n");
  }
}

SolverState init(const GrayImage& s, const SolverParams& params) {
  params.validate();
  SolverState st;
  st.b = Field(s.width(), s.height(), 1.0);
  st.u = s.field();
  st.n = 0;
  st.cluster = precompute(s, params.rho, params.epsilon);
  st.s_min = min_intensity(s);
  return st;
}

double mu(double t) {
  if (t < 0.0) throw std::invalid_argument("mu: t must be nonnegative");
  return 1.0 - std::exp(-t / 20.0);
}

Field local_max(const Field& u, int r) {
  if (r < 1) throw std::invalid_argument("local_max: window radius must be >= 1");
  const int h = u.height();
  const int w = u.width();
  if (r > h || r > w) throw std::invalid_argument("local_max: window radius exceeds field size");
  // Separable: max across rows, then across columns of the row result.
  Field rows(w, h);
  for (int i = 0; i < h; ++i) {
    for (int j = 0; j < w; ++j) {
      double m = u.reflect(i, j - r);
      for (int k = -r + 1; k <= r; ++k) m = std::max(m, u.reflect(i, j + k));
      rows(i, j) = m;
    }
  }
  Field out(w, h);
  for (int i = 0; i < h; ++i) {
    for (int j = 0; j < w; ++j) {
      double m = rows.reflect(i - r, j);
      for (int k = -r + 1; k <= r; ++k) m = std::max(m, rows.reflect(i + k, j));
      out(i, j) = m;
    }
  }
  return out;
}

Field source_term(const Field& s, const Field& u, const ClusterFields& cluster,
                  const Field& local_max_u, double t, double s_min, const SolverParams& params) {
  if (!same_shape(s, u) || !same_shape(u, local_max_u) || !same_shape(u, cluster.omega)) {
    throw std::invalid_argument("source_term: shape mismatch");
  }
  const double mu_t = mu(t);
  Field out(u.width(), u.height());
  for (size_t i = 0; i < u.data().size(); ++i) {
    const double uv = u.data()[i];
    const double cube = uv * (1.0 - uv);
    const double omega = cluster.omega.data()[i];
    out.data()[i] = params.a23 * omega * cube * (uv - cluster.c.data()[i])
                  + (1.0 - params.a23) * (1.0 - omega) * mu_t * cube * (uv - s_min)
                  + params.a24 * cube * (uv - local_max_u.data()[i]);
  }
  return out;
}

Field dh_source_term(const Field& s, const Field& u, const ClusterFields& cluster,
                     double t, double s_min, const SolverParams& params) {
  if (!same_shape(s, u) || !same_shape(u, cluster.omega)) {
    throw std::invalid_argument("dh_source_term: shape mismatch");
  }
  const double mu_t = mu(t);
  Field out(u.width(), u.height());
  for (size_t i = 0; i < u.data().size(); ++i) {
    const double uv = u.data()[i];
    const double cube = uv * (1.0 - uv);
    const double omega = cluster.omega.data()[i];
    out.data()[i] = params.lambda23 * omega * cube * (uv - cluster.c.data()[i])
                  + (1.0 - params.lambda23) * (1.0 - omega) * mu_t * cube * (uv - s_min);
  }
  return out;
}

Field background_step(const SolverState& state, const Field& s, const SolverParams& params) {
  const Field& b = state.b;
  const Field& u = state.u;
  if (!same_shape(b, s) || !same_shape(u, s)) throw std::invalid_argument("background_step: shape mismatch");
  const bool proposed = params.model == Model::proposed;
  const double diff = proposed ? params.a11 : params.lambda11;
  const double fid = proposed ? params.a12 : params.lambda12;
  const int h = s.height();
  const int w = s.width();
  Field out(w, h);
  for (int i = 0; i < h; ++i) {
    for (int j = 0; j < w; ++j) {
      const double lap = b.reflect(i + 1, j) + b.reflect(i - 1, j) + b.reflect(i, j + 1) + b.reflect(i, j - 1) - 4.0 * b(i, j);
      const double resid = proposed ? (s(i, j) - b(i, j) - u(i, j)) : (s(i, j) - b(i, j) * u(i, j));
      out(i, j) = b(i, j) + params.tau * (diff * lap + fid * u(i, j) * resid);
    }
  }
  return out;
}

Field diffusion_divergence(const Field& u, const Field& g) {
  if (!same_shape(u, g)) throw std::invalid_argument("diffusion_divergence: shape mismatch");
  const int h = u.height();
  const int w = u.width();
  Field out(w, h);
  for (int i = 0; i < h; ++i) {
    for (int j = 0; j < w; ++j) {
      const double gc = g(i, j);
      const double uc = u(i, j);
      const double south = 0.5 * (gc + g.reflect(i + 1, j)) * (u.reflect(i + 1, j) - uc);
      const double north = 0.5 * (gc + g.reflect(i - 1, j)) * (uc - u.reflect(i - 1, j));
      const double east = 0.5 * (gc + g.reflect(i, j + 1)) * (u.reflect(i, j + 1) - uc);
      const double west = 0.5 * (gc + g.reflect(i, j - 1)) * (uc - u.reflect(i, j - 1));
      out(i, j) = (south - north) + (east - west);
    }
  }
  return out;
}

Field foreground_step(const SolverState& state, const Field& s, const Field& b_next,
                      const SolverParams& params) {
  const Field& u = state.u;
  if (!same_shape(u, s) || !same_shape(u, b_next)) throw std::invalid_argument("foreground_step: shape mismatch");
  const bool proposed = params.model == Model::proposed;
  const double t = state.n * params.tau;

  Field g;
  Field forcing;
  if (proposed) {
    g = diffusivity(frac_grad_mag(u, gl_coeffs(params.alpha, params.K)));
    forcing = source_term(s, u, state.cluster, local_max(u, params.r), t, state.s_min, params);
  } else {
    g = dh_diffusivity(u);
    forcing = dh_source_term(s, u, state.cluster, t, state.s_min, params);
  }
  const Field div = diffusion_divergence(u, g);

  const double diff = proposed ? params.a21 : params.lambda21;
  const double fid = proposed ? params.a22 : params.lambda22;
  Field out(u.width(), u.height());
  for (size_t i = 0; i < u.data().size(); ++i) {
    const double bv = b_next.data()[i];
    const double resid = proposed ? (s.data()[i] - bv - u.data()[i]) : (s.data()[i] - bv * u.data()[i]);
    const double v = u.data()[i] + params.tau * (diff * div.data()[i] + fid * bv * resid + forcing.data()[i]);
    if (!std::isfinite(v)) {
      throw std::runtime_error("foreground update diverged at iteration " + std::to_string(state.n + 1) + "; reduce tau or the diffusion strengths");
    }
    out.data()[i] = clamp01(v);
  }
  return out;
}

EvolveResult evolve(const GrayImage& s, const SolverParams& params,
                    const TraceSink& sink, int trace_interval) {
  SolverState st = init(s, params);
  const Field& sf = s.field();
  while (st.n < params.max_iters) {
    Field b_next = background_step(st, sf, params);
    Field u_next = foreground_step(st, sf, b_next, params);
    const double change = relative_change(u_next, st.u);
    st.b = std::move(b_next);
    st.u = std::move(u_next);
    ++st.n;
    if (sink && trace_interval > 0 && st.n % trace_interval == 0) sink(st.n, st.b, st.u);
    if (change < params.rel_tol) break;
  }
  return {std::move(st.b), std::move(st.u), st.n};
}

BinaryImage binarize(const Field& u) {
  BinaryImage out(u.width(), u.height());
  for (int i = 0; i < u.height(); ++i) {
    for (int j = 0; j < u.width(); ++j) out(i, j) = u(i, j) > 0.5 ? 1 : 0;
  }
  return out;
}

std::vector<double> source_ode_trajectory(double u0, double v, double tau, int steps) {
  if (!(u0 >= 0.0 && u0 <= 1.0)) throw std::invalid_argument("source_ode_trajectory: u0 must be in [0,1]");
  if (!(tau > 0.0 && tau <= 0.1)) throw std::invalid_argument("source_ode_trajectory: tau must be in (0, 0.1]");
  if (steps < 1) throw std::invalid_argument("source_ode_trajectory: steps must be at least 1");
  std::vector<double> traj;
  traj.reserve(static_cast<size_t>(steps) + 1);
  traj.push_back(u0);
  double u = u0;
  for (int k = 0; k < steps; ++k) {
    u += tau * u * (1.0 - u) * (u - v);
    traj.push_back(u);
  }
  return traj;
}

}  // namespace docbin
