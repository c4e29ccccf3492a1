#include "docbin/mollifier.hpp"

#include <cmath>
#include <stdexcept>

namespace docbin {

Kernel build_kernel(double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("build_kernel: radius must be positive");
  const int half = static_cast<int>(std::ceil(radius / std::sqrt(2.0)));
  const int size = 2 * half + 1;
  const double r2 = radius * radius;
  std::vector<double> w(static_cast<size_t>(size) * size, 0.0);
  double sum = 0.0;
  for (int p = 0; p < size; ++p) {
    for (int q = 0; q < size; ++q) {
      const double d2 = static_cast<double>((p - half) * (p - half) + (q - half) * (q - half));
      if (d2 < r2) {
        // Unnormalized bump; the 1/radius^2 factor cancels below but is kept
        // so the entries match the continuous profile before normalization.
        w[static_cast<size_t>(p) * size + q] = std::exp(-1.0 / (1.0 - d2 / r2)) / r2;
        sum += w[static_cast<size_t>(p) * size + q];
      }
    }
  }
  for (double& v : w) v /= sum;
  Kernel k;
  k.radius_ = radius;
  k.size_ = size;
  k.center_ = half;
  k.weights_ = std::move(w);
  return k;
}

Field convolve(const Field& field, const Kernel& kernel) {
  if (field.empty()) throw std::invalid_argument("convolve: empty field");
  const int h = field.height();
  const int w = field.width();
  const int size = kernel.size();
  const int c = kernel.center();
  if (c > h || c > w) {
    // Mirror extension is only defined within one period per side.
    throw std::invalid_argument("convolve: kernel overhang exceeds field size");
  }
  Field out(w, h);
  for (int i = 0; i < h; ++i) {
    for (int j = 0; j < w; ++j) {
      double acc = 0.0;
      for (int p = 0; p < size; ++p) {
        for (int q = 0; q < size; ++q) {
          const double kv = kernel.weight(p, q);
          if (kv == 0.0) continue;
          acc += kv * field.reflect(i + p - c, j + q - c);
        }
      }
      out(i, j) = acc;
    }
  }
  return out;
}

}  // namespace docbin
