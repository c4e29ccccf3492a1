#pragma once

#include <vector>

#include "docbin/field.hpp"

namespace docbin {

// Compactly supported smoothing kernel on a square lattice. The grid spans
// 2*ceil(radius/sqrt(2)) + 1 samples per side; entries outside the open disk
// of the given radius (measured from the center sample) are exactly zero and
// the rest follow the bump profile exp(-1 / (1 - d^2/radius^2)), normalized
// to unit sum.
class Kernel {
 public:
  double radius() const noexcept { return radius_; }
  int size() const noexcept { return size_; }
  int center() const noexcept { return center_; }  // same for both axes, 0-based
  double weight(int p, int q) const noexcept { return weights_[static_cast<size_t>(p) * size_ + q]; }
  const std::vector<double>& weights() const noexcept { return weights_; }

  friend Kernel build_kernel(double radius);

 private:
  double radius_ = 0.0;
  int size_ = 0;
  int center_ = 0;
  std::vector<double> weights_;
};

Kernel build_kernel(double radius);

// Direct (non-FFT) correlation with mirror-reflected boundaries. The kernel
// is symmetric, so correlation and convolution coincide.
Field convolve(const Field& field, const Kernel& kernel);

}  // namespace docbin
