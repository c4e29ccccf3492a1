#pragma once

#include <vector>

namespace docbin {

// Reflect an index into [0, n) by mirroring across the array edges
// (half-sample symmetric: -1 -> 0, -2 -> 1, n -> n-1, ...). Only one
// mirror period is defined on each side; anything further out throws.
int reflect_index(int i, int n);

// Rectangular grid of doubles, row-major. The workhorse type for every
// evolving quantity (b, u, diffusivity, membership maps, ...). Values are
// unconstrained; see GrayImage for the [0,1]-validated observed image.
class Field {
 public:
  Field() = default;
  Field(int width, int height, double value = 0.0);
  static Field from_data(int width, int height, std::vector<double> data);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  bool empty() const noexcept { return data_.empty(); }

  double& operator()(int row, int col) noexcept { return data_[static_cast<size_t>(row) * width_ + col]; }
  double operator()(int row, int col) const noexcept { return data_[static_cast<size_t>(row) * width_ + col]; }

  // Mirror-extended sample; rows and columns may overhang by one period.
  double reflect(int row, int col) const;

  double min() const;
  double max() const;
  double mean() const;

  std::vector<double>& data() noexcept { return data_; }
  const std::vector<double>& data() const noexcept { return data_; }

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<double> data_;
};

bool same_shape(const Field& a, const Field& b);

}  // namespace docbin
