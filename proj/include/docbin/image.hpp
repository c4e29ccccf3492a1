#pragma once

#include <cstdint>
#include <vector>

#include "docbin/field.hpp"

namespace docbin {

// Observed document image: samples normalized into [0,1], 0 = black ink.
// At least 3x3 so the 5-point stencils always have a real neighborhood.
class GrayImage {
 public:
  explicit GrayImage(Field f);

  int width() const noexcept { return field_.width(); }
  int height() const noexcept { return field_.height(); }
  double operator()(int row, int col) const noexcept { return field_(row, col); }
  const Field& field() const noexcept { return field_; }

 private:
  Field field_;
};

// Hard classification: 0 = text, 1 = background.
class BinaryImage {
 public:
  BinaryImage() = default;
  BinaryImage(int width, int height, std::uint8_t value = 1);
  static BinaryImage from_data(int width, int height, std::vector<std::uint8_t> data);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::uint8_t& operator()(int row, int col) noexcept { return data_[static_cast<size_t>(row) * width_ + col]; }
  std::uint8_t operator()(int row, int col) const noexcept { return data_[static_cast<size_t>(row) * width_ + col]; }

  std::vector<std::uint8_t>& data() noexcept { return data_; }
  const std::vector<std::uint8_t>& data() const noexcept { return data_; }

  long long text_count() const;  // number of 0 pixels

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> data_;
};

double min_intensity(const GrayImage& img);

// Mirror-extended lookup, one period of overhang allowed on each side.
double reflect_sample(const GrayImage& img, int row, int col);

}  // namespace docbin
