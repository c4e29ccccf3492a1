#include "docbin/field.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace docbin {

int reflect_index(int i, int n) {
  if (i >= 0 && i < n) return i;
  if (i < 0) {
    if (i < -n) throw std::invalid_argument("reflect_index: overhang " + std::to_string(-i) + " exceeds one mirror period (dim " + std::to_string(n) + ")");
    return -i - 1;
  }
  if (i >= 2 * n) throw std::invalid_argument("reflect_index: overhang " + std::to_string(i - n + 1) + " exceeds one mirror period (dim " + std::to_string(n) + ")");
  return 2 * n - 1 - i;
}

Field::Field(int width, int height, double value) {
  if (width < 1 || height < 1) throw std::invalid_argument("Field: dimensions must be positive");
  width_ = width;
  height_ = height;
  data_.assign(static_cast<size_t>(width) * height, value);
}

Field Field::from_data(int width, int height, std::vector<double> data) {
  if (width < 1 || height < 1) throw std::invalid_argument("Field: dimensions must be positive");
  if (data.size() != static_cast<size_t>(width) * height) throw std::invalid_argument("Field: data size does not match dimensions");
  Field f;
  f.width_ = width;
  f.height_ = height;
  f.data_ = std::move(data);
  return f;
}

double Field::reflect(int row, int col) const {
  return (*this)(reflect_index(row, height_), reflect_index(col, width_));
}

double Field::min() const { return *std::min_element(data_.begin(), data_.end()); }

double Field::max() const { return *std::max_element(data_.begin(), data_.end()); }

double Field::mean() const {
  return std::accumulate(data_.begin(), data_.end(), 0.0) / static_cast<double>(data_.size());
}

bool same_shape(const Field& a, const Field& b) {
  return a.width() == b.width() && a.height() == b.height();
}

}  // namespace docbin
