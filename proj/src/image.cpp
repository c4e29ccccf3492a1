#include "docbin/image.hpp"

#include <stdexcept>
#include <string>

namespace docbin {

GrayImage::GrayImage(Field f) : field_(std::move(f)) {
  if (field_.width() < 3 || field_.height() < 3) {
    throw std::invalid_argument("GrayImage: needs at least 3x3 pixels, got " + std::to_string(field_.width()) + "x" + std::to_string(field_.height()));
  }
  for (double v : field_.data()) {
    if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("GrayImage: sample outside [0,1]");
  }
}

BinaryImage::BinaryImage(int width, int height, std::uint8_t value) {
  if (width < 1 || height < 1) throw std::invalid_argument("BinaryImage: dimensions must be positive");
  if (value > 1) throw std::invalid_argument("BinaryImage: fill value must be 0 or 1");
  width_ = width;
  height_ = height;
  data_.assign(static_cast<size_t>(width) * height, value);
}

BinaryImage BinaryImage::from_data(int width, int height, std::vector<std::uint8_t> data) {
  if (width < 1 || height < 1) throw std::invalid_argument("BinaryImage: dimensions must be positive");
  if (data.size() != static_cast<size_t>(width) * height) throw std::invalid_argument("BinaryImage: data size does not match dimensions");
  for (std::uint8_t v : data) {
    if (v > 1) throw std::invalid_argument("BinaryImage: values must be 0 or 1");
  }
  BinaryImage b;
  b.width_ = width;
  b.height_ = height;
  b.data_ = std::move(data);
  return b;
}

long long BinaryImage::text_count() const {
  long long n = 0;
  for (std::uint8_t v : data_) n += (v == 0);
  return n;
}

double min_intensity(const GrayImage& img) { return img.field().min(); }

double reflect_sample(const GrayImage& img, int row, int col) { return img.field().reflect(row, col); }

}  // namespace docbin
