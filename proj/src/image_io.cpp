#include "docbin/image_io.hpp"

#include <png.h>

#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace docbin {

namespace {

constexpr long long kMaxPixels = 100'000'000;  // refuse absurd headers early

[[noreturn]] void io_fail(const std::string& path, const std::string& what) {
  throw std::runtime_error(path + ": " + what);
}

// Skips PGM whitespace and '#' comment lines, then parses one decimal token.
int read_pgm_int(std::istream& in, const std::string& path) {
  int c = in.get();
  while (c != EOF && (std::isspace(c) || c == '#')) {
    if (c == '#') {
      while (c != EOF && c != '\n') c = in.get();
    }
    c = in.get();
  }
  if (c == EOF || !std::isdigit(c)) io_fail(path, "malformed PGM header");
  long long v = 0;
  while (c != EOF && std::isdigit(c)) {
    v = v * 10 + (c - '0');
    if (v > kMaxPixels) io_fail(path, "PGM header value out of range");
    c = in.get();
  }
  return static_cast<int>(v);
}

Field load_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) io_fail(path, "cannot open for reading");
  char magic[2] = {0, 0};
  in.read(magic, 2);
  if (magic[0] != 'P' || magic[1] != '5') io_fail(path, "not a binary PGM (P5) file");
  const int width = read_pgm_int(in, path);
  const int height = read_pgm_int(in, path);
  const int maxval = read_pgm_int(in, path);
  if (width < 1 || height < 1) io_fail(path, "PGM with empty dimensions");
  if (static_cast<long long>(width) * height > kMaxPixels) io_fail(path, "image too large");
  if (maxval < 1 || maxval > 255) io_fail(path, "only 8-bit PGM is supported");
  // Header terminates with exactly one whitespace byte before the raster.
  std::vector<std::uint8_t> raw(static_cast<size_t>(width) * height);
  in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (in.gcount() != static_cast<std::streamsize>(raw.size())) io_fail(path, "truncated PGM raster");
  std::vector<double> data(raw.size());
  const double scale = 1.0 / maxval;
  for (size_t i = 0; i < raw.size(); ++i) data[i] = raw[i] * scale;
  return Field::from_data(width, height, std::move(data));
}

Field load_png(const std::string& path) {
  png_image png{};
  png.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&png, path.c_str())) {
    io_fail(path, std::string("PNG read failed: ") + png.message);
  }
  const bool is_gray = (png.format & PNG_FORMAT_FLAG_COLOR) == 0;
  png.format = is_gray ? PNG_FORMAT_GRAY : PNG_FORMAT_RGB;
  const int width = static_cast<int>(png.width);
  const int height = static_cast<int>(png.height);
  if (width < 1 || height < 1 || static_cast<long long>(width) * height > kMaxPixels) {
    png_image_free(&png);
    io_fail(path, "bad PNG dimensions");
  }
  std::vector<std::uint8_t> raw(PNG_IMAGE_SIZE(png));
  if (!png_image_finish_read(&png, nullptr, raw.data(), 0, nullptr)) {
    const std::string msg = png.message;
    png_image_free(&png);
    io_fail(path, "PNG decode failed: " + msg);
  }
  std::vector<double> data(static_cast<size_t>(width) * height);
  if (is_gray) {
    for (size_t i = 0; i < data.size(); ++i) data[i] = raw[i] / 255.0;
  } else {
    for (size_t i = 0; i < data.size(); ++i) {
      const double y = 0.299 * raw[3 * i] + 0.587 * raw[3 * i + 1] + 0.114 * raw[3 * i + 2];
      data[i] = y / 255.0;
    }
  }
  return Field::from_data(width, height, std::move(data));
}

bool has_png_extension(const std::string& path) {
  if (path.size() < 4) return false;
  std::string ext = path.substr(path.size() - 4);
  for (char& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return ext == ".png";
}

std::uint8_t quantize(double v) {
  const double c = v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v);
  return static_cast<std::uint8_t>(std::lround(c * 255.0));
}

void write_pgm(const std::string& path, int width, int height, const std::vector<std::uint8_t>& raw) {
  std::ofstream out(path, std::ios::binary);
  if (!out) io_fail(path, "cannot open for writing");
  out << "P5\n" << width << " " << height << "\n255\n";
  out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (!out) io_fail(path, "short write");
}

}  // namespace

GrayImage load_gray(const std::string& path) {
  std::ifstream probe(path, std::ios::binary);
  if (!probe) io_fail(path, "cannot open for reading");
  unsigned char magic[2] = {0, 0};
  probe.read(reinterpret_cast<char*>(magic), 2);
  probe.close();
  if (magic[0] == 'P' && magic[1] == '5') return GrayImage(load_pgm(path));
  if (magic[0] == 0x89 && magic[1] == 'P') return GrayImage(load_png(path));
  io_fail(path, "unrecognized image format (want PGM P5 or PNG)");
}

void save_gray(const std::string& path, const GrayImage& img) {
  const int w = img.width();
  const int h = img.height();
  if (has_png_extension(path)) {
    std::vector<std::uint8_t> raw(static_cast<size_t>(w) * h);
    for (size_t i = 0; i < raw.size(); ++i) raw[i] = quantize(img.field().data()[i]);
    png_image png{};
    png.version = PNG_IMAGE_VERSION;
    png.width = static_cast<png_uint_32>(w);
    png.height = static_cast<png_uint_32>(h);
    png.format = PNG_FORMAT_GRAY;
    if (!png_image_write_to_file(&png, path.c_str(), 0, raw.data(), 0, nullptr)) {
      io_fail(path, std::string("PNG write failed: ") + png.message);
    }
    return;
  }
  std::vector<std::uint8_t> raw(static_cast<size_t>(w) * h);
  for (size_t i = 0; i < raw.size(); ++i) raw[i] = quantize(img.field().data()[i]);
  write_pgm(path, w, h, raw);
}

void save_binary(const std::string& path, const BinaryImage& img) {
  std::vector<std::uint8_t> raw(img.data().size());
  for (size_t i = 0; i < raw.size(); ++i) raw[i] = img.data()[i] ? 255 : 0;
  write_pgm(path, img.width(), img.height(), raw);
}

BinaryImage load_binary(const std::string& path) {
  const Field f = load_pgm(path);
  std::vector<std::uint8_t> data(f.data().size());
  for (size_t i = 0; i < data.size(); ++i) {
    const double v = f.data()[i];
    if (v == 0.0) {
      data[i] = 0;
    } else if (v == 1.0) {
      data[i] = 1;
    } else {
      io_fail(path, "not a two-level mask");
    }
  }
  return BinaryImage::from_data(f.width(), f.height(), std::move(data));
}

BinaryImage to_binary(const GrayImage& img, double threshold) {
  BinaryImage out(img.width(), img.height());
  for (int i = 0; i < img.height(); ++i) {
    for (int j = 0; j < img.width(); ++j) out(i, j) = img(i, j) > threshold ? 1 : 0;
  }
  return out;
}

}  // namespace docbin
