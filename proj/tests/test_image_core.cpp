#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <png.h>

#include <cstdio>
#include <fstream>
#include <random>
#include <stdexcept>
#include <vector>

#include "docbin/field.hpp"
#include "docbin/image.hpp"
#include "docbin/image_io.hpp"
#include "test_util.hpp"

using docbin::BinaryImage;
using docbin::Field;
using docbin::GrayImage;

namespace {

void write_bytes(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

std::string read_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("reflect_index mirrors one period on each side") {
  // Inside the domain the index passes through.
  CHECK(docbin::reflect_index(2, 5) == 2);
  CHECK(docbin::reflect_index(0, 5) == 0);
  CHECK(docbin::reflect_index(4, 5) == 4);

  // -1 -> 0 and n -> n-1: the edge sample repeats across the border.
  CHECK(docbin::reflect_index(-1, 5) == 0);
  CHECK(docbin::reflect_index(5, 5) == 4);

  // -k -> k-1 and n-1+k -> n-k through the whole period.
  for (int k = 1; k <= 5; ++k) {
    CHECK(docbin::reflect_index(-k, 5) == k - 1);
    CHECK(docbin::reflect_index(5 - 1 + k, 5) == 5 - k);
  }

  // Mirror symmetry across the lower edge.
  for (int k = 0; k < 5; ++k) {
    CHECK(docbin::reflect_index(-1 - k, 5) == docbin::reflect_index(k, 5));
  }

  // More than one period of overhang is a contract violation.
  CHECK_THROWS_AS(docbin::reflect_index(-6, 5), std::invalid_argument);
  CHECK_THROWS_AS(docbin::reflect_index(10, 5), std::invalid_argument);
  CHECK(docbin::reflect_index(-5, 5) == 4);
  CHECK(docbin::reflect_index(9, 5) == 0);
}

TEST_CASE("Field construction and basic statistics") {
  Field f(4, 3, 0.25);
  CHECK(f.width() == 4);
  CHECK(f.height() == 3);
  CHECK(f.min() == 0.25);
  CHECK(f.max() == 0.25);
  CHECK(f.mean() == doctest::Approx(0.25).epsilon(1e-15));

  f(1, 2) = 0.75;
  CHECK(f(1, 2) == 0.75);
  CHECK(f.max() == 0.75);

  CHECK_THROWS_AS(Field(0, 3), std::invalid_argument);
  CHECK_THROWS_AS(Field::from_data(2, 2, {1.0, 2.0, 3.0}), std::invalid_argument);

  CHECK(docbin::same_shape(Field(4, 3), Field(4, 3)));
  CHECK_FALSE(docbin::same_shape(Field(4, 3), Field(3, 4)));
}

TEST_CASE("Field reflect agrees with reflect_index on both axes") {
  Field f = Field::from_data(3, 2, {1, 2, 3, 4, 5, 6});
  CHECK(f.reflect(0, 0) == 1);
  CHECK(f.reflect(-1, 0) == 1);   // row -1 -> row 0
  CHECK(f.reflect(2, 0) == 4);    // row 2 -> row 1
  CHECK(f.reflect(0, -1) == 1);   // col -1 -> col 0
  CHECK(f.reflect(0, 3) == 3);    // col 3 -> col 2
  CHECK(f.reflect(-2, -2) == 5);  // row -2 -> 1, col -2 -> 1
}

TEST_CASE("GrayImage validates dimensions and range") {
  CHECK_NOTHROW(GrayImage(Field(3, 3, 0.0)));
  CHECK_NOTHROW(GrayImage(Field(3, 3, 1.0)));
  CHECK_THROWS_AS(GrayImage(Field(2, 5, 0.5)), std::invalid_argument);
  CHECK_THROWS_AS(GrayImage(Field(5, 2, 0.5)), std::invalid_argument);
  CHECK_THROWS_AS(GrayImage(Field(3, 3, -0.1)), std::invalid_argument);
  CHECK_THROWS_AS(GrayImage(Field(3, 3, 1.1)), std::invalid_argument);
}

TEST_CASE("BinaryImage validates values and counts text") {
  BinaryImage b(4, 4, 1);
  CHECK(b.text_count() == 0);
  b(0, 0) = 0;
  b(3, 3) = 0;
  CHECK(b.text_count() == 2);

  CHECK_THROWS_AS(BinaryImage(4, 4, 2), std::invalid_argument);
  CHECK_THROWS_AS(BinaryImage::from_data(2, 1, {0, 2}), std::invalid_argument);
  CHECK_NOTHROW(BinaryImage::from_data(2, 1, {0, 1}));
}

TEST_CASE("min_intensity finds the global minimum") {
  CHECK(docbin::min_intensity(GrayImage(Field(4, 4, 0.7))) == 0.7);

  Field f(3, 3, 0.5);
  f(0, 1) = 0.2;
  f(2, 2) = 0.9;
  CHECK(docbin::min_intensity(GrayImage(f)) == 0.2);

  // Against an exhaustive scan on a random image.
  const Field r = testutil::random_field(64, 64, 7);
  double lo = 1e300;
  for (double v : r.data()) lo = std::min(lo, v);
  CHECK(docbin::min_intensity(GrayImage(r)) == lo);
}

TEST_CASE("reflect_sample mirrors the observed image") {
  Field f(4, 4, 0.0);
  f(0, 3) = 0.25;
  f(3, 0) = 0.5;
  f(2, 3) = 0.75;
  const GrayImage img(f);
  CHECK(docbin::reflect_sample(img, 2, 3) == 0.75);  // in-domain identity
  CHECK(docbin::reflect_sample(img, -1, 3) == 0.25); // row -1 -> row 0
  CHECK(docbin::reflect_sample(img, 4, 0) == 0.5);   // row N -> row N-1
}

TEST_CASE("PGM round trip stays within quantization") {
  const std::string path = testutil::temp_path("const_half.pgm");
  docbin::save_gray(path, GrayImage(Field(16, 16, 0.5)));
  const GrayImage back = docbin::load_gray(path);
  REQUIRE(back.width() == 16);
  REQUIRE(back.height() == 16);
  for (double v : back.field().data()) CHECK(std::abs(v - 0.5) <= 1.0 / 255.0);

  // Random image: same bound.
  const Field r = testutil::random_field(9, 11, 21);
  const std::string rpath = testutil::temp_path("rand.pgm");
  docbin::save_gray(rpath, GrayImage(r));
  const GrayImage rback = docbin::load_gray(rpath);
  for (size_t i = 0; i < r.data().size(); ++i) {
    CHECK(std::abs(rback.field().data()[i] - r.data()[i]) <= 1.0 / 255.0);
  }
}

TEST_CASE("PNG round trip stays within quantization") {
  const Field r = testutil::random_field(12, 8, 33);
  const std::string path = testutil::temp_path("rand.png");
  docbin::save_gray(path, GrayImage(r));
  const GrayImage back = docbin::load_gray(path);
  REQUIRE(back.width() == 12);
  REQUIRE(back.height() == 8);
  for (size_t i = 0; i < r.data().size(); ++i) {
    CHECK(std::abs(back.field().data()[i] - r.data()[i]) <= 1.0 / 255.0);
  }
}

TEST_CASE("8-bit normalization endpoints") {
  // Hand-built 3x3 P5 raster probing 0, 128 and 255.
  const std::string path = testutil::temp_path("endpoints.pgm");
  std::string bytes = "P5\n3 3\n255\n";
  const unsigned char raster[9] = {0, 128, 255, 0, 0, 0, 255, 255, 255};
  bytes.append(reinterpret_cast<const char*>(raster), 9);
  write_bytes(path, bytes);

  const GrayImage img = docbin::load_gray(path);
  CHECK(img(0, 0) == 0.0);
  CHECK(img(0, 1) == doctest::Approx(128.0 / 255.0).epsilon(1e-15));
  CHECK(img(0, 2) == 1.0);
}

TEST_CASE("PGM maxval below 255 rescales to [0,1]") {
  const std::string path = testutil::temp_path("maxval63.pgm");
  std::string bytes = "P5\n3 3\n63\n";
  const unsigned char raster[9] = {0, 63, 31, 0, 0, 0, 63, 63, 63};
  bytes.append(reinterpret_cast<const char*>(raster), 9);
  write_bytes(path, bytes);

  const GrayImage img = docbin::load_gray(path);
  CHECK(img(0, 0) == 0.0);
  CHECK(img(0, 1) == 1.0);
  CHECK(img(0, 2) == doctest::Approx(31.0 / 63.0).epsilon(1e-15));
}

TEST_CASE("binary masks survive save and load byte-exactly") {
  BinaryImage b = testutil::random_mask(10, 7, 5);
  const std::string path = testutil::temp_path("mask.pgm");
  docbin::save_binary(path, b);
  const BinaryImage back = docbin::load_binary(path);
  REQUIRE(back.width() == b.width());
  REQUIRE(back.height() == b.height());
  CHECK(back.data() == b.data());

  // Saving twice produces identical files.
  const std::string path2 = testutil::temp_path("mask2.pgm");
  docbin::save_binary(path2, b);
  CHECK(read_bytes(path) == read_bytes(path2));

  // All-ones masks survive too.
  const std::string ones = testutil::temp_path("ones.pgm");
  docbin::save_binary(ones, BinaryImage(5, 5, 1));
  CHECK(docbin::load_binary(ones).text_count() == 0);
}

TEST_CASE("load_binary rejects gray levels between the extremes") {
  const std::string path = testutil::temp_path("notmask.pgm");
  std::string bytes = "P5\n3 3\n255\n";
  const unsigned char raster[9] = {0, 128, 255, 0, 0, 0, 255, 255, 255};
  bytes.append(reinterpret_cast<const char*>(raster), 9);
  write_bytes(path, bytes);
  CHECK_THROWS_AS(docbin::load_binary(path), std::runtime_error);
}

TEST_CASE("to_binary thresholds strictly above one half") {
  Field f(3, 3, 0.0);
  f(0, 0) = 0.7;
  f(0, 1) = 0.5;
  f(0, 2) = 0.3;
  const BinaryImage b = docbin::to_binary(GrayImage(f));
  CHECK(b(0, 0) == 1);
  CHECK(b(0, 1) == 0);
  CHECK(b(0, 2) == 0);
}

TEST_CASE("RGB PNG collapses to luma") {
  // The gray writer only emits single-channel PNGs, so craft an RGB file
  // with libpng's simplified API. First row: pure red, green, blue.
  const std::string path = testutil::temp_path("rgb.png");
  {
    png_image png{};
    png.version = PNG_IMAGE_VERSION;
    png.width = 3;
    png.height = 3;
    png.format = PNG_FORMAT_RGB;
    std::vector<unsigned char> raw(3 * 3 * 3, 0);
    raw[0] = 255;  // (0,0) red
    raw[4] = 255;  // (0,1) green
    raw[8] = 255;  // (0,2) blue
    REQUIRE(png_image_write_to_file(&png, path.c_str(), 0, raw.data(), 0, nullptr) != 0);
  }
  const GrayImage img = docbin::load_gray(path);
  CHECK(img(0, 0) == doctest::Approx((0.299 * 255.0) / 255.0).epsilon(1e-12));
  CHECK(img(0, 1) == doctest::Approx((0.587 * 255.0) / 255.0).epsilon(1e-12));
  CHECK(img(0, 2) == doctest::Approx((0.114 * 255.0) / 255.0).epsilon(1e-12));
  CHECK(img(1, 1) == 0.0);
}

TEST_CASE("I/O errors name the offending path") {
  CHECK_THROWS_WITH_AS(docbin::load_gray("/nonexistent/nowhere.pgm"),
                       doctest::Contains("/nonexistent/nowhere.pgm"), std::runtime_error);
  CHECK_THROWS_AS(docbin::save_gray("/nonexistent_dir_zz/out.pgm", GrayImage(Field(3, 3, 0.5))),
                  std::runtime_error);

  // Garbage magic bytes are rejected as a format error.
  const std::string path = testutil::temp_path("garbage.bin");
  write_bytes(path, "XYZW");
  CHECK_THROWS_AS(docbin::load_gray(path), std::runtime_error);

  // Truncated raster.
  const std::string trunc = testutil::temp_path("trunc.pgm");
  write_bytes(trunc, "P5\n4 4\n255\nab");
  CHECK_THROWS_AS(docbin::load_gray(trunc), std::runtime_error);
}

TEST_CASE("degenerate image dimensions are construction errors") {
  // A 0x0 image cannot even be represented, so saving one is unreachable;
  // the guard lives in the type constructors.
  CHECK_THROWS_AS(Field(0, 0), std::invalid_argument);
  CHECK_THROWS_AS(GrayImage(Field(1, 1, 0.0)), std::invalid_argument);
}
