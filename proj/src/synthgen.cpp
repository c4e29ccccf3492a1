#include "docbin/synthgen.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace docbin {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Standard normal draws built directly on the mt19937 word stream
// (Box-Muller on two 32-bit draws per sample). std::normal_distribution
// is implementation-defined, which would make fixtures compiler-specific.
class GaussianSampler {
 public:
  explicit GaussianSampler(std::uint32_t seed) : engine_(seed) {}

  double operator()() {
    const double u1 = (static_cast<double>(engine_()) + 0.5) / 4294967296.0;
    const double u2 = (static_cast<double>(engine_()) + 0.5) / 4294967296.0;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
  }

 private:
  std::mt19937 engine_;
};

double clamp01(double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); }

}  // namespace

Field background_field(const BackgroundModel& model, int width, int height) {
  if (width < 1 || height < 1) throw std::invalid_argument("background_field: dimensions must be positive");
  Field out(width, height);
  if (const auto* c = std::get_if<ConstantBackground>(&model)) {
    for (double& v : out.data()) v = c->level;
  } else if (const auto* r = std::get_if<RampBackground>(&model)) {
    for (int i = 0; i < height; ++i) {
      for (int j = 0; j < width; ++j) {
        const double along = r->direction == RampDirection::horizontal
                                 ? (width > 1 ? static_cast<double>(j) / (width - 1) : 0.0)
                                 : (height > 1 ? static_cast<double>(i) / (height - 1) : 0.0);
        out(i, j) = r->low + (r->high - r->low) * along;
      }
    }
  } else {
    const auto& b = std::get<BlobStainBackground>(model);
    if (!(b.radius > 0.0)) throw std::invalid_argument("background_field: stain radius must be positive");
    for (int i = 0; i < height; ++i) {
      for (int j = 0; j < width; ++j) {
        const double d = std::hypot(i - b.center_row, j - b.center_col);
        double v = b.base;
        if (d < b.radius) {
          const double t = std::cos(kPi * d / (2.0 * b.radius));
          v -= b.depth * t * t;
        }
        out(i, j) = v;
      }
    }
  }
  return out;
}

std::pair<GrayImage, BinaryImage> render(const DegradationSpec& spec) {
  const int w = spec.base_text.width();
  const int h = spec.base_text.height();
  const Field bg = background_field(spec.background, w, h);
  if (bg.min() < 0.0 || bg.max() > 1.0) throw std::invalid_argument("render: background leaves [0,1]");
  if (!(spec.text_level >= 0.0 && spec.text_level <= 1.0)) throw std::invalid_argument("render: text_level outside [0,1]");
  if (!(spec.text_level < bg.min())) {
    throw std::invalid_argument("render: text_level must stay strictly below every background level (ink darker than page)");
  }
  if (spec.noise_sigma < 0.0) throw std::invalid_argument("render: noise_sigma must be nonnegative");

  Field s(w, h);
  GaussianSampler noise(spec.seed);
  for (int i = 0; i < h; ++i) {
    for (int j = 0; j < w; ++j) {
      const double clean = spec.base_text(i, j) == 0 ? spec.text_level : bg(i, j);
      const double n = spec.noise_sigma > 0.0 ? spec.noise_sigma * noise() : 0.0;
      s(i, j) = clamp01(clean + n);
    }
  }
  return {GrayImage(std::move(s)), spec.base_text};
}

BinaryImage glyph_bar_chart(int width, int height, int stroke_width, int count) {
  if (width < 3 || height < 3) throw std::invalid_argument("glyph_bar_chart: canvas must be at least 3x3");
  if (count < 0) throw std::invalid_argument("glyph_bar_chart: count must be nonnegative");
  BinaryImage out(width, height, 1);
  if (count == 0) return out;
  if (stroke_width < 1) throw std::invalid_argument("glyph_bar_chart: stroke_width must be positive");
  const int margin = std::max(1, width / 8);
  if (width - 2 * margin < 1) throw std::invalid_argument("glyph_bar_chart: canvas too narrow for a bar");
  const int band = height / count;
  if (band < stroke_width) throw std::invalid_argument("glyph_bar_chart: bars do not fit the canvas height");
  for (int k = 0; k < count; ++k) {
    const int top = k * band + (band - stroke_width) / 2;
    for (int i = top; i < top + stroke_width; ++i) {
      for (int j = margin; j < width - margin; ++j) out(i, j) = 0;
    }
  }
  return out;
}

}  // namespace docbin
