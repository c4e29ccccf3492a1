#pragma once

#include <cstdint>
#include <utility>
#include <variant>

#include "docbin/image.hpp"

namespace docbin {

struct ConstantBackground {
  double level = 0.8;
};

enum class RampDirection { horizontal, vertical };

struct RampBackground {
  double low = 0.5;
  double high = 0.9;
  RampDirection direction = RampDirection::horizontal;
};

// Bright base with a smooth dip: a cosine-squared bump of the given depth
// inside the stain radius.
struct BlobStainBackground {
  double base = 0.9;
  double center_row = 0.0;
  double center_col = 0.0;
  double radius = 1.0;
  double depth = 0.3;
};

using BackgroundModel = std::variant<ConstantBackground, RampBackground, BlobStainBackground>;

// Recipe for a degraded test page: where the text is, what the clean
// background looks like, how dark the ink is, and how much sensor noise
// to add. Text must stay strictly darker than the background everywhere.
struct DegradationSpec {
  BinaryImage base_text;  // 0 = text
  BackgroundModel background;
  double text_level = 0.2;
  double noise_sigma = 0.0;
  std::uint32_t seed = 0;
};

// Evaluates the clean background model over the grid.
Field background_field(const BackgroundModel& model, int width, int height);

// Renders the observed image (background where blank, text_level on text,
// plus clamped Gaussian noise) together with its ground truth. The same
// spec always produces the same bytes: noise comes from a seeded mt19937
// driven through an explicit Box-Muller transform.
std::pair<GrayImage, BinaryImage> render(const DegradationSpec& spec);

// Deterministic glyph stand-in: `count` evenly spaced horizontal bars of
// the given stroke thickness, all with the same length.
BinaryImage glyph_bar_chart(int width, int height, int stroke_width, int count);

}  // namespace docbin
