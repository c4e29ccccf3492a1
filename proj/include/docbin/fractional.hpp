#pragma once

#include <vector>

#include "docbin/field.hpp"

namespace docbin {

// Truncated Grunwald-Letnikov weights for derivative order alpha:
// w_0 = 1, w_k = w_{k-1} * (1 - (alpha + 1)/k). Alternating in sign,
// absolutely decaying; alpha = 1 degenerates to {1, -1, 0, ...}.
struct GlCoeffs {
  double alpha = 0.0;
  int truncation = 0;  // highest retained lag K
  std::vector<double> weights;
};

GlCoeffs gl_coeffs(double alpha, int truncation);

// Backward fractional difference magnitude: per pixel,
//   Dx = sum_k w_k u(i, j-k),  Dy = sum_k w_k u(i-k, j),
// with mirror reflection past the edges, magnitude sqrt(Dx^2 + Dy^2).
// The tail reaches K samples back, so K must not exceed either dimension.
Field frac_grad_mag(const Field& u, const GlCoeffs& coeffs);

// Edge-stopping weight g(z) = exp(-z^2 / zeta^2) with zeta the mean of the
// input over the whole field. Near-flat input (zeta < 1e-12) maps to all
// ones: nothing to stop on.
Field diffusivity(const Field& grad_mag);

// Rational edge-stopping weight g0 = 1 / (1 + |grad u|^2 / kappa) with
// central-difference gradients and kappa the mean squared gradient.
Field dh_diffusivity(const Field& u);

}  // namespace docbin
