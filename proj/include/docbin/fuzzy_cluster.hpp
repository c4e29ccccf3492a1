#pragma once

#include <utility>

#include "docbin/image.hpp"
#include "docbin/mollifier.hpp"

namespace docbin {

// Everything the evolution needs from the observed image, computed once
// up front: smoothed image, soft foreground/background memberships, the
// two local cluster centers, contrast, its normalized weight, and the
// spatially varying threshold.
struct ClusterFields {
  Field s_bar;    // smoothed image
  Field m_f;      // foreground membership
  Field m_b;      // background membership
  Field sf_bar;   // local foreground center
  Field sb_bar;   // local background center
  Field d;        // log contrast between the centers
  Field omega;    // d rescaled into [0,1]
  Field c;        // local threshold
};

Field local_mean(const Field& s, const Kernel& kernel);

// m_f = 1/2 - tanh((s - s_bar)/epsilon)/2 and its complement. Pixels darker
// than their neighborhood leans foreground, brighter leans background.
std::pair<Field, Field> memberships(const Field& s, const Field& s_bar, double epsilon);

// Membership-weighted local averages of s. Where a membership mass drops
// below 1e-12 the center falls back to the plain local mean.
std::pair<Field, Field> cluster_centers(const Field& s, const Field& m_f, const Field& m_b,
                                        const Kernel& kernel, const Field& s_bar);

// d = log(1 + |sb_bar - sf_bar|), in [0, log 2] for [0,1] data.
Field contrast_map(const Field& sf_bar, const Field& sb_bar);

// Min-max rescaling of d; identically 0 when d is constant.
Field weight_map(const Field& d);

// c = m_b * sf_bar + m_f * sb_bar. The cross pairing pulls the threshold
// toward the opposite cluster's center, keeping it between the two.
Field threshold_map(const Field& m_f, const Field& m_b, const Field& sf_bar, const Field& sb_bar);

ClusterFields precompute(const GrayImage& s, double rho, double epsilon);

}  // namespace docbin
