#include "docbin/fuzzy_cluster.hpp"

#include <cmath>
#include <stdexcept>

namespace docbin {

namespace {
constexpr double kMassFloor = 1e-12;
}

Field local_mean(const Field& s, const Kernel& kernel) { return convolve(s, kernel); }

std::pair<Field, Field> memberships(const Field& s, const Field& s_bar, double epsilon) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("memberships: epsilon must be positive");
  if (!same_shape(s, s_bar)) throw std::invalid_argument("memberships: shape mismatch");
  Field mf(s.width(), s.height());
  Field mb(s.width(), s.height());
  for (size_t i = 0; i < s.data().size(); ++i) {
    const double t = std::tanh((s.data()[i] - s_bar.data()[i]) / epsilon);
    mf.data()[i] = 0.5 - 0.5 * t;
    mb.data()[i] = 0.5 + 0.5 * t;
  }
  return {std::move(mf), std::move(mb)};
}

std::pair<Field, Field> cluster_centers(const Field& s, const Field& m_f, const Field& m_b,
                                        const Kernel& kernel, const Field& s_bar) {
  if (!same_shape(s, m_f) || !same_shape(s, m_b) || !same_shape(s, s_bar)) {
    throw std::invalid_argument("cluster_centers: shape mismatch");
  }
  Field fs(s.width(), s.height());
  Field bs(s.width(), s.height());
  for (size_t i = 0; i < s.data().size(); ++i) {
    fs.data()[i] = m_f.data()[i] * s.data()[i];
    bs.data()[i] = m_b.data()[i] * s.data()[i];
  }
  const Field num_f = convolve(fs, kernel);
  const Field den_f = convolve(m_f, kernel);
  const Field num_b = convolve(bs, kernel);
  const Field den_b = convolve(m_b, kernel);
  Field sf(s.width(), s.height());
  Field sb(s.width(), s.height());
  for (size_t i = 0; i < s.data().size(); ++i) {
    sf.data()[i] = den_f.data()[i] < kMassFloor ? s_bar.data()[i] : num_f.data()[i] / den_f.data()[i];
    sb.data()[i] = den_b.data()[i] < kMassFloor ? s_bar.data()[i] : num_b.data()[i] / den_b.data()[i];
  }
  return {std::move(sf), std::move(sb)};
}

Field contrast_map(const Field& sf_bar, const Field& sb_bar) {
  if (!same_shape(sf_bar, sb_bar)) throw std::invalid_argument("contrast_map: shape mismatch");
  Field d(sf_bar.width(), sf_bar.height());
  for (size_t i = 0; i < d.data().size(); ++i) {
    d.data()[i] = std::log1p(std::fabs(sb_bar.data()[i] - sf_bar.data()[i]));
  }
  return d;
}

Field weight_map(const Field& d) {
  const double lo = d.min();
  const double hi = d.max();
  Field w(d.width(), d.height());
  if (hi - lo < kMassFloor) return w;  // flat contrast: no pixel stands out
  for (size_t i = 0; i < d.data().size(); ++i) w.data()[i] = (d.data()[i] - lo) / (hi - lo);
  return w;
}

Field threshold_map(const Field& m_f, const Field& m_b, const Field& sf_bar, const Field& sb_bar) {
  if (!same_shape(m_f, m_b) || !same_shape(m_f, sf_bar) || !same_shape(m_f, sb_bar)) {
    throw std::invalid_argument("threshold_map: shape mismatch");
  }
  Field c(m_f.width(), m_f.height());
  for (size_t i = 0; i < c.data().size(); ++i) {
    c.data()[i] = m_b.data()[i] * sf_bar.data()[i] + m_f.data()[i] * sb_bar.data()[i];
  }
  return c;
}

ClusterFields precompute(const GrayImage& s, double rho, double epsilon) {
  const Kernel kernel = build_kernel(rho);
  const Field& f = s.field();
  ClusterFields out;
  out.s_bar = local_mean(f, kernel);
  auto [mf, mb] = memberships(f, out.s_bar, epsilon);
  out.m_f = std::move(mf);
  out.m_b = std::move(mb);
  auto [sf, sb] = cluster_centers(f, out.m_f, out.m_b, kernel, out.s_bar);
  out.sf_bar = std::move(sf);
  out.sb_bar = std::move(sb);
  out.d = contrast_map(out.sf_bar, out.sb_bar);
  out.omega = weight_map(out.d);
  out.c = threshold_map(out.m_f, out.m_b, out.sf_bar, out.sb_bar);
  return out;
}

}  // namespace docbin
