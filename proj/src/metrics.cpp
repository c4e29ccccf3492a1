#include "docbin/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <vector>

namespace docbin {

namespace {

void check_shapes(const BinaryImage& bin, const BinaryImage& gt, const char* who) {
  if (bin.width() != gt.width() || bin.height() != gt.height()) {
    throw std::invalid_argument(std::string(who) + ": dimension mismatch");
  }
}

// Two-subiteration thinning (Zhang-Suen) on a 1 = stroke mask. Pixels
// outside the image count as background.
std::vector<std::uint8_t> thin_mask(std::vector<std::uint8_t> m, int w, int h) {
  auto at = [&](int i, int j) -> int {
    if (i < 0 || i >= h || j < 0 || j >= w) return 0;
    return m[static_cast<size_t>(i) * w + j];
  };
  std::vector<size_t> marked;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int pass = 0; pass < 2; ++pass) {
      marked.clear();
      for (int i = 0; i < h; ++i) {
        for (int j = 0; j < w; ++j) {
          if (!at(i, j)) continue;
          const int p2 = at(i - 1, j), p3 = at(i - 1, j + 1), p4 = at(i, j + 1), p5 = at(i + 1, j + 1);
          const int p6 = at(i + 1, j), p7 = at(i + 1, j - 1), p8 = at(i, j - 1), p9 = at(i - 1, j - 1);
          const int b = p2 + p3 + p4 + p5 + p6 + p7 + p8 + p9;
          if (b < 2 || b > 6) continue;
          const int seq[9] = {p2, p3, p4, p5, p6, p7, p8, p9, p2};
          int a = 0;
          for (int k = 0; k < 8; ++k) a += (seq[k] == 0 && seq[k + 1] == 1);
          if (a != 1) continue;
          if (pass == 0) {
            if (p2 * p4 * p6 != 0 || p4 * p6 * p8 != 0) continue;
          } else {
            if (p2 * p4 * p8 != 0 || p2 * p6 * p8 != 0) continue;
          }
          marked.push_back(static_cast<size_t>(i) * w + j);
        }
      }
      for (size_t idx : marked) m[idx] = 0;
      changed = changed || !marked.empty();
    }
  }
  return m;
}

}  // namespace

Confusion confusion(const BinaryImage& bin, const BinaryImage& gt) {
  check_shapes(bin, gt, "confusion");
  Confusion c;
  for (size_t i = 0; i < gt.data().size(); ++i) {
    const bool bin_text = bin.data()[i] == 0;
    const bool gt_text = gt.data()[i] == 0;
    if (bin_text && gt_text) ++c.tp;
    else if (bin_text && !gt_text) ++c.fp;
    else if (!bin_text && gt_text) ++c.fn;
    else ++c.tn;
  }
  return c;
}

double f_measure(const BinaryImage& bin, const BinaryImage& gt) {
  const Confusion c = confusion(bin, gt);
  if (c.tp + c.fn == 0) throw std::runtime_error("f_measure: ground truth contains no text; recall undefined");
  if (c.tp == 0) return 0.0;
  const double recall = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
  const double precision = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp);
  return 100.0 * 2.0 * recall * precision / (recall + precision);
}

BinaryImage text_skeleton(const BinaryImage& gt) {
  const int w = gt.width();
  const int h = gt.height();
  std::vector<std::uint8_t> mask(gt.data().size());
  for (size_t i = 0; i < mask.size(); ++i) mask[i] = gt.data()[i] == 0 ? 1 : 0;
  mask = thin_mask(std::move(mask), w, h);
  std::vector<std::uint8_t> out(mask.size());
  for (size_t i = 0; i < mask.size(); ++i) out[i] = mask[i] ? 0 : 1;
  return BinaryImage::from_data(w, h, std::move(out));
}

double pseudo_f(const BinaryImage& bin, const BinaryImage& gt) {
  check_shapes(bin, gt, "pseudo_f");
  const Confusion c = confusion(bin, gt);
  if (c.tp + c.fn == 0) throw std::runtime_error("pseudo_f: ground truth contains no text");
  const BinaryImage skel = text_skeleton(gt);
  long long skel_total = 0, skel_hit = 0;
  for (size_t i = 0; i < skel.data().size(); ++i) {
    if (skel.data()[i] == 0) {
      ++skel_total;
      if (bin.data()[i] == 0) ++skel_hit;
    }
  }
  const double p_recall = skel_total > 0 ? static_cast<double>(skel_hit) / static_cast<double>(skel_total) : 0.0;
  const double precision = (c.tp + c.fp) > 0 ? static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp) : 0.0;
  if (p_recall + precision == 0.0) return 0.0;
  return 100.0 * 2.0 * p_recall * precision / (p_recall + precision);
}

double psnr(const BinaryImage& bin, const BinaryImage& gt) {
  check_shapes(bin, gt, "psnr");
  long long wrong = 0;
  for (size_t i = 0; i < gt.data().size(); ++i) wrong += bin.data()[i] != gt.data()[i];
  if (wrong == 0) return 99.0;
  const double total = static_cast<double>(gt.data().size());
  // 10*log10(1/MSE) written as a single ratio to keep exact-count cases exact.
  return 10.0 * std::log10(total / static_cast<double>(wrong));
}

std::array<std::array<double, 5>, 5> drd_weights() {
  std::array<std::array<double, 5>, 5> w{};
  double sum = 0.0;
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) {
      if (i == 2 && j == 2) continue;
      w[i][j] = 1.0 / std::sqrt(static_cast<double>((i - 2) * (i - 2) + (j - 2) * (j - 2)));
      sum += w[i][j];
    }
  }
  for (auto& row : w) {
    for (double& v : row) v /= sum;
  }
  return w;
}

double drd(const BinaryImage& bin, const BinaryImage& gt) {
  check_shapes(bin, gt, "drd");
  const int w = gt.width();
  const int h = gt.height();

  long long nubn = 0;
  for (int bi = 0; bi + 8 <= h; bi += 8) {
    for (int bj = 0; bj + 8 <= w; bj += 8) {
      const std::uint8_t first = gt(bi, bj);
      bool uniform = true;
      for (int i = bi; i < bi + 8 && uniform; ++i) {
        for (int j = bj; j < bj + 8; ++j) {
          if (gt(i, j) != first) { uniform = false; break; }
        }
      }
      if (!uniform) ++nubn;
    }
  }
  if (nubn == 0) throw std::runtime_error("drd: ground truth has no non-uniform 8x8 block; metric undefined");

  const auto weights = drd_weights();
  double total = 0.0;
  for (int i = 0; i < h; ++i) {
    for (int j = 0; j < w; ++j) {
      if (bin(i, j) == gt(i, j)) continue;
      const int bv = bin(i, j);
      double charge = 0.0;
      for (int m = 0; m < 5; ++m) {
        for (int n = 0; n < 5; ++n) {
          const int gi = reflect_index(i + m - 2, h);
          const int gj = reflect_index(j + n - 2, w);
          charge += weights[m][n] * std::abs(gt(gi, gj) - bv);
        }
      }
      total += charge;
    }
  }
  return total / static_cast<double>(nubn);
}

MetricsReport evaluate_pair(const BinaryImage& bin, const BinaryImage& gt) {
  const Confusion c = confusion(bin, gt);
  MetricsReport r;
  r.fm = f_measure(bin, gt);
  r.fps = pseudo_f(bin, gt);
  r.psnr = psnr(bin, gt);
  r.drd = drd(bin, gt);
  r.tp = c.tp;
  r.fp = c.fp;
  r.fn = c.fn;
  r.tn = c.tn;
  return r;
}

std::string metrics_csv_fragment(const MetricsReport& r) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%.4f,%.4f,%.4f,%.4f,%lld,%lld,%lld,%lld",
                r.fm, r.fps, r.psnr, r.drd, r.tp, r.fp, r.fn, r.tn);
  return buf;
}

}  // namespace docbin
