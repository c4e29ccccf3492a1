#pragma once

#include <array>
#include <string>

#include "docbin/image.hpp"

namespace docbin {

// Text (0) is the positive class throughout.
struct Confusion {
  long long tp = 0;  // text in both
  long long fp = 0;  // text in bin, background in gt
  long long fn = 0;  // background in bin, text in gt
  long long tn = 0;
};

Confusion confusion(const BinaryImage& bin, const BinaryImage& gt);

// F-measure in percent. 0 when nothing was detected; throws when the
// ground truth has no text at all (recall undefined).
double f_measure(const BinaryImage& bin, const BinaryImage& gt);

// Skeleton of the ground-truth text, computed by two-subiteration
// morphological thinning. Returned with the usual polarity: 0 = skeleton.
BinaryImage text_skeleton(const BinaryImage& gt);

// Pseudo F-measure: recall is evaluated on the gt skeleton only (a thin
// stroke counts as recalled if its core is recovered), precision is the
// plain pixel precision.
double pseudo_f(const BinaryImage& bin, const BinaryImage& gt);

// 10*log10(1/MSE) where MSE is the fraction of disagreeing pixels; capped
// at 99.0 for a perfect match.
double psnr(const BinaryImage& bin, const BinaryImage& gt);

// 5x5 inverse-distance weights, zero at the center, normalized to unit sum.
std::array<std::array<double, 5>, 5> drd_weights();

// Distance-reciprocal distortion: each flipped pixel is charged by how much
// it disagrees with its gt neighborhood, then the total is normalized by
// the count of non-uniform 8x8 gt blocks. Throws when that count is zero.
double drd(const BinaryImage& bin, const BinaryImage& gt);

struct MetricsReport {
  double fm = 0.0;
  double fps = 0.0;
  double psnr = 0.0;
  double drd = 0.0;
  long long tp = 0, fp = 0, fn = 0, tn = 0;
};

MetricsReport evaluate_pair(const BinaryImage& bin, const BinaryImage& gt);

// "fm,fps,psnr,drd,tp,fp,fn,tn" with fixed 4-decimal reals.
std::string metrics_csv_fragment(const MetricsReport& r);

}  // namespace docbin
