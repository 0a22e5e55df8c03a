#pragma once

#include <algorithm>
#include <cmath>

#include "tapg/mat.hpp"

namespace tapg {

inline constexpr double kLogClamp = 1e-7;  // sigmoid saturates in float32

template <typename T>
struct LossResult {
  double value = 0.0;
  Mat<T> grad;  // d loss / d scores, same shape as scores
};

/// Per-anchor binary cross-entropy, positives weighted by `pos_weight`,
/// averaged over all T*K entries. Scores are clamped into
/// [1e-7, 1-1e-7] before the logs; the gradient is evaluated at the
/// clamped value so it stays bounded even for saturated scores.
template <typename T>
LossResult<T> weighted_bce_loss(const Mat<T>& scores, const Mat<T>& labels,
                                double pos_weight) {
  if (!scores.same_shape(labels))
    fail(ErrorCode::kShapeMismatch,
         "weighted_bce_loss: scores " + detail::shape_str(scores.rows, scores.cols) +
             " vs labels " + detail::shape_str(labels.rows, labels.cols));
  if (!(pos_weight > 0.0))
    fail(ErrorCode::kConfig, "weighted_bce_loss: pos_weight must be > 0");

  LossResult<T> res;
  res.grad = Mat<T>(scores.rows, scores.cols);
  const double n = static_cast<double>(scores.data.size());
  double total = 0.0;
  for (std::size_t i = 0; i < scores.data.size(); ++i) {
    const double p =
        std::clamp(static_cast<double>(scores.data[i]), kLogClamp, 1.0 - kLogClamp);
    const double y = static_cast<double>(labels.data[i]);
    total -= pos_weight * y * std::log(p) + (1.0 - y) * std::log(1.0 - p);
    res.grad.data[i] =
        static_cast<T>(-(pos_weight * y / p - (1.0 - y) / (1.0 - p)) / n);
  }
  res.value = total / n;
  return res;
}

/// pos_weight = (#negative anchors)/(#positive anchors) over a label set;
/// 1 when a class is absent.
template <typename T>
double balanced_pos_weight(const std::vector<const Mat<T>*>& label_sets) {
  double pos = 0.0, neg = 0.0;
  for (const Mat<T>* m : label_sets)
    for (T v : m->data) (v > T(0.5) ? pos : neg) += 1.0;
  if (pos == 0.0 || neg == 0.0) return 1.0;
  return neg / pos;
}

}  // namespace tapg
