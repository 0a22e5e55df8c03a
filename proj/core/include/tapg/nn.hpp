#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>

#include "tapg/mat.hpp"
#include "tapg/rng.hpp"

namespace tapg {

enum class Activation { kIdentity, kRelu, kSigmoid };

template <typename T>
T sigmoid_scalar(T x) {
  // Clamp keeps outputs strictly inside (0,1) even where float32 saturates.
  const T ceil = T(1) - std::numeric_limits<T>::epsilon() / T(2);
  const T floor = std::numeric_limits<T>::min();
  const T v = T(1) / (T(1) + std::exp(-x));
  return std::clamp(v, floor, ceil);
}

template <typename T>
Vec<T> relu(const Vec<T>& x) {
  Vec<T> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = std::max(T(0), x[i]);
  return out;
}

template <typename T>
Vec<T> sigmoid(const Vec<T>& x) {
  Vec<T> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = sigmoid_scalar(x[i]);
  return out;
}

template <typename T>
void apply_activation(Activation act, std::span<T> x) {
  switch (act) {
    case Activation::kIdentity:
      break;
    case Activation::kRelu:
      for (T& v : x) v = std::max(T(0), v);
      break;
    case Activation::kSigmoid:
      for (T& v : x) v = sigmoid_scalar(v);
      break;
  }
}

/// activation(W x + b)
template <typename T>
Vec<T> fc_forward(const Mat<T>& w, const Vec<T>& b, const Vec<T>& x,
                  Activation act) {
  check_matvec(w, x.size(), "fc_forward");
  if (b.size() != w.rows)
    fail(ErrorCode::kShapeMismatch,
         "fc_forward: bias length " + std::to_string(b.size()) +
             " != rows " + std::to_string(w.rows));
  Vec<T> out = matvec(w, x);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += b[i];
  apply_activation(act, std::span<T>(out));
  return out;
}

/// Backward through activation given the layer *output*. For ReLU the output
/// sign carries the needed mask; for sigmoid y(1-y) is the derivative.
template <typename T>
Vec<T> activation_backward(Activation act, const Vec<T>& y, const Vec<T>& dy) {
  Vec<T> dz(y.size());
  switch (act) {
    case Activation::kIdentity:
      dz = dy;
      break;
    case Activation::kRelu:
      for (std::size_t i = 0; i < y.size(); ++i)
        dz[i] = y[i] > T(0) ? dy[i] : T(0);
      break;
    case Activation::kSigmoid:
      for (std::size_t i = 0; i < y.size(); ++i)
        dz[i] = dy[i] * y[i] * (T(1) - y[i]);
      break;
  }
  return dz;
}

/// Accumulates dW, db and returns dx.
template <typename T>
Vec<T> fc_backward(const Mat<T>& w, const Vec<T>& x, const Vec<T>& y,
                   Activation act, const Vec<T>& dy, Mat<T>& dw, Vec<T>& db) {
  const Vec<T> dz = activation_backward(act, y, dy);
  add_outer(dw, std::span<const T>(dz), std::span<const T>(x));
  add_inplace(std::span<T>(db), std::span<const T>(dz));
  Vec<T> dx(x.size(), T(0));
  matvec_transposed_acc(w, std::span<const T>(dz), std::span<T>(dx));
  return dx;
}

/// Inverted dropout. Training mode zeroes each element with probability
/// `rate` and scales survivors by 1/(1-rate); inference is a pass-through.
/// `mask_out`, when given, receives the applied multipliers for backward.
template <typename T>
Vec<T> dropout(const Vec<T>& x, double rate, bool training, Rng& rng,
               Vec<T>* mask_out = nullptr) {
  if (rate < 0.0 || rate >= 1.0)
    fail(ErrorCode::kConfig,
         "dropout: rate must be in [0,1), got " + std::to_string(rate));
  if (!training || rate == 0.0) {
    if (mask_out) mask_out->assign(x.size(), T(1));
    return x;
  }
  const T keep_scale = T(1.0 / (1.0 - rate));
  Vec<T> out(x.size());
  if (mask_out) mask_out->resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const T m = rng.uniform() < rate ? T(0) : keep_scale;
    out[i] = x[i] * m;
    if (mask_out) (*mask_out)[i] = m;
  }
  return out;
}

}  // namespace tapg
