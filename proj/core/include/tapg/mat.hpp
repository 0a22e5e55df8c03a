#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "tapg/error.hpp"

namespace tapg {

template <typename T>
using Vec = std::vector<T>;

/// Dense row-major matrix. The production scalar type is float; tests
/// instantiate double to run finite-difference checks at full precision.
template <typename T>
struct Mat {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<T> data;

  Mat() = default;
  Mat(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, T(0)) {}
  Mat(std::size_t r, std::size_t c, std::vector<T> values)
      : rows(r), cols(c), data(std::move(values)) {
    if (data.size() != rows * cols)
      fail(ErrorCode::kShapeMismatch,
           "Mat: data length " + std::to_string(data.size()) + " != " +
               std::to_string(rows) + "x" + std::to_string(cols));
  }

  T& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  const T& operator()(std::size_t i, std::size_t j) const {
    return data[i * cols + j];
  }

  std::span<T> row(std::size_t i) { return {data.data() + i * cols, cols}; }
  std::span<const T> row(std::size_t i) const {
    return {data.data() + i * cols, cols};
  }

  bool empty() const { return data.empty(); }
  bool same_shape(const Mat& o) const { return rows == o.rows && cols == o.cols; }

  void fill(T v) { std::fill(data.begin(), data.end(), v); }

  friend bool operator==(const Mat& a, const Mat& b) {
    return a.rows == b.rows && a.cols == b.cols && a.data == b.data;
  }
};

using Matrix = Mat<float>;
using Vector = Vec<float>;

namespace detail {
inline std::string shape_str(std::size_t r, std::size_t c) {
  return std::to_string(r) + "x" + std::to_string(c);
}
}  // namespace detail

template <typename T>
void check_matvec(const Mat<T>& w, std::size_t xlen, const char* where) {
  if (w.cols != xlen)
    fail(ErrorCode::kShapeMismatch,
         std::string(where) + ": matrix " + detail::shape_str(w.rows, w.cols) +
             " incompatible with vector of length " + std::to_string(xlen));
}

/// out = w * x
template <typename T>
Vec<T> matvec(const Mat<T>& w, std::span<const T> x) {
  check_matvec(w, x.size(), "matvec");
  Vec<T> out(w.rows, T(0));
  for (std::size_t i = 0; i < w.rows; ++i) {
    const T* wr = w.data.data() + i * w.cols;
    T acc = T(0);
    for (std::size_t j = 0; j < w.cols; ++j) acc += wr[j] * x[j];
    out[i] = acc;
  }
  return out;
}

template <typename T>
Vec<T> matvec(const Mat<T>& w, const Vec<T>& x) {
  return matvec(w, std::span<const T>(x));
}

/// out += w * x
template <typename T>
void matvec_acc(const Mat<T>& w, std::span<const T> x, std::span<T> out) {
  check_matvec(w, x.size(), "matvec_acc");
  for (std::size_t i = 0; i < w.rows; ++i) {
    const T* wr = w.data.data() + i * w.cols;
    T acc = T(0);
    for (std::size_t j = 0; j < w.cols; ++j) acc += wr[j] * x[j];
    out[i] += acc;
  }
}

/// out += w^T * y
template <typename T>
void matvec_transposed_acc(const Mat<T>& w, std::span<const T> y,
                           std::span<T> out) {
  if (w.rows != y.size())
    fail(ErrorCode::kShapeMismatch, "matvec_transposed_acc: bad shapes");
  for (std::size_t i = 0; i < w.rows; ++i) {
    const T* wr = w.data.data() + i * w.cols;
    const T yi = y[i];
    for (std::size_t j = 0; j < w.cols; ++j) out[j] += wr[j] * yi;
  }
}

/// w += y * x^T  (outer-product accumulation for weight gradients)
template <typename T>
void add_outer(Mat<T>& w, std::span<const T> y, std::span<const T> x) {
  if (w.rows != y.size() || w.cols != x.size())
    fail(ErrorCode::kShapeMismatch, "add_outer: bad shapes");
  for (std::size_t i = 0; i < w.rows; ++i) {
    T* wr = w.data.data() + i * w.cols;
    const T yi = y[i];
    for (std::size_t j = 0; j < w.cols; ++j) wr[j] += yi * x[j];
  }
}

template <typename T>
void add_inplace(std::span<T> dst, std::span<const T> src) {
  if (dst.size() != src.size())
    fail(ErrorCode::kShapeMismatch, "add_inplace: length mismatch");
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += src[i];
}

template <typename T>
bool all_finite(std::span<const T> x) {
  for (T v : x)
    if (!std::isfinite(v)) return false;
  return true;
}

}  // namespace tapg
