#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "tapg/mat.hpp"

namespace tapg {

enum class OptimizerKind { kAdam, kSgd };

/// SGD or bias-corrected Adam over a flat list of parameter tensors.
/// Moment buffers are allocated on the first step and must shape-match on
/// every later one.
template <typename T>
class Optimizer {
 public:
  Optimizer(OptimizerKind kind, double learning_rate)
      : kind_(kind), lr_(learning_rate) {
    if (!(learning_rate > 0.0))
      fail(ErrorCode::kConfig, "optimizer: learning_rate must be > 0");
  }

  void step(const std::vector<std::span<T>>& params,
            const std::vector<std::span<const T>>& grads) {
    if (params.size() != grads.size())
      fail(ErrorCode::kShapeMismatch, "optimizer_step: tensor count mismatch");
    for (std::size_t k = 0; k < params.size(); ++k)
      if (params[k].size() != grads[k].size())
        fail(ErrorCode::kShapeMismatch,
             "optimizer_step: tensor " + std::to_string(k) + " has " +
                 std::to_string(params[k].size()) + " params but " +
                 std::to_string(grads[k].size()) + " grads");

    if (kind_ == OptimizerKind::kSgd) {
      for (std::size_t k = 0; k < params.size(); ++k)
        for (std::size_t i = 0; i < params[k].size(); ++i)
          params[k][i] -= static_cast<T>(lr_) * grads[k][i];
      return;
    }

    if (m_.empty()) {
      m_.resize(params.size());
      v_.resize(params.size());
      for (std::size_t k = 0; k < params.size(); ++k) {
        m_[k].assign(params[k].size(), T(0));
        v_[k].assign(params[k].size(), T(0));
      }
    } else if (m_.size() != params.size()) {
      fail(ErrorCode::kShapeMismatch, "optimizer_step: state/param mismatch");
    }

    ++t_;
    const double bc1 = 1.0 - std::pow(kBeta1, static_cast<double>(t_));
    const double bc2 = 1.0 - std::pow(kBeta2, static_cast<double>(t_));
    for (std::size_t k = 0; k < params.size(); ++k) {
      if (m_[k].size() != params[k].size())
        fail(ErrorCode::kShapeMismatch, "optimizer_step: state/param mismatch");
      for (std::size_t i = 0; i < params[k].size(); ++i) {
        const double g = static_cast<double>(grads[k][i]);
        double m = kBeta1 * static_cast<double>(m_[k][i]) + (1.0 - kBeta1) * g;
        double v = kBeta2 * static_cast<double>(v_[k][i]) + (1.0 - kBeta2) * g * g;
        m_[k][i] = static_cast<T>(m);
        v_[k][i] = static_cast<T>(v);
        const double update = lr_ * (m / bc1) / (std::sqrt(v / bc2) + kEps);
        params[k][i] -= static_cast<T>(update);
      }
    }
  }

  double learning_rate() const { return lr_; }
  void set_learning_rate(double lr) { lr_ = lr; }
  std::int64_t step_count() const { return t_; }

  static constexpr double kBeta1 = 0.9;
  static constexpr double kBeta2 = 0.999;
  static constexpr double kEps = 1e-8;

 private:
  OptimizerKind kind_;
  double lr_;
  std::int64_t t_ = 0;
  std::vector<std::vector<T>> m_, v_;
};

}  // namespace tapg
