#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <string_view>

#include <Eigen/Dense>

#include "awwsvm/dataset.hpp"
#include "awwsvm/error.hpp"
#include "awwsvm/model.hpp"

namespace awwsvm {

/// Where the per-sample weight enters the soft-margin objective.
///  - Regularizer: f_i(w) = (alpha_i C / 2) ||w||^2 + max(0, 1 - y_i w.x_i)
///  - Hinge:       f_i(w) = (C / 2) ||w||^2 + alpha_i max(0, 1 - y_i w.x_i)
enum class WeightMode { Regularizer, Hinge };

struct ObjectiveConfig {
  double c = 1.0;
  WeightMode weight_mode = WeightMode::Regularizer;
};

std::string_view to_string(WeightMode mode);
WeightMode parse_weight_mode(std::string_view name);

/// A minibatch view: `indices` select rows of `samples`, `alpha` is indexed by
/// the same sample index (it covers the whole training set).
struct Batch {
  std::span<const Sample> samples;
  std::span<const std::size_t> indices;
  std::span<const double> alpha;

  std::size_t size() const { return indices.size(); }
};

namespace detail {

inline void check_batch(const Batch& batch) {
  if (batch.indices.empty()) throw Error("objective evaluated on an empty batch");
}

}  // namespace detail

/// Mean of f_i over the batch. `w` is bias-augmented; the bias is regularized with the rest.
template <typename Derived>
typename Derived::Scalar loss(const Eigen::MatrixBase<Derived>& w, const Batch& batch,
                              const ObjectiveConfig& cfg) {
  using Scalar = typename Derived::Scalar;
  detail::check_batch(batch);
  const Scalar half_sq_norm = Scalar(0.5) * w.squaredNorm();
  Scalar total(0);
  for (const auto i : batch.indices) {
    const auto& x = batch.samples[i];
    const Scalar alpha(batch.alpha[i]);
    const Scalar hinge = std::max(Scalar(0), Scalar(1) - Scalar(x.label) * augmented_dot(w, x));
    if (cfg.weight_mode == WeightMode::Regularizer)
      total += alpha * Scalar(cfg.c) * half_sq_norm + hinge;
    else
      total += Scalar(cfg.c) * half_sq_norm + alpha * hinge;
  }
  return total / Scalar(batch.size());
}

/// Mean subgradient of f_i. A margin of exactly 1 takes the zero branch of the hinge.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> subgradient(
    const Eigen::MatrixBase<Derived>& w, const Batch& batch, const ObjectiveConfig& cfg) {
  using Scalar = typename Derived::Scalar;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  detail::check_batch(batch);

  Vector hinge_part = Vector::Zero(w.size());
  Scalar reg_scale(0);
  for (const auto i : batch.indices) {
    const auto& x = batch.samples[i];
    const Scalar alpha(batch.alpha[i]);
    const Scalar y(x.label);
    const bool active = y * augmented_dot(w, x) < Scalar(1);
    if (cfg.weight_mode == WeightMode::Regularizer) {
      reg_scale += alpha;
      if (active) add_augmented(hinge_part, -y, x);
    } else {
      reg_scale += Scalar(1);
      if (active) add_augmented(hinge_part, -alpha * y, x);
    }
  }
  const Scalar n(batch.size());
  return (reg_scale * Scalar(cfg.c) / n) * w + hinge_part / n;
}

}  // namespace awwsvm
