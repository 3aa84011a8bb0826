#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include <Eigen/Dense>

#include "awwsvm/dataset.hpp"
#include "awwsvm/error.hpp"

namespace awwsvm {

/// Sparse sample times the first `dim` entries of a dense vector. Features past
/// the vector's feature block (test files may be wider) contribute nothing.
template <typename Derived>
typename Derived::Scalar sparse_dot(const Eigen::MatrixBase<Derived>& w, const Sample& x,
                                    Eigen::Index dim) {
  using Scalar = typename Derived::Scalar;
  Scalar acc(0);
  for (const auto& f : x.features) {
    if (f.index > dim) break;
    acc += w(f.index - 1) * Scalar(f.value);
  }
  return acc;
}

/// Inner product with the bias-augmented sample (x, 1); `w` holds the feature
/// weights followed by the bias.
template <typename Derived>
typename Derived::Scalar augmented_dot(const Eigen::MatrixBase<Derived>& w, const Sample& x) {
  const Eigen::Index dim = w.size() - 1;
  return sparse_dot(w, x, dim) + w(dim);
}

/// y += scale * (x, 1) over the augmented layout.
template <typename Derived>
void add_augmented(Eigen::MatrixBase<Derived>& y, typename Derived::Scalar scale, const Sample& x) {
  const Eigen::Index dim = y.size() - 1;
  for (const auto& f : x.features) {
    if (f.index > dim) break;
    y(f.index - 1) += scale * typename Derived::Scalar(f.value);
  }
  y(dim) += scale;
}

/// Decision hyperplane w.x + b = 0, stored bias-augmented: `weights` has length
/// dim + 1 and its last entry is b.
struct LinearModel {
  Eigen::VectorXd weights;
  LabelMapping mapping;

  LinearModel() = default;
  explicit LinearModel(std::int32_t dim, LabelMapping m = {})
      : weights(Eigen::VectorXd::Zero(dim + 1)), mapping(m) {}
  LinearModel(Eigen::VectorXd augmented, LabelMapping m = {})
      : weights(std::move(augmented)), mapping(m) {}

  std::int32_t dim() const { return static_cast<std::int32_t>(weights.size() - 1); }
  double bias() const { return weights(weights.size() - 1); }
  auto normal() const { return weights.head(weights.size() - 1); }

  double score(const Sample& x) const { return augmented_dot(weights, x); }
};

/// sign(w.x + b) with a score of exactly zero mapped to +1.
inline int decide(const LinearModel& m, const Sample& x) { return m.score(x) >= 0.0 ? 1 : -1; }

/// (w.x + b) / ||w||, where the norm excludes the bias entry.
inline double signed_distance(const LinearModel& m, const Sample& x) {
  const double norm = m.normal().norm();
  if (norm == 0.0) throw DegenerateModel("signed distance undefined for a zero normal vector");
  return m.score(x) / norm;
}

inline double margin(const LinearModel& m, const Sample& x, int y) { return y * m.score(x); }

/// Text format: a header with dim, bias convention and label mapping, then
/// dim + 1 weight lines (feature weights, then bias).
void save_model(std::ostream& os, const LinearModel& m);
LinearModel load_model(std::istream& is);
void save_model_file(const std::string& path, const LinearModel& m);
LinearModel load_model_file(const std::string& path);

}  // namespace awwsvm
