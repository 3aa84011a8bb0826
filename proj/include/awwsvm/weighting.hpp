#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "awwsvm/dataset.hpp"

namespace awwsvm {

/// Unclamped adaptive weight of a sample at unsigned distance `d` from the
/// hyperplane: a half-normal density (scaled by 2) plus an exponential density
/// whose scale is the distance spread M - m. Each term integrates to 1 over
/// [0, inf). A non-positive spread drops the exponential term.
template <typename Scalar>
Scalar aw_raw(Scalar d, Scalar sigma, Scalar spread) {
  using std::exp;
  using std::sqrt;
  const Scalar gauss = Scalar(2) / (sqrt(Scalar(2) * std::numbers::pi_v<Scalar>) * sigma) *
                       exp(-d * d / (Scalar(2) * sigma * sigma));
  if (!(spread > Scalar(0))) return gauss;
  return gauss + exp(-d / spread) / spread;
}

/// aw_raw clamped into [0, 1].
template <typename Scalar>
Scalar aw_value(Scalar d, Scalar sigma, Scalar max_distance, Scalar min_distance) {
  return std::clamp(aw_raw(d, sigma, max_distance - min_distance), Scalar(0), Scalar(1));
}

/// Per-training-sample weights plus the noise mask. Inactive samples carry
/// alpha = 0 and never become active again.
struct WeightState {
  Eigen::VectorXd alpha;
  std::vector<char> active;
  double sigma = 1.0;
  double max_distance = 0.0;
  double min_distance = 0.0;

  std::size_t size() const { return active.size(); }
  std::size_t active_count() const;
  std::vector<std::size_t> active_indices() const;
  void deactivate(std::span<const std::size_t> indices);
};

/// Uniform alpha = 2 / l (summing to 2), everything active. Values above 1
/// (only when l = 1) are left as is; the clamp applies once AW values replace them.
WeightState init_weights(std::size_t l, double sigma = 1.0);

/// Recomputes M, m from |d| over active samples and sets each active alpha to
/// aw_value(|d_i|). `signed_distances` covers all samples; inactive entries are ignored.
void update_weights(WeightState& state, std::span<const double> signed_distances);

/// How a sample is judged to be noise within its own class.
///  - SignedSide: i is flagged when every other active classmate lies on the
///    other side of the hyperplane (pairwise distance product <= 0).
///  - RawDot: i is flagged when <x_i, x_j> <= 0 for every other active classmate.
enum class NoiseMode { SignedSide, RawDot };

std::string_view to_string(NoiseMode mode);
NoiseMode parse_noise_mode(std::string_view name);

/// Indices (ascending) of active samples flagged as noise. Classes with fewer
/// than two active samples produce no flags.
std::vector<std::size_t> detect_noise(const Dataset& ds, const WeightState& state,
                                      std::span<const double> signed_distances, NoiseMode mode);

struct WeightSummary {
  double min = 0.0;
  double mean = 0.0;
  double max = 0.0;
};

/// Stats of alpha over active samples.
WeightSummary summarize(const WeightState& state);

}  // namespace awwsvm
