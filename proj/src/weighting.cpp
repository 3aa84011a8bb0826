#include "awwsvm/weighting.hpp"

#include <limits>
#include <string>

#include "awwsvm/error.hpp"

namespace awwsvm {

namespace {

double sparse_sparse_dot(const Sample& a, const Sample& b) {
  double acc = 0.0;
  auto ia = a.features.begin();
  auto ib = b.features.begin();
  while (ia != a.features.end() && ib != b.features.end()) {
    if (ia->index < ib->index) {
      ++ia;
    } else if (ib->index < ia->index) {
      ++ib;
    } else {
      acc += ia->value * ib->value;
      ++ia;
      ++ib;
    }
  }
  return acc;
}

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

}  // namespace

std::size_t WeightState::active_count() const {
  return static_cast<std::size_t>(std::count(active.begin(), active.end(), char{1}));
}

std::vector<std::size_t> WeightState::active_indices() const {
  std::vector<std::size_t> out;
  out.reserve(active.size());
  for (std::size_t i = 0; i < active.size(); ++i)
    if (active[i]) out.push_back(i);
  return out;
}

void WeightState::deactivate(std::span<const std::size_t> indices) {
  for (auto i : indices) {
    active.at(i) = 0;
    alpha(static_cast<Eigen::Index>(i)) = 0.0;
  }
}

WeightState init_weights(std::size_t l, double sigma) {
  if (l == 0) throw Error("cannot initialise weights for zero samples");
  if (!(sigma > 0.0)) throw Error("sigma must be positive");
  WeightState s;
  s.alpha = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(l), 2.0 / static_cast<double>(l));
  s.active.assign(l, 1);
  s.sigma = sigma;
  return s;
}

void update_weights(WeightState& state, std::span<const double> signed_distances) {
  if (signed_distances.size() != state.size()) throw Error("distance vector length mismatch");
  double hi = -std::numeric_limits<double>::infinity();
  double lo = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < state.size(); ++i) {
    if (!state.active[i]) continue;
    const double d = std::abs(signed_distances[i]);
    hi = std::max(hi, d);
    lo = std::min(lo, d);
  }
  if (lo > hi) return;  // nothing active
  state.max_distance = hi;
  state.min_distance = lo;
  for (std::size_t i = 0; i < state.size(); ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    state.alpha(k) = state.active[i]
                         ? aw_value(std::abs(signed_distances[i]), state.sigma, hi, lo)
                         : 0.0;
  }
}

std::string_view to_string(NoiseMode mode) {
  return mode == NoiseMode::SignedSide ? "signed-side" : "raw-dot";
}

NoiseMode parse_noise_mode(std::string_view name) {
  if (name == "signed-side") return NoiseMode::SignedSide;
  if (name == "raw-dot") return NoiseMode::RawDot;
  throw Error("unknown noise mode '" + std::string(name) + "' (expected signed-side|raw-dot)");
}

std::vector<std::size_t> detect_noise(const Dataset& ds, const WeightState& state,
                                      std::span<const double> signed_distances, NoiseMode mode) {
  if (ds.size() != state.size() || signed_distances.size() != state.size())
    throw Error("detect_noise: dataset, weights and distances differ in length");

  std::vector<std::size_t> flagged;
  for (const int cls : {1, -1}) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < ds.size(); ++i)
      if (state.active[i] && ds.samples[i].label == cls) members.push_back(i);
    if (members.size() < 2) continue;

    if (mode == NoiseMode::SignedSide) {
      // The pairwise product d_i d_j is positive only for two strictly
      // same-signed distances, so counting signs replaces the pairwise scan.
      std::size_t n_above = 0;
      std::size_t n_below = 0;
      for (auto i : members) {
        const int s = sign_of(signed_distances[i]);
        n_above += s > 0;
        n_below += s < 0;
      }
      for (auto i : members) {
        const int s = sign_of(signed_distances[i]);
        const std::size_t same_side_others = s > 0 ? n_above - 1 : s < 0 ? n_below - 1 : 0;
        if (same_side_others == 0) flagged.push_back(i);
      }
    } else {
      for (auto i : members) {
        bool isolated = true;
        for (auto j : members) {
          if (j == i) continue;
          if (sparse_sparse_dot(ds.samples[i], ds.samples[j]) > 0.0) {
            isolated = false;
            break;
          }
        }
        if (isolated) flagged.push_back(i);
      }
    }
  }
  std::sort(flagged.begin(), flagged.end());
  return flagged;
}

WeightSummary summarize(const WeightState& state) {
  WeightSummary out;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  double sum = 0.0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < state.size(); ++i) {
    if (!state.active[i]) continue;
    const double a = state.alpha(static_cast<Eigen::Index>(i));
    lo = std::min(lo, a);
    hi = std::max(hi, a);
    sum += a;
    ++n;
  }
  if (n > 0) out = {lo, sum / static_cast<double>(n), hi};
  return out;
}

}  // namespace awwsvm
