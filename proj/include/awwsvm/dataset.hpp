#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "awwsvm/random.hpp"

namespace awwsvm {

/// One nonzero coordinate. Indices are 1-based as in LIBSVM files.
struct Feature {
  std::int32_t index;
  double value;

  friend bool operator==(const Feature&, const Feature&) = default;
};

/// Labels are always -1 or +1; features are sorted by strictly ascending index.
struct Sample {
  std::vector<Feature> features;
  int label = 1;

  friend bool operator==(const Sample&, const Sample&) = default;
};

/// Which raw file label became -1 and which became +1.
struct LabelMapping {
  int negative = -1;
  int positive = 1;

  int to_internal(int raw) const { return raw == positive ? 1 : -1; }
  int to_raw(int label) const { return label > 0 ? positive : negative; }
  std::string to_string() const;

  friend bool operator==(const LabelMapping&, const LabelMapping&) = default;
};

/// Immutable after construction; use `Dataset::from_samples` to get consistent counts.
struct Dataset {
  std::vector<Sample> samples;
  std::int32_t dim = 0;
  std::size_t n_pos = 0;
  std::size_t n_neg = 0;
  LabelMapping mapping;

  static Dataset from_samples(std::vector<Sample> samples, LabelMapping mapping = {},
                              std::int32_t min_dim = 0);

  std::size_t size() const { return samples.size(); }
  bool empty() const { return samples.empty(); }

  /// Subset in the given order; dim is kept so models stay compatible.
  Dataset subset(std::span<const std::size_t> indices) const;

  friend bool operator==(const Dataset&, const Dataset&) = default;
};

/// Parses `<label> <idx>:<val> ...` lines. `#` starts a comment, blank lines
/// are skipped. Raw labels may be -1, +1, 0, 1 or 2; with two distinct labels
/// the larger one maps to +1. Pass `mapping` to force the mapping of a training
/// file onto its companion test file.
Dataset parse_libsvm(std::string_view text, std::optional<LabelMapping> mapping = std::nullopt);
Dataset read_libsvm_file(const std::string& path,
                         std::optional<LabelMapping> mapping = std::nullopt);

/// Writes raw labels through the dataset's mapping; values use round-trip precision.
std::string to_libsvm(const Dataset& ds);
void write_libsvm(std::ostream& os, const Dataset& ds);

/// max(n_pos, n_neg) / min(n_pos, n_neg). Throws if a class is empty.
double imbalance_ratio(const Dataset& ds);

struct SplitIndices {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

/// Stratified split: each class contributes round(test_fraction * n_class)
/// samples to the test part, clamped so both parts keep at least one sample of
/// each class. Indices come back in ascending order.
SplitIndices split_indices(const Dataset& ds, double test_fraction, std::uint64_t seed);
std::pair<Dataset, Dataset> split(const Dataset& ds, double test_fraction, std::uint64_t seed);

/// Serves shuffled minibatches over an active index set. Each epoch is a fresh
/// permutation; the last batch of an epoch may be short. A change in the
/// active set starts a new epoch.
class MinibatchSampler {
public:
  MinibatchSampler(std::size_t batch_size, std::uint64_t seed);

  std::vector<std::size_t> next_batch(std::span<const std::size_t> active);

  std::size_t batch_size() const { return batch_size_; }

private:
  std::size_t batch_size_;
  Rng rng_;
  std::vector<std::size_t> active_;
  std::vector<std::size_t> order_;
  std::size_t position_ = 0;
};

/// Two unit-variance Gaussian clouds in 2-D centred at (+separation/2, 0) for
/// the positive class and (-separation/2, 0) for the negative class. After the
/// points are drawn, round(flip_fraction * n) labels chosen at random are
/// inverted. The same seed with a different flip_fraction yields the same points.
Dataset synth_two_gaussians(std::size_t n_pos, std::size_t n_neg, double separation,
                            double flip_fraction, std::uint64_t seed);

/// Per-feature affine map onto [0, 1]. Not applied unless a caller asks for it.
class MinMaxScaler {
public:
  static MinMaxScaler fit(const Dataset& ds);
  Dataset transform(const Dataset& ds) const;

private:
  std::vector<double> min_;
  std::vector<double> max_;
};

}  // namespace awwsvm
