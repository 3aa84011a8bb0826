#include "awwsvm/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <system_error>

#include <fmt/format.h>

#include "awwsvm/error.hpp"

namespace awwsvm {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

std::vector<std::string_view> tokenize(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    const std::size_t start = i;
    while (i < line.size() && !is_space(line[i])) ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

template <typename T>
bool parse_number(std::string_view token, T& out) {
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  if (token.empty()) return false;
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, out);
  return ec == std::errc{} && ptr == end;
}

std::optional<int> parse_label(std::string_view token) {
  int raw = 0;
  if (!parse_number(token, raw)) {
    double as_real = 0.0;
    if (!parse_number(token, as_real) || as_real != std::floor(as_real)) return std::nullopt;
    raw = static_cast<int>(as_real);
  }
  if (raw < -1 || raw > 2) return std::nullopt;
  return raw;
}

LabelMapping mapping_for_single(int raw) {
  if (raw == -1) return {-1, 1};
  if (raw == 0) return {0, 1};
  if (raw == 1) return {-1, 1};
  return {1, 2};
}

struct RawLine {
  std::size_t line_no;
  int raw_label;
  std::vector<Feature> features;
};

}  // namespace

std::string LabelMapping::to_string() const { return fmt::format("{}:-1,{}:+1", negative, positive); }

Dataset Dataset::from_samples(std::vector<Sample> samples, LabelMapping mapping,
                              std::int32_t min_dim) {
  Dataset ds;
  ds.mapping = mapping;
  ds.dim = min_dim;
  for (const auto& s : samples) {
    if (!s.features.empty()) ds.dim = std::max(ds.dim, s.features.back().index);
    (s.label > 0 ? ds.n_pos : ds.n_neg) += 1;
  }
  ds.samples = std::move(samples);
  return ds;
}

Dataset Dataset::subset(std::span<const std::size_t> indices) const {
  std::vector<Sample> picked;
  picked.reserve(indices.size());
  for (auto i : indices) picked.push_back(samples.at(i));
  return from_samples(std::move(picked), mapping, dim);
}

Dataset parse_libsvm(std::string_view text, std::optional<LabelMapping> mapping) {
  std::vector<RawLine> lines;
  std::vector<int> distinct;
  std::size_t line_no = 0;

  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto tokens = tokenize(line);
    if (tokens.empty()) continue;

    const auto label = parse_label(tokens.front());
    if (!label) throw ParseError(line_no, fmt::format("bad label '{}'", tokens.front()));
    if (std::find(distinct.begin(), distinct.end(), *label) == distinct.end()) {
      if (distinct.size() == 2)
        throw ParseError(line_no, fmt::format("more than two distinct labels (found '{}')", *label));
      distinct.push_back(*label);
    }

    RawLine raw{line_no, *label, {}};
    raw.features.reserve(tokens.size() - 1);
    for (std::size_t t = 1; t < tokens.size(); ++t) {
      const auto tok = tokens[t];
      const auto colon = tok.find(':');
      std::int32_t index = 0;
      double value = 0.0;
      if (colon == std::string_view::npos || !parse_number(tok.substr(0, colon), index) ||
          !parse_number(tok.substr(colon + 1), value))
        throw ParseError(line_no, fmt::format("malformed feature '{}'", tok));
      if (index < 1) throw ParseError(line_no, fmt::format("feature index {} < 1", index));
      if (!raw.features.empty() && index <= raw.features.back().index)
        throw ParseError(line_no, fmt::format("non-ascending feature index {} after {}", index,
                                              raw.features.back().index));
      raw.features.push_back({index, value});
    }
    lines.push_back(std::move(raw));
  }

  if (lines.empty()) throw ParseError(0, "empty dataset");

  LabelMapping resolved;
  if (mapping) {
    resolved = *mapping;
    for (const auto& l : lines)
      if (l.raw_label != resolved.negative && l.raw_label != resolved.positive)
        throw ParseError(l.line_no, fmt::format("label {} not in mapping {}", l.raw_label,
                                                resolved.to_string()));
  } else if (distinct.size() == 1) {
    resolved = mapping_for_single(distinct.front());
  } else {
    resolved = {std::min(distinct[0], distinct[1]), std::max(distinct[0], distinct[1])};
  }

  std::vector<Sample> samples;
  samples.reserve(lines.size());
  for (auto& l : lines) samples.push_back({std::move(l.features), resolved.to_internal(l.raw_label)});
  return Dataset::from_samples(std::move(samples), resolved);
}

Dataset read_libsvm_file(const std::string& path, std::optional<LabelMapping> mapping) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(fmt::format("cannot open '{}'", path));
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_libsvm(buf.str(), mapping);
  } catch (const ParseError& e) {
    throw ParseError(e.line(), fmt::format("{}: {}", path, e.what()));
  }
}

void write_libsvm(std::ostream& os, const Dataset& ds) {
  for (const auto& s : ds.samples) {
    os << ds.mapping.to_raw(s.label);
    for (const auto& f : s.features) os << fmt::format(" {}:{}", f.index, f.value);
    os << '\n';
  }
}

std::string to_libsvm(const Dataset& ds) {
  std::ostringstream os;
  write_libsvm(os, ds);
  return os.str();
}

double imbalance_ratio(const Dataset& ds) {
  if (ds.n_pos == 0 || ds.n_neg == 0) throw Error("imbalance ratio undefined: a class is empty");
  const auto hi = std::max(ds.n_pos, ds.n_neg);
  const auto lo = std::min(ds.n_pos, ds.n_neg);
  return static_cast<double>(hi) / static_cast<double>(lo);
}

SplitIndices split_indices(const Dataset& ds, double test_fraction, std::uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0))
    throw Error(fmt::format("test fraction {} outside (0, 1)", test_fraction));
  if (ds.n_pos < 2 || ds.n_neg < 2) throw Error("split needs at least two samples per class");

  std::vector<std::size_t> pos;
  std::vector<std::size_t> neg;
  for (std::size_t i = 0; i < ds.size(); ++i) (ds.samples[i].label > 0 ? pos : neg).push_back(i);

  Rng rng(seed);
  SplitIndices out;
  for (auto* cls : {&pos, &neg}) {
    shuffle(std::span<std::size_t>(*cls), rng);
    auto n_test = static_cast<std::size_t>(std::llround(test_fraction * static_cast<double>(cls->size())));
    n_test = std::clamp<std::size_t>(n_test, 1, cls->size() - 1);
    out.test.insert(out.test.end(), cls->begin(), cls->begin() + static_cast<std::ptrdiff_t>(n_test));
    out.train.insert(out.train.end(), cls->begin() + static_cast<std::ptrdiff_t>(n_test), cls->end());
  }
  std::sort(out.train.begin(), out.train.end());
  std::sort(out.test.begin(), out.test.end());
  return out;
}

std::pair<Dataset, Dataset> split(const Dataset& ds, double test_fraction, std::uint64_t seed) {
  const auto idx = split_indices(ds, test_fraction, seed);
  return {ds.subset(idx.train), ds.subset(idx.test)};
}

MinibatchSampler::MinibatchSampler(std::size_t batch_size, std::uint64_t seed)
    : batch_size_(batch_size), rng_(seed) {
  if (batch_size == 0) throw Error("batch size must be positive");
}

std::vector<std::size_t> MinibatchSampler::next_batch(std::span<const std::size_t> active) {
  if (active.empty()) throw Error("minibatch requested from an empty active set");
  const bool changed = !std::equal(active.begin(), active.end(), active_.begin(), active_.end());
  if (changed) active_.assign(active.begin(), active.end());
  if (changed || position_ >= order_.size()) {
    order_ = active_;
    shuffle(std::span<std::size_t>(order_), rng_);
    position_ = 0;
  }
  const std::size_t end = std::min(order_.size(), position_ + batch_size_);
  std::vector<std::size_t> batch(order_.begin() + static_cast<std::ptrdiff_t>(position_),
                                 order_.begin() + static_cast<std::ptrdiff_t>(end));
  position_ = end;
  return batch;
}

Dataset synth_two_gaussians(std::size_t n_pos, std::size_t n_neg, double separation,
                            double flip_fraction, std::uint64_t seed) {
  if (n_pos == 0 || n_neg == 0) throw Error("synthetic class counts must be positive");
  if (!(flip_fraction >= 0.0 && flip_fraction < 0.5))
    throw Error(fmt::format("flip fraction {} outside [0, 0.5)", flip_fraction));

  Rng rng(seed);
  const std::size_t n = n_pos + n_neg;
  std::vector<Sample> samples;
  samples.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const int label = i < n_pos ? 1 : -1;
    const double x = label * separation / 2.0 + standard_normal(rng);
    const double y = standard_normal(rng);
    Sample s;
    s.label = label;
    if (x != 0.0) s.features.push_back({1, x});
    if (y != 0.0) s.features.push_back({2, y});
    samples.push_back(std::move(s));
  }

  const auto n_flip = static_cast<std::size_t>(std::llround(flip_fraction * static_cast<double>(n)));
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  shuffle(std::span<std::size_t>(order), rng);
  for (std::size_t k = 0; k < n_flip; ++k) samples[order[k]].label *= -1;

  return Dataset::from_samples(std::move(samples), LabelMapping{}, 2);
}

MinMaxScaler MinMaxScaler::fit(const Dataset& ds) {
  MinMaxScaler sc;
  const auto d = static_cast<std::size_t>(ds.dim);
  // Absent sparse entries are zeros, so zero always lies within the range.
  sc.min_.assign(d, 0.0);
  sc.max_.assign(d, 0.0);
  for (const auto& s : ds.samples)
    for (const auto& f : s.features) {
      const auto j = static_cast<std::size_t>(f.index - 1);
      sc.min_[j] = std::min(sc.min_[j], f.value);
      sc.max_[j] = std::max(sc.max_[j], f.value);
    }
  return sc;
}

Dataset MinMaxScaler::transform(const Dataset& ds) const {
  std::vector<Sample> out;
  out.reserve(ds.size());
  for (const auto& s : ds.samples) {
    Sample t;
    t.label = s.label;
    // Features that were zero stay implicit only when zero maps to zero (min == 0).
    std::size_t k = 0;
    for (std::size_t j = 0; j < min_.size(); ++j) {
      const auto index = static_cast<std::int32_t>(j + 1);
      double v = 0.0;
      while (k < s.features.size() && s.features[k].index < index) ++k;
      if (k < s.features.size() && s.features[k].index == index) v = s.features[k].value;
      const double range = max_[j] - min_[j];
      const double scaled = range > 0.0 ? (v - min_[j]) / range : 0.0;
      if (scaled != 0.0) t.features.push_back({index, scaled});
    }
    out.push_back(std::move(t));
  }
  return Dataset::from_samples(std::move(out), ds.mapping, ds.dim);
}

}  // namespace awwsvm
