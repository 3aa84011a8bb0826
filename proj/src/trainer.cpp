#include "awwsvm/trainer.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cctype>
#include <charconv>
#include <map>
#include <ostream>
#include <thread>

#include <fmt/format.h>

#include "awwsvm/error.hpp"

namespace awwsvm {

std::string_view to_string(OptimizerKind kind) {
  switch (kind) {
    case OptimizerKind::Sgd: return "sgd";
    case OptimizerKind::Obfgs: return "obfgs";
    case OptimizerKind::Onaq: return "onaq";
  }
  return "?";
}

OptimizerKind parse_optimizer(std::string_view name) {
  if (name == "sgd") return OptimizerKind::Sgd;
  if (name == "obfgs") return OptimizerKind::Obfgs;
  if (name == "onaq") return OptimizerKind::Onaq;
  throw Error(fmt::format("unknown optimizer '{}' (expected sgd|obfgs|onaq)", name));
}

double TrainConfig::step_alpha0() const {
  if (alpha0) return *alpha0;
  return optimizer == OptimizerKind::Sgd ? 0.1 : 1.0;
}

StepSchedule TrainConfig::schedule() const {
  switch (optimizer) {
    case OptimizerKind::Sgd: return {ScheduleKind::Constant, step_alpha0(), tau};
    case OptimizerKind::Obfgs: return {ScheduleKind::TauDecay, step_alpha0(), tau};
    case OptimizerKind::Onaq: return {ScheduleKind::SqrtDecay, step_alpha0(), tau};
  }
  return {};
}

void TrainConfig::validate() const {
  if (outer_iters == 0) throw Error("outer_iters must be positive");
  if (inner_iters == 0) throw Error("inner_iters must be positive");
  if (batch_size == 0) throw Error("batch_size must be positive");
  if (!(objective.c > 0.0)) throw Error("C must be positive");
  if (!(sigma > 0.0)) throw Error("sigma must be positive");
  if (!(step_alpha0() >= 0.0)) throw Error("alpha0 must be nonnegative");
  if (!(tau > 0.0)) throw Error("tau must be positive");
  if (!(lambda >= 0.0)) throw Error("lambda must be nonnegative");
  if (!(h_scale > 0.0)) throw Error("initial inverse-Hessian scale must be positive");
  if (optimizer == OptimizerKind::Onaq && !(mu > 0.0 && mu < 1.0))
    throw Error("momentum mu must lie in (0, 1)");
}

std::string method_name(const TrainConfig& cfg) {
  return fmt::format("{}{}", cfg.adaptive ? "aw+" : "", to_string(cfg.optimizer));
}

TrainConfig with_method(TrainConfig cfg, std::string_view name) {
  cfg.adaptive = name.starts_with("aw+");
  if (cfg.adaptive) name.remove_prefix(3);
  cfg.optimizer = parse_optimizer(name);
  return cfg;
}

std::optional<TrainConfig> preset_config(std::string_view dataset, OptimizerKind optimizer) {
  struct Row {
    std::string_view name;
    double sgd_rate;
    std::array<std::size_t, 3> iters;    // sgd, obfgs, onaq
    std::array<std::size_t, 3> batches;  // sgd, obfgs, onaq
  };
  static constexpr std::array<Row, 12> kRows{{
      {"a7a", 0.1, {50, 100, 100}, {256, 128, 128}},
      {"a8a", 0.1, {100, 100, 100}, {32, 128, 128}},
      {"a9a", 0.1, {50, 100, 100}, {256, 128, 128}},
      {"mushroom", 0.1, {50, 100, 100}, {256, 64, 64}},
      {"yeast", 0.3, {50, 50, 50}, {128, 64, 64}},
      {"ijcnn1", 0.5, {50, 50, 50}, {64, 64, 64}},
      {"w1a", 0.5, {50, 50, 50}, {64, 64, 64}},
      {"w2a", 0.5, {50, 50, 50}, {64, 64, 64}},
      {"w3a", 0.5, {50, 50, 50}, {64, 64, 64}},
      {"w4a", 0.5, {50, 50, 50}, {64, 64, 64}},
      {"w5a", 0.5, {50, 50, 50}, {64, 64, 64}},
      {"w6a", 0.5, {50, 50, 50}, {64, 64, 64}},
  }};
  std::string key(dataset);
  std::transform(key.begin(), key.end(), key.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (key == "mushrooms") key = "mushroom";
  const auto it = std::find_if(kRows.begin(), kRows.end(), [&](const Row& r) { return r.name == key; });
  if (it == kRows.end()) return std::nullopt;

  const auto col = static_cast<std::size_t>(optimizer);
  TrainConfig cfg;
  cfg.optimizer = optimizer;
  if (optimizer == OptimizerKind::Sgd) cfg.alpha0 = it->sgd_rate;
  cfg.outer_iters = 10;
  cfg.inner_iters = std::max<std::size_t>(1, it->iters[col] / 10);
  cfg.batch_size = it->batches[col];
  return cfg;
}

namespace {

/// Dispatches one minibatch step to the configured optimizer.
class Stepper {
public:
  Stepper(const TrainConfig& cfg, Eigen::Index n)
      : cfg_(cfg), schedule_(cfg.schedule()) {
    if (cfg.optimizer != OptimizerKind::Sgd)
      qn_ = QuasiNewtonState::identity(n, cfg.h_scale, cfg.lambda, cfg.mu);
  }

  void step(Eigen::VectorXd& w, const Batch& batch) {
    switch (cfg_.optimizer) {
      case OptimizerKind::Sgd: sgd_step(w, batch, cfg_.objective, schedule_, sgd_k_++); break;
      case OptimizerKind::Obfgs: obfgs_step(w, qn_, batch, cfg_.objective, schedule_); break;
      case OptimizerKind::Onaq: onaq_step(w, qn_, batch, cfg_.objective, schedule_); break;
    }
  }

private:
  const TrainConfig& cfg_;
  StepSchedule schedule_;
  QuasiNewtonState qn_;
  std::size_t sgd_k_ = 1;
};

void require_both_classes(const Dataset& ds) {
  if (ds.n_pos == 0 || ds.n_neg == 0) throw TrainingError("training set must contain both classes");
}

}  // namespace

TrainResult train(const Dataset& train_set, const Dataset& eval, const TrainConfig& cfg,
                  const StepObserver& observer) {
  cfg.validate();
  require_both_classes(train_set);

  const Eigen::Index n = train_set.dim + 1;
  TrainResult out;
  out.model = LinearModel(train_set.dim, train_set.mapping);
  out.weights = init_weights(train_set.size(), cfg.sigma);
  Eigen::VectorXd& w = out.model.weights;
  WeightState& weights = out.weights;

  MinibatchSampler sampler(cfg.batch_size, cfg.seed);
  Stepper stepper(cfg, n);
  std::vector<std::size_t> active = weights.active_indices();
  std::vector<double> distances(train_set.size(), 0.0);
  std::size_t n_noise = 0;

  for (std::size_t outer = 1; outer <= cfg.outer_iters; ++outer) {
    for (std::size_t inner = 0; inner < cfg.inner_iters; ++inner) {
      const auto idx = sampler.next_batch(active);
      const Batch batch{train_set.samples, idx,
                        std::span<const double>(weights.alpha.data(), train_set.size())};
      stepper.step(w, batch);
      if (observer) observer(w);
    }

    HistoryEntry entry;
    entry.outer_iter = outer;
    entry.train_loss = loss(w, Batch{train_set.samples, active,
                                     std::span<const double>(weights.alpha.data(), train_set.size())},
                            cfg.objective);

    // A zero normal has no distances; the weights simply wait for the next round.
    if (cfg.adaptive && out.model.normal().norm() > 0.0) {
      for (auto i : active) distances[i] = signed_distance(out.model, train_set.samples[i]);
      const auto noise = detect_noise(train_set, weights, distances, cfg.noise_mode);
      weights.deactivate(noise);
      n_noise += noise.size();

      std::size_t pos = 0;
      std::size_t neg = 0;
      for (std::size_t i = 0; i < train_set.size(); ++i)
        if (weights.active[i]) (train_set.samples[i].label > 0 ? pos : neg) += 1;
      if (pos == 0 || neg == 0)
        throw TrainingError(fmt::format(
            "outer iteration {}: every {} sample was eliminated as noise", outer,
            pos == 0 ? "positive" : "negative"));

      update_weights(weights, distances);
      active = weights.active_indices();
    }

    entry.n_noise = n_noise;
    entry.alpha = summarize(weights);
    entry.eval = evaluate(out.model, eval);
    out.history.push_back(entry);
  }
  return out;
}

Eigen::VectorXd train_plain(const Dataset& train_set, const TrainConfig& cfg, std::size_t steps,
                            const StepObserver& observer) {
  cfg.validate();
  require_both_classes(train_set);
  Eigen::VectorXd w = Eigen::VectorXd::Zero(train_set.dim + 1);
  const std::vector<double> alpha(train_set.size(), 2.0 / static_cast<double>(train_set.size()));
  std::vector<std::size_t> all(train_set.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;

  MinibatchSampler sampler(cfg.batch_size, cfg.seed);
  Stepper stepper(cfg, w.size());
  for (std::size_t t = 0; t < steps; ++t) {
    const auto idx = sampler.next_batch(all);
    stepper.step(w, Batch{train_set.samples, idx, alpha});
    if (observer) observer(w);
  }
  return w;
}

std::vector<RunRecord> run_experiment(std::span<const ExperimentDataset> datasets,
                                      std::span<const ExperimentMethod> methods,
                                      std::span<const std::uint64_t> seeds, unsigned jobs) {
  struct Cell {
    std::size_t d, m, s;
  };
  std::vector<Cell> cells;
  for (std::size_t d = 0; d < datasets.size(); ++d)
    for (std::size_t m = 0; m < methods.size(); ++m)
      for (std::size_t s = 0; s < seeds.size(); ++s) cells.push_back({d, m, s});

  std::vector<RunRecord> records(cells.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t c = next++; c < cells.size(); c = next++) {
      const auto [d, m, s] = cells[c];
      const auto& ds = datasets[d];
      const auto& method = methods[m];
      RunRecord& rec = records[c];
      rec.dataset = ds.name;
      rec.method = method.name;
      rec.seed = seeds[s];
      try {
        TrainConfig cfg = method.adjust ? method.adjust(ds.name, method.config) : method.config;
        cfg.seed = seeds[s];
        auto result = train(ds.train, ds.test, cfg);
        rec.history = std::move(result.history);
        rec.final_eval = evaluate(result.model, ds.test);
        rec.final_loss = rec.history.back().train_loss;
        rec.final_noise = rec.history.back().n_noise;
      } catch (const std::exception& e) {
        rec.error = e.what();
      }
    }
  };

  const unsigned n_threads = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(cells.size())));
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  }
  return records;
}

namespace {

void write_row(std::ostream& os, const RunRecord& r, const std::string& iter, const EvalReport& e,
               double loss_value, std::size_t n_noise) {
  os << fmt::format("{},{},{},{},{:.6f},{:.6f},{:.6f},{:.6f},{:.6f},{:.6f},{:.6f},{}\n", r.dataset,
                    r.method, r.seed, iter, e.accuracy, e.precision, e.recall, e.specificity, e.f1,
                    e.gmean, loss_value, n_noise);
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  while (true) {
    const auto pos = line.find(',');
    out.push_back(line.substr(0, pos));
    if (pos == std::string_view::npos) break;
    line.remove_prefix(pos + 1);
  }
  return out;
}

template <typename T>
T field(std::string_view text, std::size_t line_no) {
  T v{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end)
    throw ParseError(line_no, fmt::format("bad numeric field '{}'", text));
  return v;
}

}  // namespace

void write_results_csv(std::ostream& os, std::span<const RunRecord> runs) {
  os << kResultsHeader << '\n';
  for (const auto& r : runs) {
    if (!r.ok()) continue;
    for (const auto& h : r.history)
      write_row(os, r, std::to_string(h.outer_iter), h.eval, h.train_loss, h.n_noise);
    write_row(os, r, "final", *r.final_eval, r.final_loss, r.final_noise);
  }
}

double ResultRow::metric(std::string_view column) const {
  if (column == "accuracy") return accuracy;
  if (column == "precision") return precision;
  if (column == "recall") return recall;
  if (column == "specificity") return specificity;
  if (column == "f1") return f1;
  if (column == "gmean") return gmean;
  if (column == "train_loss") return train_loss;
  if (column == "n_noise") return static_cast<double>(n_noise);
  throw Error(fmt::format("unknown metric column '{}'", column));
}

std::vector<ResultRow> parse_results_csv(std::string_view text) {
  std::vector<ResultRow> rows;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (!header_seen) {
      if (line != kResultsHeader) throw ParseError(line_no, "unexpected results header");
      header_seen = true;
      continue;
    }
    const auto f = split_commas(line);
    if (f.size() != 12) throw ParseError(line_no, fmt::format("expected 12 fields, got {}", f.size()));
    ResultRow r;
    r.dataset = f[0];
    r.method = f[1];
    r.seed = field<std::uint64_t>(f[2], line_no);
    r.outer_iter = f[3];
    r.accuracy = field<double>(f[4], line_no);
    r.precision = field<double>(f[5], line_no);
    r.recall = field<double>(f[6], line_no);
    r.specificity = field<double>(f[7], line_no);
    r.f1 = field<double>(f[8], line_no);
    r.gmean = field<double>(f[9], line_no);
    r.train_loss = field<double>(f[10], line_no);
    r.n_noise = field<std::size_t>(f[11], line_no);
    rows.push_back(std::move(r));
  }
  if (!header_seen) throw ParseError(0, "results file has no header");
  return rows;
}

std::vector<SummaryCell> summarize_runs(std::span<const RunRecord> runs) {
  std::vector<SummaryCell> cells;
  std::map<std::pair<std::string, std::string>, std::size_t> slot;
  for (const auto& r : runs) {
    if (!r.ok()) continue;
    const auto key = std::make_pair(r.dataset, r.method);
    auto it = slot.find(key);
    if (it == slot.end()) {
      it = slot.emplace(key, cells.size()).first;
      cells.push_back({r.dataset, r.method});
    }
    auto& c = cells[it->second];
    c.runs += 1;
    c.accuracy += r.final_eval->accuracy;
    c.gmean += r.final_eval->gmean;
    c.f1 += r.final_eval->f1;
  }
  for (auto& c : cells) {
    const auto n = static_cast<double>(c.runs);
    c.accuracy /= n;
    c.gmean /= n;
    c.f1 /= n;
  }
  return cells;
}

}  // namespace awwsvm
