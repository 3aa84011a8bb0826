#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "awwsvm/dataset.hpp"
#include "awwsvm/metrics.hpp"
#include "awwsvm/model.hpp"
#include "awwsvm/objective.hpp"
#include "awwsvm/optimizers.hpp"
#include "awwsvm/weighting.hpp"

namespace awwsvm {

enum class OptimizerKind { Sgd, Obfgs, Onaq };

std::string_view to_string(OptimizerKind kind);
OptimizerKind parse_optimizer(std::string_view name);

struct TrainConfig {
  OptimizerKind optimizer = OptimizerKind::Onaq;
  bool adaptive = false;
  std::size_t outer_iters = 10;
  std::size_t inner_iters = 5;
  std::size_t batch_size = 64;
  ObjectiveConfig objective;
  NoiseMode noise_mode = NoiseMode::SignedSide;
  double sigma = 1.0;
  std::optional<double> alpha0;  // unset: 0.1 for SGD, 1.0 for the quasi-Newton methods
  double tau = 10.0;
  double mu = 0.1;
  double lambda = 0.2;
  double h_scale = 1.0;
  std::uint64_t seed = 1;

  double step_alpha0() const;
  /// Constant for SGD, tau decay for oBFGS, 1/sqrt(k) decay for oNAQ.
  StepSchedule schedule() const;
  void validate() const;
};

/// `sgd`, `obfgs`, `onaq`, with an `aw+` prefix when adaptive.
std::string method_name(const TrainConfig& cfg);
/// Sets optimizer and adaptive from a method name; other fields are kept.
TrainConfig with_method(TrainConfig cfg, std::string_view name);

/// Per-dataset step size, total step budget and batch size used in the
/// published comparison. Outer/inner iterations split the budget 10 ways.
std::optional<TrainConfig> preset_config(std::string_view dataset, OptimizerKind optimizer);

struct HistoryEntry {
  std::size_t outer_iter = 0;  // 1-based
  EvalReport eval;
  double train_loss = 0.0;
  std::size_t n_noise = 0;     // cumulative
  WeightSummary alpha;
};

using TrainHistory = std::vector<HistoryEntry>;

struct TrainResult {
  LinearModel model;
  TrainHistory history;
  WeightState weights;
};

/// Called with the weight vector after every optimizer step.
using StepObserver = std::function<void(const Eigen::VectorXd&)>;

/// Runs the adaptive-weight loop: starting from w = 0 and alpha = 2/l, each
/// outer iteration takes `inner_iters` optimizer steps over the active set,
/// then (when adaptive) computes signed distances, drops noise samples for
/// good and refreshes alpha from the AW function. Optimizer state persists
/// across outer iterations. `eval` only feeds the history.
TrainResult train(const Dataset& train_set, const Dataset& eval, const TrainConfig& cfg,
                  const StepObserver& observer = {});

/// Runs a plain optimizer with uniform alpha = 2/l and no weighting loop:
/// `steps` minibatch steps from w = 0.
Eigen::VectorXd train_plain(const Dataset& train_set, const TrainConfig& cfg, std::size_t steps,
                            const StepObserver& observer = {});

struct ExperimentDataset {
  std::string name;
  Dataset train;
  Dataset test;
};

struct ExperimentMethod {
  std::string name;
  TrainConfig config;
  /// Per-dataset overrides; when set, called before the seed is applied.
  std::function<TrainConfig(const std::string& dataset, TrainConfig)> adjust;
};

struct RunRecord {
  std::string dataset;
  std::string method;
  std::uint64_t seed = 0;
  TrainHistory history;
  std::optional<EvalReport> final_eval;
  double final_loss = 0.0;
  std::size_t final_noise = 0;
  std::string error;  // empty when the run succeeded

  bool ok() const { return error.empty(); }
};

/// One record per (dataset, method, seed), ordered dataset-major, then method,
/// then seed, independent of `jobs`. Failed runs keep their error message.
std::vector<RunRecord> run_experiment(std::span<const ExperimentDataset> datasets,
                                      std::span<const ExperimentMethod> methods,
                                      std::span<const std::uint64_t> seeds, unsigned jobs = 1);

inline constexpr std::string_view kResultsHeader =
    "dataset,method,seed,outer_iter,accuracy,precision,recall,specificity,f1,gmean,train_loss,n_noise";

/// Header plus one row per outer iteration and a `final` row for each successful run.
void write_results_csv(std::ostream& os, std::span<const RunRecord> runs);

struct ResultRow {
  std::string dataset;
  std::string method;
  std::uint64_t seed = 0;
  std::string outer_iter;
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double specificity = 0.0;
  double f1 = 0.0;
  double gmean = 0.0;
  double train_loss = 0.0;
  std::size_t n_noise = 0;

  /// Looks up a metric column by its header name.
  double metric(std::string_view column) const;
};

std::vector<ResultRow> parse_results_csv(std::string_view text);

struct SummaryCell {
  std::string dataset;
  std::string method;
  std::size_t runs = 0;
  double accuracy = 0.0;
  double gmean = 0.0;
  double f1 = 0.0;
};

/// Means of the final metrics over seeds, in record order.
std::vector<SummaryCell> summarize_runs(std::span<const RunRecord> runs);

}  // namespace awwsvm
