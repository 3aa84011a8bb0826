#pragma once

#include <cstddef>

#include "awwsvm/dataset.hpp"
#include "awwsvm/model.hpp"

namespace awwsvm {

/// Counts with +1 as the positive class.
struct ConfusionMatrix {
  std::size_t tp = 0;
  std::size_t fn = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;

  std::size_t total() const { return tp + fn + fp + tn; }
  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

ConfusionMatrix confusion(const LinearModel& m, const Dataset& ds);

/// Ratios whose denominator is zero are reported as 0 and flagged.
struct EvalReport {
  ConfusionMatrix cm;
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double specificity = 0.0;
  double sensitivity = 0.0;          // TP / (TP + FN), same as recall
  double sensitivity_as_printed = 0.0;  // TP / (TP + FP), the variant that duplicates precision
  double f1 = 0.0;
  double gmean = 0.0;

  struct Flags {
    bool accuracy = false;
    bool precision = false;
    bool recall = false;
    bool specificity = false;
    bool f1 = false;
  } degenerate;
};

EvalReport report(const ConfusionMatrix& cm);

inline EvalReport evaluate(const LinearModel& m, const Dataset& ds) { return report(confusion(m, ds)); }

}  // namespace awwsvm
