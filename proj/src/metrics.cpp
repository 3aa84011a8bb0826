#include "awwsvm/metrics.hpp"

#include <cmath>

namespace awwsvm {

namespace {

double ratio(std::size_t num, std::size_t den, bool& degenerate) {
  degenerate = den == 0;
  return degenerate ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

ConfusionMatrix confusion(const LinearModel& m, const Dataset& ds) {
  ConfusionMatrix cm;
  for (const auto& x : ds.samples) {
    const bool predicted_pos = decide(m, x) > 0;
    if (x.label > 0)
      (predicted_pos ? cm.tp : cm.fn) += 1;
    else
      (predicted_pos ? cm.fp : cm.tn) += 1;
  }
  return cm;
}

EvalReport report(const ConfusionMatrix& cm) {
  EvalReport r;
  r.cm = cm;
  bool unused = false;
  r.accuracy = ratio(cm.tp + cm.tn, cm.total(), r.degenerate.accuracy);
  r.precision = ratio(cm.tp, cm.tp + cm.fp, r.degenerate.precision);
  r.recall = ratio(cm.tp, cm.tp + cm.fn, r.degenerate.recall);
  r.specificity = ratio(cm.tn, cm.tn + cm.fp, r.degenerate.specificity);
  r.sensitivity = r.recall;
  r.sensitivity_as_printed = ratio(cm.tp, cm.tp + cm.fp, unused);
  const double pr = r.precision + r.recall;
  r.degenerate.f1 = pr == 0.0;
  r.f1 = r.degenerate.f1 ? 0.0 : 2.0 * r.recall * r.precision / pr;
  r.gmean = std::sqrt(r.recall * r.specificity);
  return r;
}

}  // namespace awwsvm
