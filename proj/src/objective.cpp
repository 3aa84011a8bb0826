#include "awwsvm/objective.hpp"

#include <string>

namespace awwsvm {

std::string_view to_string(WeightMode mode) {
  return mode == WeightMode::Regularizer ? "regularizer" : "hinge";
}

WeightMode parse_weight_mode(std::string_view name) {
  if (name == "regularizer") return WeightMode::Regularizer;
  if (name == "hinge") return WeightMode::Hinge;
  throw Error("unknown weight mode '" + std::string(name) + "' (expected regularizer|hinge)");
}

}  // namespace awwsvm
