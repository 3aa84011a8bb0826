#include "awwsvm/optimizers.hpp"

namespace awwsvm {

void sgd_step(Eigen::VectorXd& w, const Batch& batch, const ObjectiveConfig& cfg,
              const StepSchedule& schedule, std::size_t k) {
  w -= schedule.rate(k) * subgradient(w, batch, cfg);
}

StepInfo obfgs_step(Eigen::VectorXd& w, QuasiNewtonState& state, const Batch& batch,
                    const ObjectiveConfig& cfg, const StepSchedule& schedule) {
  StepInfo info;
  const std::size_t k = state.k++;

  const Eigen::VectorXd g1 = subgradient(w, batch, cfg);
  Eigen::VectorXd direction = -(state.inverse_hessian * g1);
  const double norm = direction.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) return info;
  direction /= norm;

  state.velocity = schedule.rate(k) * direction;
  const Eigen::VectorXd w_prev = w;
  w += state.velocity;
  info.moved = true;

  const Eigen::VectorXd g2 = subgradient(w, batch, cfg);
  const Eigen::VectorXd s = w - w_prev;
  const Eigen::VectorXd y = g2 - g1 + state.damping * s;
  if (curvature_ok(s, y)) {
    bfgs_inverse_update(state.inverse_hessian, s, y);
    info.curvature_updated = true;
  }
  return info;
}

StepInfo onaq_step(Eigen::VectorXd& w, QuasiNewtonState& state, const Batch& batch,
                   const ObjectiveConfig& cfg, const StepSchedule& schedule) {
  StepInfo info;
  const std::size_t k = state.k++;

  const Eigen::VectorXd lookahead = w + state.momentum * state.velocity;
  const Eigen::VectorXd g1 = subgradient(lookahead, batch, cfg);
  Eigen::VectorXd direction = -(state.inverse_hessian * g1);
  const double norm = direction.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) return info;
  direction /= norm;

  state.velocity = state.momentum * state.velocity + schedule.rate(k) * direction;
  w += state.velocity;
  info.moved = true;

  const Eigen::VectorXd g2 = subgradient(w, batch, cfg);
  const Eigen::VectorXd p = w - lookahead;
  const Eigen::VectorXd q = g2 - g1 + state.damping * p;
  if (curvature_ok(p, q)) {
    bfgs_inverse_update(state.inverse_hessian, p, q);
    info.curvature_updated = true;
  }
  return info;
}

}  // namespace awwsvm
