#pragma once

#include <cmath>
#include <cstddef>
#include <string_view>

#include <Eigen/Dense>

#include "awwsvm/objective.hpp"

namespace awwsvm {

enum class ScheduleKind { Constant, TauDecay, SqrtDecay };

/// Step length as a function of the 1-based step counter k:
///   Constant  -> alpha0
///   TauDecay  -> tau / (tau + k) * alpha0
///   SqrtDecay -> alpha0 / sqrt(k)
struct StepSchedule {
  ScheduleKind kind = ScheduleKind::Constant;
  double alpha0 = 1.0;
  double tau = 10.0;

  double rate(std::size_t k) const {
    const auto kk = static_cast<double>(k);
    switch (kind) {
      case ScheduleKind::TauDecay: return tau / (tau + kk) * alpha0;
      case ScheduleKind::SqrtDecay: return alpha0 / std::sqrt(kk);
      case ScheduleKind::Constant: break;
    }
    return alpha0;
  }
};

/// State shared by the online BFGS and Nesterov quasi-Newton steps.
struct QuasiNewtonState {
  Eigen::MatrixXd inverse_hessian;
  Eigen::VectorXd velocity;
  std::size_t k = 1;
  double damping = 0.2;   // lambda in y = g2 - g1 + lambda * s
  double momentum = 0.1;  // mu, used by the Nesterov variant only

  static QuasiNewtonState identity(Eigen::Index n, double h_scale = 1.0, double damping = 0.2,
                                   double momentum = 0.1) {
    QuasiNewtonState st;
    st.inverse_hessian = h_scale * Eigen::MatrixXd::Identity(n, n);
    st.velocity = Eigen::VectorXd::Zero(n);
    st.damping = damping;
    st.momentum = momentum;
    return st;
  }
};

/// Relative curvature floor: a pair is accepted when y.s > floor * ||s|| ||y||.
inline constexpr double kCurvatureFloor = 1e-10;

template <typename DerivedS, typename DerivedY>
bool curvature_ok(const Eigen::MatrixBase<DerivedS>& s, const Eigen::MatrixBase<DerivedY>& y,
                  double floor = kCurvatureFloor) {
  const double ys = y.dot(s);
  return std::isfinite(ys) && ys > floor * s.norm() * y.norm();
}

/// Inverse BFGS update
///   H <- (I - rho s y^T) H (I - rho y s^T) + rho s s^T,   rho = 1 / y.s
/// expanded as a symmetric rank-two correction so it costs O(n^2). Requires
/// y.s > 0 (check with curvature_ok first). Afterwards H y = s.
template <typename DerivedH, typename DerivedS, typename DerivedY>
void bfgs_inverse_update(Eigen::MatrixBase<DerivedH>& H, const Eigen::MatrixBase<DerivedS>& s,
                         const Eigen::MatrixBase<DerivedY>& y) {
  using Scalar = typename DerivedH::Scalar;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  const Scalar rho = Scalar(1) / y.dot(s);
  const Vector hy = H * y;
  const Scalar yhy = y.dot(hy);
  H -= rho * (hy * s.transpose() + s * hy.transpose());
  H += (rho * rho * yhy + rho) * (s * s.transpose());
}

struct StepInfo {
  bool moved = false;             // false when the search direction vanished
  bool curvature_updated = false;  // false when the curvature guard rejected (s, y)
};

/// w <- w - rate(k) * grad F(w, batch).
void sgd_step(Eigen::VectorXd& w, const Batch& batch, const ObjectiveConfig& cfg,
              const StepSchedule& schedule, std::size_t k);

/// One online BFGS step: normalized direction -H g1, step rate(k), second
/// gradient on the same batch, damped curvature pair, guarded inverse update.
/// Increments state.k.
StepInfo obfgs_step(Eigen::VectorXd& w, QuasiNewtonState& state, const Batch& batch,
                    const ObjectiveConfig& cfg, const StepSchedule& schedule);

/// One online Nesterov quasi-Newton step: gradients at the lookahead point
/// w + mu v, velocity v <- mu v + rate(k) g_hat, curvature pair measured from
/// the lookahead point. Increments state.k.
StepInfo onaq_step(Eigen::VectorXd& w, QuasiNewtonState& state, const Batch& batch,
                   const ObjectiveConfig& cfg, const StepSchedule& schedule);

}  // namespace awwsvm
