#pragma once

#include <optional>

#include <Eigen/Dense>

namespace awwsvm {

/// Methods in columns, datasets in rows. Rank 1 is best in each row; tied
/// entries share the average of the positions they occupy.
struct RankTable {
  Eigen::MatrixXd values;
  Eigen::MatrixXd ranks;
  Eigen::VectorXd mean_ranks;
  bool higher_is_better = true;

  Eigen::Index datasets() const { return values.rows(); }
  Eigen::Index methods() const { return values.cols(); }
};

RankTable rank_rows(const Eigen::MatrixXd& values, bool higher_is_better = true);

/// Regularized upper incomplete gamma Q(a, x) = Gamma(a, x) / Gamma(a).
/// Power series for x < a + 1, Lentz continued fraction otherwise.
double regularized_gamma_q(double a, double x);

/// Upper tail P[X > x] of a chi-square variable with `dof` degrees of freedom.
double chi_square_sf(double x, double dof);

struct FriedmanResult {
  double chi2 = 0.0;
  double p_value = 1.0;
  double dof = 0.0;
};

/// chi2_F = 12 N / (K (K + 1)) * (sum_j R_j^2 - K (K + 1)^2 / 4), with K - 1
/// degrees of freedom.
FriedmanResult friedman(const RankTable& rt);

/// CD = q * sqrt(K (K + 1) / (6 N)).
double nemenyi_cd(int methods, int datasets, double q_alpha);

/// Two-tailed Nemenyi critical value at alpha = 0.05 (studentized range / sqrt 2)
/// for 2 <= K <= 10; empty outside the table.
std::optional<double> nemenyi_q_005(int methods);

using BoolMatrix = Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>;

/// (i, j) is true iff |R_i - R_j| > cd.
BoolMatrix pairwise_significance(const RankTable& rt, double cd);

}  // namespace awwsvm
