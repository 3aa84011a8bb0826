#include "awwsvm/stats.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "awwsvm/error.hpp"

namespace awwsvm {

RankTable rank_rows(const Eigen::MatrixXd& values, bool higher_is_better) {
  if (values.rows() < 2 || values.cols() < 2)
    throw Error("rank table needs at least two datasets and two methods");
  if (!values.allFinite()) throw Error("rank table contains non-finite values");

  RankTable rt;
  rt.values = values;
  rt.higher_is_better = higher_is_better;
  rt.ranks.resize(values.rows(), values.cols());

  const Eigen::Index k = values.cols();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(k));
  for (Eigen::Index r = 0; r < values.rows(); ++r) {
    const auto row = values.row(r);
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
      return higher_is_better ? row(a) > row(b) : row(a) < row(b);
    });
    std::size_t i = 0;
    while (i < order.size()) {
      std::size_t j = i;
      while (j + 1 < order.size() && row(order[j + 1]) == row(order[i])) ++j;
      // positions i..j (0-based) share rank ((i + 1) + (j + 1)) / 2
      const double shared = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
      for (std::size_t t = i; t <= j; ++t) rt.ranks(r, order[t]) = shared;
      i = j + 1;
    }
  }
  rt.mean_ranks = rt.ranks.colwise().mean().transpose();
  return rt;
}

double regularized_gamma_q(double a, double x) {
  if (!(a > 0.0) || x < 0.0 || std::isnan(x)) throw Error("regularized_gamma_q: invalid argument");
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;

  constexpr int kMaxIter = 10000;
  constexpr double kEps = 1e-16;
  const double log_prefix = a * std::log(x) - x - std::lgamma(a);

  if (x < a + 1.0) {
    // P(a, x) = x^a e^-x / Gamma(a) * sum_n x^n / (a (a + 1) ... (a + n))
    double term = 1.0 / a;
    double sum = term;
    for (int n = 1; n < kMaxIter; ++n) {
      term *= x / (a + n);
      sum += term;
      if (std::abs(term) < std::abs(sum) * kEps) break;
    }
    return std::clamp(1.0 - sum * std::exp(log_prefix), 0.0, 1.0);
  }

  // Q(a, x) = x^a e^-x / Gamma(a) * 1 / (x + 1 - a - 1 (1 - a) / (x + 3 - a - ...)),
  // evaluated with modified Lentz.
  constexpr double kTiny = std::numeric_limits<double>::min() / kEps;
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int n = 1; n < kMaxIter; ++n) {
    const double an = -n * (n - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kEps) break;
  }
  return std::exp(log_prefix) * h;
}

double chi_square_sf(double x, double dof) {
  if (!(dof > 0.0)) throw Error("chi-square degrees of freedom must be positive");
  if (x <= 0.0) return 1.0;
  return regularized_gamma_q(dof / 2.0, x / 2.0);
}

FriedmanResult friedman(const RankTable& rt) {
  const auto n = static_cast<double>(rt.datasets());
  const auto k = static_cast<double>(rt.methods());
  // Since sum_j R_j = K (K + 1) / 2, the bracket equals sum_j (R_j - (K + 1) / 2)^2;
  // the centred form cannot go negative through cancellation.
  const double centred = (rt.mean_ranks.array() - (k + 1.0) / 2.0).square().sum();
  FriedmanResult out;
  out.dof = k - 1.0;
  out.chi2 = 12.0 * n / (k * (k + 1.0)) * centred;
  out.p_value = chi_square_sf(out.chi2, out.dof);
  return out;
}

double nemenyi_cd(int methods, int datasets, double q_alpha) {
  if (methods < 2 || datasets < 1 || !(q_alpha > 0.0)) throw Error("nemenyi_cd: invalid argument");
  const double k = methods;
  return q_alpha * std::sqrt(k * (k + 1.0) / (6.0 * datasets));
}

std::optional<double> nemenyi_q_005(int methods) {
  static constexpr std::array<double, 9> kTable{1.960, 2.343, 2.569, 2.728, 2.850,
                                                2.949, 3.031, 3.102, 3.164};
  if (methods < 2 || methods > 10) return std::nullopt;
  return kTable[static_cast<std::size_t>(methods - 2)];
}

BoolMatrix pairwise_significance(const RankTable& rt, double cd) {
  const Eigen::Index k = rt.mean_ranks.size();
  BoolMatrix sig(k, k);
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j)
      sig(i, j) = std::abs(rt.mean_ranks(i) - rt.mean_ranks(j)) > cd;
  return sig;
}

}  // namespace awwsvm
