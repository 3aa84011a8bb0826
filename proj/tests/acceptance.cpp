// One line per acceptance criterion; exit status is nonzero if any fails.
// Real-data criteria read LIBSVM files from $AWWSVM_DATA_DIR:
//   mushrooms, w1a + w1a.t, yeast (binary, LIBSVM format).

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <fmt/format.h>

#include "awwsvm/error.hpp"
#include "awwsvm/stats.hpp"
#include "awwsvm/trainer.hpp"

using namespace awwsvm;
namespace fs = std::filesystem;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string title;
  double time_limit_s;  // 0: no limit
  std::function<Verdict()> check;
};

constexpr std::uint64_t kSeeds[] = {1, 2, 3, 4, 5};

// ------------------------------------------------------------- fixtures

Eigen::MatrixXd published_accuracy_table() {
  std::ifstream in(AWWSVM_TEST_DATA "/published_accuracy.csv");
  if (!in) throw Error("accuracy fixture missing");
  std::stringstream buf;
  buf << in.rdbuf();
  const auto rows = parse_results_csv(buf.str());
  if (rows.size() != 72) throw Error(fmt::format("fixture has {} rows, expected 72", rows.size()));
  Eigen::MatrixXd v(12, 6);
  for (std::size_t i = 0; i < rows.size(); ++i)
    v(static_cast<Eigen::Index>(i / 6), static_cast<Eigen::Index>(i % 6)) = rows[i].accuracy;
  return v;
}

std::optional<std::string> find_data(std::initializer_list<const char*> names) {
  const char* dir = std::getenv("AWWSVM_DATA_DIR");
  if (dir == nullptr || *dir == '\0') return std::nullopt;
  for (const auto* n : names) {
    const fs::path p = fs::path(dir) / n;
    if (fs::exists(p)) return p.string();
  }
  return std::nullopt;
}

Verdict missing_data(std::string_view what) {
  return {false, fmt::format("dataset not found: {} (set AWWSVM_DATA_DIR)", what)};
}

TrainConfig preset(std::string_view dataset, std::string_view method) {
  const TrainConfig base = with_method(TrainConfig{}, method);
  auto cfg = preset_config(dataset, base.optimizer);
  if (!cfg) throw Error(fmt::format("no preset for {}", dataset));
  cfg->adaptive = base.adaptive;
  return *cfg;
}

double final_accuracy(const Dataset& train_set, const Dataset& test_set, TrainConfig cfg, std::uint64_t seed) {
  cfg.seed = seed;
  return evaluate(train(train_set, test_set, cfg).model, test_set).accuracy;
}

std::string join(const std::vector<double>& v, int precision = 4) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += fmt::format("{}{:.{}f}", i ? " " : "", v[i], precision);
  return s;
}

double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (const double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double angle_between(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const double c = a.dot(b) / (a.norm() * b.norm());
  return std::acos(std::clamp(c, -1.0, 1.0));
}

// ------------------------------------------------------------- criteria

Verdict critical_difference() {
  const double cd = nemenyi_cd(6, 12, 2.850);
  return {std::abs(cd - 2.1767) <= 1e-4, fmt::format("CD = {:.6f}, expected 2.1767 +/- 1e-4", cd)};
}

Verdict mean_ranks_match_printed() {
  const auto rt = rank_rows(published_accuracy_table());
  Eigen::VectorXd printed(6);
  printed << 4.04, 1.83, 4.46, 1.83, 5.42, 2.13;
  const double worst = (rt.mean_ranks - printed).cwiseAbs().maxCoeff();
  std::vector<double> r(rt.mean_ranks.data(), rt.mean_ranks.data() + 6);
  return {worst <= 0.01, fmt::format("R = ({}), printed (4.04 1.83 4.46 1.83 5.42 2.13), max |diff| = {:.3f} > 0.01",
                                     join(r, 3), worst)};
}

Verdict friedman_p_value() {
  const auto fr = friedman(rank_rows(published_accuracy_table()));
  return {fr.p_value < 1e-6, fmt::format("chi2 = {:.4f}, dof = {}, p = {:.4e} (need < 1e-6)", fr.chi2, fr.dof, fr.p_value)};
}

Verdict aw_quadrature() {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> sig(0.05, 10.0);
  std::uniform_real_distribution<double> spr(0.01, 50.0);
  boost::math::quadrature::exp_sinh<double> integrator;
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double sigma = sig(rng);
    const double spread = spr(rng);
    const double area = integrator.integrate([&](double d) { return aw_raw(d, sigma, spread); });
    worst = std::max(worst, std::abs(area - 2.0));
  }
  return {worst <= 1e-6, fmt::format("100 draws, max |integral - 2| = {:.3e} (tol 1e-6)", worst)};
}

Verdict gradient_check() {
  std::mt19937_64 rng(99);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unit(0.05, 1.0);
  double worst = 0.0;
  int checked = 0;
  while (checked < 200) {
    const int dim = 1 + static_cast<int>(rng() % 10);
    const std::size_t n = 1 + rng() % 16;
    std::vector<Sample> samples;
    std::vector<std::size_t> idx;
    std::vector<double> alpha;
    for (std::size_t i = 0; i < n; ++i) {
      Sample s;
      s.label = rng() % 2 ? 1 : -1;
      for (int j = 1; j <= dim; ++j)
        if (rng() % 3 != 0) s.features.push_back({j, normal(rng)});
      samples.push_back(std::move(s));
      idx.push_back(i);
      alpha.push_back(unit(rng));
    }
    Eigen::VectorXd w = Eigen::VectorXd::NullaryExpr(dim + 1, [&] { return normal(rng); });
    bool near_kink = false;
    for (const auto& s : samples) near_kink |= std::abs(s.label * augmented_dot(w, s) - 1.0) < 1e-3;
    if (near_kink) continue;
    const Batch batch{samples, idx, alpha};
    const ObjectiveConfig cfg{0.1 + 3.0 * unit(rng), rng() % 2 ? WeightMode::Regularizer : WeightMode::Hinge};
    const Eigen::VectorXd g = subgradient(w, batch, cfg);
    Eigen::VectorXd fd(w.size());
    for (Eigen::Index j = 0; j < w.size(); ++j) {
      Eigen::VectorXd wp = w;
      Eigen::VectorXd wm = w;
      wp(j) += 1e-5;
      wm(j) -= 1e-5;
      fd(j) = (loss(wp, batch, cfg) - loss(wm, batch, cfg)) / 2e-5;
    }
    worst = std::max(worst, (g - fd).norm() / std::max(g.norm(), 1e-12));
    ++checked;
  }
  return {worst <= 1e-6, fmt::format("200 fixtures, max relative error = {:.3e} (tol 1e-6)", worst)};
}

Verdict bfgs_properties() {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> normal;
  const int n = 10;
  Eigen::MatrixXd H = Eigen::MatrixXd::Identity(n, n);
  double worst_sym = 0.0;
  double worst_secant = 0.0;
  int cholesky_failures = 0;
  int accepted = 0;
  while (accepted < 500) {
    const Eigen::VectorXd s = Eigen::VectorXd::NullaryExpr(n, [&] { return normal(rng); });
    const Eigen::VectorXd y = Eigen::VectorXd::NullaryExpr(n, [&] { return normal(rng); });
    if (!(y.dot(s) > 0.1)) continue;
    bfgs_inverse_update(H, s, y);
    ++accepted;
    worst_sym = std::max(worst_sym, (H - H.transpose()).cwiseAbs().maxCoeff() / std::max(1.0, H.cwiseAbs().maxCoeff()));
    worst_secant = std::max(worst_secant, (H * y - s).norm() / s.norm());
    cholesky_failures += Eigen::LLT<Eigen::MatrixXd>(H).info() != Eigen::Success;
    // Long random chains grow H without bound; restart to keep the check well conditioned.
    if (H.norm() > 1e6) H = Eigen::MatrixXd::Identity(n, n);
  }
  return {worst_sym <= 1e-10 && worst_secant <= 1e-8 && cholesky_failures == 0,
          fmt::format("500 updates, asymmetry {:.2e}, secant error {:.2e}, Cholesky failures {}", worst_sym,
                      worst_secant, cholesky_failures)};
}

Verdict baseline_equivalence() {
  const auto ds = synth_two_gaussians(300, 200, 2.0, 0.05, 17);
  std::string detail;
  bool pass = true;
  for (const auto opt : {OptimizerKind::Sgd, OptimizerKind::Obfgs, OptimizerKind::Onaq}) {
    TrainConfig cfg;
    cfg.optimizer = opt;
    cfg.adaptive = false;
    cfg.outer_iters = 10;
    cfg.inner_iters = 10;
    cfg.batch_size = 32;
    cfg.seed = 5;
    std::vector<Eigen::VectorXd> a;
    std::vector<Eigen::VectorXd> b;
    train(ds, ds, cfg, [&](const Eigen::VectorXd& w) { a.push_back(w); });
    train_plain(ds, cfg, cfg.outer_iters * cfg.inner_iters, [&](const Eigen::VectorXd& w) { b.push_back(w); });
    bool same = a.size() == b.size();
    for (std::size_t i = 0; same && i < a.size(); ++i)
      same = std::memcmp(a[i].data(), b[i].data(), sizeof(double) * static_cast<std::size_t>(a[i].size())) == 0;
    pass &= same;
    detail += fmt::format("{}{}: {} steps {}", detail.empty() ? "" : ", ", to_string(opt), a.size(),
                          same ? "identical" : "DIFFER");
  }
  return {pass, detail};
}

Verdict mushroom_sgd() {
  const auto path = find_data({"mushrooms", "mushrooms.libsvm", "mushroom", "mushroom.libsvm"});
  if (!path) return missing_data("mushrooms");
  const auto full = read_libsvm_file(*path);
  std::vector<double> adaptive;
  std::vector<double> plain;
  int wins = 0;
  for (const auto seed : kSeeds) {
    const auto [tr, te] = split(full, 0.2, seed);
    adaptive.push_back(final_accuracy(tr, te, preset("mushrooms", "aw+sgd"), seed));
    plain.push_back(final_accuracy(tr, te, preset("mushrooms", "sgd"), seed));
    wins += adaptive.back() >= plain.back();
  }
  const double m = mean(adaptive);
  return {m >= 0.96 && wins >= 4, fmt::format("aw+sgd mean {:.4f} (need >= 0.96), >= sgd in {}/5 seeds; aw+sgd [{}], sgd [{}]",
                                              m, wins, join(adaptive), join(plain))};
}

Verdict w1a_onaq() {
  const auto train_path = find_data({"w1a", "w1a.libsvm"});
  const auto test_path = find_data({"w1a.t", "w1a.t.libsvm"});
  if (!train_path || !test_path) return missing_data("w1a and w1a.t");
  const auto tr = read_libsvm_file(*train_path);
  const auto te = read_libsvm_file(*test_path, tr.mapping);
  std::vector<double> acc;
  for (const auto seed : kSeeds) acc.push_back(final_accuracy(tr, te, preset("w1a", "aw+onaq"), seed));
  const double m = mean(acc);
  return {std::abs(m - 0.9805) <= 0.015, fmt::format("aw+onaq mean {:.4f}, target 0.9805 +/- 0.015; [{}]", m, join(acc))};
}

Verdict yeast_all_optimizers() {
  const auto path = find_data({"yeast", "yeast.libsvm"});
  if (!path) return missing_data("yeast");
  const auto full = read_libsvm_file(*path);
  bool pass = true;
  std::string detail;
  for (const auto* opt : {"sgd", "obfgs", "onaq"}) {
    int ok = 0;
    for (const auto seed : kSeeds) {
      const auto [tr, te] = split(full, 0.2, seed);
      const double a = final_accuracy(tr, te, preset("yeast", std::string("aw+") + opt), seed);
      const double b = final_accuracy(tr, te, preset("yeast", opt), seed);
      ok += a >= b - 0.005;
    }
    pass &= ok >= 4;
    detail += fmt::format("{}{}: {}/5", detail.empty() ? "" : ", ", opt, ok);
  }
  return {pass, detail + " seeds with adaptive >= baseline - 0.005 (need 4/5 each)"};
}

TrainConfig synthetic_config(bool adaptive, std::uint64_t seed) {
  TrainConfig cfg;
  cfg.optimizer = OptimizerKind::Onaq;
  cfg.adaptive = adaptive;
  cfg.outer_iters = 10;
  cfg.inner_iters = 20;
  cfg.batch_size = 64;
  cfg.seed = seed;
  return cfg;
}

Verdict outlier_robustness() {
  int wins = 0;
  std::vector<double> adaptive_deg;
  std::vector<double> baseline_deg;
  for (const auto seed : kSeeds) {
    const auto clean = synth_two_gaussians(250, 250, 4.0, 0.0, seed);
    const auto noisy = synth_two_gaussians(250, 250, 4.0, 0.05, seed);
    const auto reference = train(clean, clean, synthetic_config(false, seed)).model;
    const auto adaptive = train(noisy, noisy, synthetic_config(true, seed)).model;
    const auto baseline = train(noisy, noisy, synthetic_config(false, seed)).model;
    const double a = angle_between(adaptive.normal(), reference.normal()) * 180.0 / M_PI;
    const double b = angle_between(baseline.normal(), reference.normal()) * 180.0 / M_PI;
    adaptive_deg.push_back(a);
    baseline_deg.push_back(b);
    wins += a < b;
  }
  return {wins >= 4, fmt::format("adaptive angle smaller in {}/5 seeds (need 4); degrees adaptive [{}], baseline [{}]",
                                 wins, join(adaptive_deg, 3), join(baseline_deg, 3))};
}

Verdict imbalance_gmean() {
  bool pass = true;
  std::string detail;
  for (const std::size_t ir : {2u, 5u, 10u}) {
    int wins = 0;
    for (const auto seed : kSeeds) {
      const auto tr = synth_two_gaussians(60, 60 * ir, 2.0, 0.0, seed);
      const auto te = synth_two_gaussians(60, 60 * ir, 2.0, 0.0, seed + 100);
      const double a = evaluate(train(tr, te, synthetic_config(true, seed)).model, te).gmean;
      const double b = evaluate(train(tr, te, synthetic_config(false, seed)).model, te).gmean;
      wins += a >= b;
    }
    pass &= wins >= 4;
    detail += fmt::format("{}IR={}: {}/5", detail.empty() ? "" : ", ", ir, wins);
  }
  return {pass, detail + " seeds with adaptive G-mean >= baseline (need 4/5 each)"};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "Nemenyi critical difference", 0, critical_difference},
      {2, "mean ranks of the published accuracies", 0, mean_ranks_match_printed},
      {3, "Friedman p-value on the published accuracies", 0, friedman_p_value},
      {4, "AW function integrates to 2", 5, aw_quadrature},
      {5, "subgradient vs finite differences", 10, gradient_check},
      {6, "inverse BFGS update properties", 10, bfgs_properties},
      {7, "disabled framework equals bare optimizer", 0, baseline_equivalence},
      {8, "mushrooms aw+sgd accuracy", 60, mushroom_sgd},
      {9, "w1a aw+onaq accuracy", 60, w1a_onaq},
      {10, "yeast adaptive vs baseline", 30, yeast_all_optimizers},
      {11, "synthetic outlier robustness", 30, outlier_robustness},
      {12, "synthetic imbalance G-mean", 120, imbalance_gmean},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.check();
    } catch (const std::exception& e) {
      v = {false, fmt::format("error: {}", e.what())};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit_s > 0 && secs > c.time_limit_s) {
      v.pass = false;
      v.detail += fmt::format("; exceeded {:.0f} s", c.time_limit_s);
    }
    failures += !v.pass;
    fmt::print("{} [{:>2}] {} ({:.2f} s): {}\n", v.pass ? "PASS" : "FAIL", c.id, c.title, secs, v.detail);
  }
  fmt::print("{} of {} criteria passed\n", criteria.size() - static_cast<std::size_t>(failures), criteria.size());
  return failures == 0 ? 0 : 1;
}
