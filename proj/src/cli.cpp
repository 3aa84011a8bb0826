#include "awwsvm/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>
#include <json.hpp>

#include "awwsvm/error.hpp"
#include "awwsvm/stats.hpp"

namespace awwsvm::cli {

namespace fs = std::filesystem;

namespace {

template <typename T>
T parse_value(const std::string& key, const std::string& text) {
  T v{};
  std::string_view s(text);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
    throw Error(fmt::format("{}: cannot parse '{}'", key, text));
  return v;
}

bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  throw Error(fmt::format("{}: expected true/false, got '{}'", key, text));
}

Field real_field(std::string name, std::string help, double& ref) {
  return {name, std::move(help), [&ref] { return fmt::format("{}", ref); },
          [&ref, name](const std::string& v) { ref = parse_value<double>(name, v); }};
}

template <typename T>
Field int_field(std::string name, std::string help, T& ref) {
  return {name, std::move(help), [&ref] { return fmt::format("{}", ref); },
          [&ref, name](const std::string& v) { ref = parse_value<T>(name, v); }};
}

Field string_field(std::string name, std::string help, std::string& ref) {
  return {name, std::move(help), [&ref] { return ref; }, [&ref](const std::string& v) { ref = v; }};
}

Field bool_field(std::string name, std::string help, bool& ref) {
  return {name, std::move(help), [&ref] { return ref ? std::string("true") : std::string("false"); },
          [&ref, name](const std::string& v) { ref = parse_bool(name, v); }, true};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(fmt::format("cannot open '{}'", path));
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(fmt::format("cannot write '{}'", path.string()));
  os << content;
}

std::string default_out_dir() {
  const char* env = std::getenv("AWWSVM_OUT");
  return env != nullptr && *env != '\0' ? std::string(env) : std::string(".");
}

/// Parsed-and-applied settings for one subcommand, or an exit code.
struct ParseOutcome {
  bool proceed = false;
  int code = kOk;
};

/// Defaults are already in the bound variables; the config file (if any)
/// is applied next, then the command-line flags.
ParseOutcome parse_fields(const std::string& name, const std::string& description,
                          const std::vector<Field>& fields, const std::vector<std::string>& args,
                          std::ostream& out, std::ostream& err) {
  ParseOutcome outcome;
  try {
    for (std::size_t i = 0; i < args.size(); ++i) {
      std::string path;
      if (args[i] == "--config" && i + 1 < args.size())
        path = args[i + 1];
      else if (args[i].starts_with("--config="))
        path = args[i].substr(9);
      if (!path.empty()) apply_key_values(fields, read_key_values(read_file(path)));
    }
  } catch (const std::exception& e) {
    fmt::print(err, "{}: {}\n", name, e.what());
    outcome.code = kUsageError;
    return outcome;
  }

  CLI::App app{description, "awwsvm " + name};
  std::string config_path;
  app.add_option("--config", config_path, "flat key=value file; flags override it");
  for (const auto& f : fields) {
    if (f.is_flag)
      app.add_flag_callback("--" + f.name, [&f] { f.set("true"); }, f.help);
    else
      app.add_option_function<std::string>("--" + f.name, f.set, f.help);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return outcome;
  } catch (const CLI::ParseError& e) {
    fmt::print(err, "{}: {}\n", name, e.what());
    outcome.code = kUsageError;
    return outcome;
  } catch (const std::exception& e) {
    fmt::print(err, "{}: {}\n", name, e.what());
    outcome.code = kUsageError;
    return outcome;
  }
  outcome.proceed = true;
  return outcome;
}

std::string dataset_name(const std::string& path) { return fs::path(path).stem().string(); }

void print_report(std::ostream& out, const EvalReport& r, bool verbose) {
  fmt::print(out, "confusion   tp={} fn={} fp={} tn={}\n", r.cm.tp, r.cm.fn, r.cm.fp, r.cm.tn);
  fmt::print(out, "accuracy    {:.4f}\n", r.accuracy);
  fmt::print(out, "precision   {:.4f}{}\n", r.precision, r.degenerate.precision ? " (0/0)" : "");
  fmt::print(out, "recall      {:.4f}{}\n", r.recall, r.degenerate.recall ? " (0/0)" : "");
  fmt::print(out, "specificity {:.4f}{}\n", r.specificity, r.degenerate.specificity ? " (0/0)" : "");
  fmt::print(out, "sensitivity {:.4f}\n", r.sensitivity);
  if (verbose) fmt::print(out, "sensitivity tp/(tp+fp) {:.4f}\n", r.sensitivity_as_printed);
  fmt::print(out, "f1          {:.4f}{}\n", r.f1, r.degenerate.f1 ? " (0/0)" : "");
  fmt::print(out, "g-mean      {:.4f}\n", r.gmean);
}

// ---------------------------------------------------------------- train

int cmd_train(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  cfg.out = default_out_dir();
  const auto fields = train_fields(cfg);
  const auto parsed = parse_fields("train", "Train a linear soft-margin SVM", fields, args, out, err);
  if (!parsed.proceed) return parsed.code;

  try {
    if (cfg.data.empty()) throw Error("missing --data");
    if (!fs::exists(cfg.data)) throw Error(fmt::format("data file not found: '{}'", cfg.data));
    if (!cfg.test_data.empty() && !fs::exists(cfg.test_data))
      throw Error(fmt::format("test data file not found: '{}'", cfg.test_data));
    cfg.train.validate();
    if (cfg.test_data.empty() && !(cfg.split >= 0.0 && cfg.split < 1.0))
      throw Error(fmt::format("split {} outside [0, 1)", cfg.split));

    const Dataset full = read_libsvm_file(cfg.data);
    Dataset train_set;
    Dataset eval_set;
    if (!cfg.test_data.empty()) {
      train_set = full;
      eval_set = read_libsvm_file(cfg.test_data, full.mapping);
    } else if (cfg.split > 0.0) {
      std::tie(train_set, eval_set) = split(full, cfg.split, cfg.train.seed);
    } else {
      train_set = full;
      eval_set = full;
    }

    const auto result = train(train_set, eval_set, cfg.train);

    const fs::path dir(cfg.out);
    fs::create_directories(dir);
    save_model_file((dir / "model.txt").string(), result.model);

    RunRecord rec;
    rec.dataset = dataset_name(cfg.data);
    rec.method = method_name(cfg.train);
    rec.seed = cfg.train.seed;
    rec.history = result.history;
    rec.final_eval = evaluate(result.model, eval_set);
    rec.final_loss = result.history.back().train_loss;
    rec.final_noise = result.history.back().n_noise;
    std::ostringstream csv;
    write_results_csv(csv, std::span<const RunRecord>(&rec, 1));
    write_file(dir / "history.csv", csv.str());
    write_file(dir / "resolved-config.ini", write_key_values(fields));

    if (cfg.verbose) {
      std::ostringstream trace;
      trace << "outer_iter,alpha_min,alpha_mean,alpha_max,n_noise\n";
      for (const auto& h : result.history)
        trace << fmt::format("{},{:.6f},{:.6f},{:.6f},{}\n", h.outer_iter, h.alpha.min, h.alpha.mean,
                             h.alpha.max, h.n_noise);
      write_file(dir / "weights.csv", trace.str());
    }

    fmt::print(out, "method {} on {} (labels {}, weight mode {}, damping={} (gamma))\n", rec.method,
               rec.dataset, full.mapping.to_string(), to_string(cfg.train.objective.weight_mode),
               cfg.train.lambda);
    fmt::print(out, "train {} samples, eval {} samples, noise removed {}\n", train_set.size(),
               eval_set.size(), rec.final_noise);
    print_report(out, *rec.final_eval, cfg.verbose);
    return kOk;
  } catch (const std::exception& e) {
    fmt::print(err, "train: {}\n", e.what());
    return kUsageError;
  }
}

// ----------------------------------------------------------- experiment

struct ExperimentSettings {
  std::string manifest;
  std::string out;
  unsigned jobs = 1;
};

const std::vector<std::string>& all_methods() {
  static const std::vector<std::string> names{"onaq", "aw+onaq", "obfgs", "aw+obfgs", "sgd", "aw+sgd"};
  return names;
}

std::string json_scalar(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  return v.dump();
}

int cmd_experiment(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  ExperimentSettings s;
  s.out = default_out_dir();
  const std::vector<Field> fields{
      string_field("manifest", "JSON manifest of datasets, methods and seeds", s.manifest),
      string_field("out", "output directory (env AWWSVM_OUT)", s.out),
      int_field("jobs", "parallel runs", s.jobs),
  };
  const auto parsed = parse_fields("experiment", "Sweep datasets x methods x seeds", fields, args, out, err);
  if (!parsed.proceed) return parsed.code;

  std::vector<ExperimentDataset> datasets;
  std::vector<ExperimentMethod> methods;
  std::vector<std::uint64_t> seeds{1};
  std::vector<std::pair<std::string, std::string>> load_errors;  // dataset name, message
  try {
    if (s.manifest.empty()) throw Error("missing --manifest");
    const auto manifest = nlohmann::json::parse(read_file(s.manifest));
    const fs::path base = fs::path(s.manifest).parent_path();
    auto resolve = [&](const std::string& p) { return fs::path(p).is_absolute() ? p : (base / p).string(); };

    RunConfig defaults;
    const auto default_fields = train_fields(defaults);
    if (manifest.contains("defaults")) {
      std::map<std::string, std::string> kv;
      for (const auto& [k, v] : manifest.at("defaults").items()) kv[k] = json_scalar(v);
      apply_key_values(default_fields, kv);
    }
    const bool presets = manifest.value("presets", true);
    const double split_fraction = manifest.value("split", 0.2);
    const auto split_seed = manifest.value<std::uint64_t>("split_seed", 1);
    if (manifest.contains("seeds")) seeds = manifest.at("seeds").get<std::vector<std::uint64_t>>();

    if (manifest.contains("datasets")) {
      for (const auto& d : manifest.at("datasets")) {
        const auto train_path = resolve(d.at("train").get<std::string>());
        ExperimentDataset ed;
        ed.name = d.value("name", dataset_name(train_path));
        // A dataset that cannot be loaded fails its cells; the sweep goes on.
        try {
          const Dataset full = read_libsvm_file(train_path);
          if (d.contains("test") && !d.at("test").is_null()) {
            ed.train = full;
            ed.test = read_libsvm_file(resolve(d.at("test").get<std::string>()), full.mapping);
          } else {
            std::tie(ed.train, ed.test) = split(full, d.value("split", split_fraction), split_seed);
          }
          datasets.push_back(std::move(ed));
        } catch (const Error& e) {
          load_errors.emplace_back(ed.name, e.what());
        }
      }
    }

    const auto names = manifest.contains("methods") ? manifest.at("methods").get<std::vector<std::string>>()
                                                    : all_methods();
    for (const auto& n : names) {
      ExperimentMethod m;
      m.name = n;
      m.config = with_method(defaults.train, n);
      if (presets) {
        m.adjust = [](const std::string& dataset, TrainConfig cfg) {
          if (const auto p = preset_config(dataset, cfg.optimizer)) {
            if (p->alpha0) cfg.alpha0 = p->alpha0;
            cfg.outer_iters = p->outer_iters;
            cfg.inner_iters = p->inner_iters;
            cfg.batch_size = p->batch_size;
          }
          return cfg;
        };
      }
      methods.push_back(std::move(m));
    }
  } catch (const std::exception& e) {
    fmt::print(err, "experiment: {}\n", e.what());
    return kUsageError;
  }

  auto records = run_experiment(datasets, methods, seeds, s.jobs);
  for (const auto& [name, message] : load_errors)
    for (const auto& m : methods)
      for (const auto seed : seeds) {
        RunRecord failed;
        failed.dataset = name;
        failed.method = m.name;
        failed.seed = seed;
        failed.error = message;
        records.push_back(std::move(failed));
      }

  try {
    const fs::path dir(s.out);
    fs::create_directories(dir);
    std::ostringstream csv;
    write_results_csv(csv, records);
    write_file(dir / "results.csv", csv.str());
    write_file(dir / "resolved-config.ini", write_key_values(fields));

    const auto summary = summarize_runs(records);
    std::ostringstream scsv;
    scsv << "dataset,method,runs,accuracy,gmean,f1,best\n";
    std::ostringstream table;
    table << fmt::format("{:<14}", "dataset");
    for (const auto& m : methods) table << fmt::format("{:>12}", m.name);
    table << '\n';
    for (const auto& d : datasets) {
      double best = -1.0;
      for (const auto& c : summary)
        if (c.dataset == d.name) best = std::max(best, c.accuracy);
      table << fmt::format("{:<14}", d.name);
      for (const auto& m : methods) {
        const auto it = std::find_if(summary.begin(), summary.end(), [&](const SummaryCell& c) {
          return c.dataset == d.name && c.method == m.name;
        });
        if (it == summary.end()) {
          table << fmt::format("{:>12}", "failed");
          continue;
        }
        const bool is_best = it->accuracy == best;
        table << fmt::format("{:>12}", fmt::format("{:.4f}{}", it->accuracy, is_best ? "*" : " "));
        scsv << fmt::format("{},{},{},{:.6f},{:.6f},{:.6f},{}\n", it->dataset, it->method, it->runs,
                            it->accuracy, it->gmean, it->f1, is_best ? 1 : 0);
      }
      table << '\n';
    }
    write_file(dir / "summary.csv", scsv.str());
    write_file(dir / "summary.txt", table.str());
    out << "mean final accuracy over seeds (* = best in row)\n" << table.str();

    std::ostringstream failures;
    std::size_t n_failed = 0;
    for (const auto& r : records)
      if (!r.ok()) {
        ++n_failed;
        std::string quoted;
        for (const char c : r.error) quoted += c == '"' ? std::string("\"\"") : std::string(1, c);
        failures << fmt::format("{},{},{},\"{}\"\n", r.dataset, r.method, r.seed, quoted);
      }
    if (n_failed > 0) {
      write_file(dir / "failures.csv", "dataset,method,seed,error\n" + failures.str());
      fmt::print(err, "experiment: {} of {} runs failed (see failures.csv)\n", n_failed, records.size());
      return kPartialFailure;
    }
    return kOk;
  } catch (const std::exception& e) {
    fmt::print(err, "experiment: {}\n", e.what());
    return kUsageError;
  }
}

// ---------------------------------------------------------------- stats

struct StatsSettings {
  std::string results;
  std::string metric = "accuracy";
  double q = 0.0;  // 0: take q from the alpha = 0.05 table
  bool lower_is_better = false;
  std::string out;
};

int cmd_stats(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  StatsSettings s;
  s.out = default_out_dir();
  const std::vector<Field> fields{
      string_field("results", "results CSV written by train/experiment", s.results),
      string_field("metric", "column to rank on", s.metric),
      real_field("q", "Nemenyi critical value (default: alpha = 0.05 table)", s.q),
      bool_field("lower-is-better", "rank ascending instead of descending", s.lower_is_better),
      string_field("out", "output directory (env AWWSVM_OUT)", s.out),
  };
  const auto parsed = parse_fields("stats", "Friedman test and Nemenyi critical difference", fields, args, out, err);
  if (!parsed.proceed) return parsed.code;

  try {
    if (s.results.empty()) throw Error("missing --results");
    const auto rows = parse_results_csv(read_file(s.results));

    std::vector<std::string> dataset_order;
    std::vector<std::string> method_order;
    std::map<std::pair<std::string, std::string>, std::pair<double, std::size_t>> cells;
    for (const auto& r : rows) {
      if (r.outer_iter != "final") continue;
      if (std::find(dataset_order.begin(), dataset_order.end(), r.dataset) == dataset_order.end())
        dataset_order.push_back(r.dataset);
      if (std::find(method_order.begin(), method_order.end(), r.method) == method_order.end())
        method_order.push_back(r.method);
      auto& c = cells[{r.dataset, r.method}];
      c.first += r.metric(s.metric);
      c.second += 1;
    }

    std::vector<std::string> complete;
    for (const auto& d : dataset_order) {
      const bool all = std::all_of(method_order.begin(), method_order.end(),
                                   [&](const std::string& m) { return cells.count({d, m}) > 0; });
      if (all)
        complete.push_back(d);
      else
        fmt::print(err, "stats: dropping dataset '{}' (missing methods)\n", d);
    }
    if (method_order.size() < 2 || complete.size() < 2)
      throw Error(fmt::format("need at least 2 methods and 2 datasets with final rows, got {} and {}",
                              method_order.size(), complete.size()));

    const auto n = static_cast<Eigen::Index>(complete.size());
    const auto k = static_cast<Eigen::Index>(method_order.size());
    Eigen::MatrixXd values(n, k);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < k; ++j) {
        const auto& c = cells.at({complete[static_cast<std::size_t>(i)], method_order[static_cast<std::size_t>(j)]});
        values(i, j) = c.first / static_cast<double>(c.second);
      }

    const auto rt = rank_rows(values, !s.lower_is_better);
    const auto fr = friedman(rt);
    double q = s.q;
    if (!(q > 0.0)) {
      const auto tabled = nemenyi_q_005(static_cast<int>(k));
      if (!tabled) throw Error(fmt::format("no tabled q for K={}; pass --q", k));
      q = *tabled;
    }
    const double cd = nemenyi_cd(static_cast<int>(k), static_cast<int>(n), q);
    const auto sig = pairwise_significance(rt, cd);

    std::ostringstream report;
    report << fmt::format("metric {} ({} is better), N={} datasets, K={} methods\n", s.metric,
                          s.lower_is_better ? "lower" : "higher", n, k);
    report << "mean ranks\n";
    for (Eigen::Index j = 0; j < k; ++j)
      report << fmt::format("  {:<12} {:.4f}\n", method_order[static_cast<std::size_t>(j)], rt.mean_ranks(j));
    report << fmt::format("Friedman chi2 = {:.4f}, dof = {}, p = {:.4e}\n", fr.chi2, fr.dof, fr.p_value);
    report << fmt::format("Nemenyi q = {:.3f}, CD = {:.4f}\n", q, cd);
    report << "significant pairs (|R_i - R_j| > CD)\n";
    std::size_t n_sig = 0;
    for (Eigen::Index i = 0; i < k; ++i)
      for (Eigen::Index j = i + 1; j < k; ++j)
        if (sig(i, j)) {
          ++n_sig;
          report << fmt::format("  {} vs {}: {:.4f}\n", method_order[static_cast<std::size_t>(i)],
                                method_order[static_cast<std::size_t>(j)],
                                std::abs(rt.mean_ranks(i) - rt.mean_ranks(j)));
        }
    if (n_sig == 0) report << "  none\n";

    std::ostringstream sig_csv;
    sig_csv << "method";
    for (const auto& m : method_order) sig_csv << ',' << m;
    sig_csv << '\n';
    for (Eigen::Index i = 0; i < k; ++i) {
      sig_csv << method_order[static_cast<std::size_t>(i)];
      for (Eigen::Index j = 0; j < k; ++j) sig_csv << ',' << (sig(i, j) ? 1 : 0);
      sig_csv << '\n';
    }
    std::ostringstream cd_csv;
    cd_csv << "method,mean_rank,cd\n";
    for (Eigen::Index j = 0; j < k; ++j)
      cd_csv << fmt::format("{},{:.6f},{:.6f}\n", method_order[static_cast<std::size_t>(j)], rt.mean_ranks(j), cd);

    const fs::path dir(s.out);
    fs::create_directories(dir);
    write_file(dir / "stats_report.txt", report.str());
    write_file(dir / "significance.csv", sig_csv.str());
    write_file(dir / "cd_diagram.csv", cd_csv.str());
    write_file(dir / "resolved-config.ini", write_key_values(fields));
    out << report.str();
    return kOk;
  } catch (const std::exception& e) {
    fmt::print(err, "stats: {}\n", e.what());
    return kUsageError;
  }
}

// ---------------------------------------------------------------- synth

struct SynthSettings {
  std::size_t n_pos = 425;
  std::size_t n_neg = 75;
  double separation = 3.0;
  double flip = 0.05;
  std::uint64_t seed = 1;
  std::string out;
  std::string file = "synth.libsvm";
};

int cmd_synth(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  SynthSettings s;
  s.out = default_out_dir();
  const std::vector<Field> fields{
      int_field("n-pos", "positive samples before flipping", s.n_pos),
      int_field("n-neg", "negative samples before flipping", s.n_neg),
      real_field("separation", "distance between the cloud centres", s.separation),
      real_field("flip", "fraction of labels inverted, in [0, 0.5)", s.flip),
      int_field("seed", "random seed", s.seed),
      string_field("out", "output directory (env AWWSVM_OUT)", s.out),
      string_field("file", "file name inside the output directory", s.file),
  };
  const auto parsed = parse_fields("synth", "Write a two-Gaussian LIBSVM dataset", fields, args, out, err);
  if (!parsed.proceed) return parsed.code;

  try {
    const auto ds = synth_two_gaussians(s.n_pos, s.n_neg, s.separation, s.flip, s.seed);
    const fs::path dir(s.out);
    fs::create_directories(dir);
    const fs::path target = dir / s.file;
    write_file(target, to_libsvm(ds));
    write_file(dir / "resolved-config.ini", write_key_values(fields));
    fmt::print(out, "wrote {} samples to {} (n_pos={}, n_neg={}, IR={:.2f})\n", ds.size(),
               target.string(), ds.n_pos, ds.n_neg, imbalance_ratio(ds));
    return kOk;
  } catch (const std::exception& e) {
    fmt::print(err, "synth: {}\n", e.what());
    return kUsageError;
  }
}

constexpr const char* kUsage =
    "usage: awwsvm <command> [flags]\n"
    "commands:\n"
    "  train       train one model and write model, history and resolved config\n"
    "  experiment  sweep a manifest of datasets x methods x seeds\n"
    "  stats       Friedman / Nemenyi analysis of a results CSV\n"
    "  synth       write a synthetic two-Gaussian dataset\n"
    "run `awwsvm <command> --help` for flags\n";

}  // namespace

std::vector<Field> train_fields(RunConfig& cfg) {
  TrainConfig& t = cfg.train;
  std::vector<Field> f;
  f.push_back(string_field("data", "training LIBSVM file", cfg.data));
  f.push_back(string_field("test-data", "evaluation LIBSVM file (otherwise split)", cfg.test_data));
  f.push_back(real_field("split", "stratified test fraction when no test file is given", cfg.split));
  f.push_back({"optimizer", "sgd | obfgs | onaq", [&t] { return std::string(to_string(t.optimizer)); },
               [&t](const std::string& v) { t.optimizer = parse_optimizer(v); }});
  f.push_back(bool_field("adaptive", "enable adaptive weights and noise elimination", t.adaptive));
  f.push_back({"weight-mode", "regularizer | hinge",
               [&t] { return std::string(to_string(t.objective.weight_mode)); },
               [&t](const std::string& v) { t.objective.weight_mode = parse_weight_mode(v); }});
  f.push_back({"noise-mode", "signed-side | raw-dot", [&t] { return std::string(to_string(t.noise_mode)); },
               [&t](const std::string& v) { t.noise_mode = parse_noise_mode(v); }});
  f.push_back(real_field("sigma", "AW function sigma", t.sigma));
  f.push_back(real_field("c", "regularization constant C", t.objective.c));
  f.push_back({"alpha0", "initial step size (default 0.1 for sgd, 1 otherwise)",
               [&t] { return fmt::format("{}", t.step_alpha0()); },
               [&t](const std::string& v) { t.alpha0 = parse_value<double>("alpha0", v); }});
  f.push_back(real_field("tau", "tau of the tau/(tau+k) schedule", t.tau));
  f.push_back(real_field("mu", "momentum of onaq", t.mu));
  f.push_back(real_field("lambda", "curvature damping (gamma)", t.lambda));
  f.push_back(real_field("h-scale", "initial inverse Hessian scale", t.h_scale));
  f.push_back(int_field("outer-iters", "weight-update rounds", t.outer_iters));
  f.push_back(int_field("inner-iters", "optimizer steps per round", t.inner_iters));
  f.push_back(int_field("batch-size", "minibatch size", t.batch_size));
  f.push_back(int_field("seed", "random seed (sampling and split)", t.seed));
  f.push_back(int_field("jobs", "worker threads", cfg.jobs));
  f.push_back(string_field("out", "output directory (env AWWSVM_OUT)", cfg.out));
  f.push_back(bool_field("verbose", "write the weight trace and extra metrics", cfg.verbose));
  return f;
}

std::map<std::string, std::string> read_key_values(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(line_no, fmt::format("expected key=value, got '{}'", line));
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

std::string write_key_values(const std::vector<Field>& fields) {
  std::string out;
  for (const auto& f : fields) out += fmt::format("{}={}\n", f.name, f.get());
  return out;
}

void apply_key_values(const std::vector<Field>& fields, const std::map<std::string, std::string>& kv) {
  for (const auto& [key, value] : kv) {
    const auto it = std::find_if(fields.begin(), fields.end(), [&](const Field& f) { return f.name == key; });
    if (it == fields.end()) throw Error(fmt::format("unknown config key '{}'", key));
    it->set(value);
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  if (args.empty() || args.front() == "--help" || args.front() == "-h") {
    (args.empty() ? err : out) << kUsage;
    return args.empty() ? kUsageError : kOk;
  }
  const std::vector<std::string> rest(args.begin() + 1, args.end());
  const auto& cmd = args.front();
  if (cmd == "train") return cmd_train(rest, out, err);
  if (cmd == "experiment") return cmd_experiment(rest, out, err);
  if (cmd == "stats") return cmd_stats(rest, out, err);
  if (cmd == "synth") return cmd_synth(rest, out, err);
  fmt::print(err, "unknown command '{}'\n{}", cmd, kUsage);
  return kUsageError;
}

}  // namespace awwsvm::cli
