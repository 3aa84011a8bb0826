#pragma once

#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "awwsvm/trainer.hpp"

namespace awwsvm::cli {

/// Exit codes shared by all subcommands.
inline constexpr int kOk = 0;
inline constexpr int kPartialFailure = 1;
inline constexpr int kUsageError = 2;

/// Everything a `train` run needs. Serialized as flat `key=value` lines whose
/// keys are the long flag names without dashes (`outer-iters=10`).
struct RunConfig {
  TrainConfig train;
  std::string data;
  std::string test_data;
  double split = 0.2;  // used when no test file is given; 0 evaluates on the training data
  std::string out = ".";
  unsigned jobs = 1;
  bool verbose = false;
};

/// A named setting with string conversion both ways.
struct Field {
  std::string name;
  std::string help;
  std::function<std::string()> get;
  std::function<void(const std::string&)> set;
  bool is_flag = false;
};

std::vector<Field> train_fields(RunConfig& cfg);

/// `key=value` lines; `#` comments and blank lines ignored. Throws on
/// malformed lines.
std::map<std::string, std::string> read_key_values(const std::string& text);
std::string write_key_values(const std::vector<Field>& fields);

/// Applies a config map through the fields; unknown keys throw.
void apply_key_values(const std::vector<Field>& fields, const std::map<std::string, std::string>& kv);

/// Entry point: `awwsvm <train|experiment|stats|synth> [flags]`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace awwsvm::cli
