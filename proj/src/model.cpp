#include "awwsvm/model.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

namespace awwsvm {

namespace {

constexpr const char* kMagic = "awwsvm-linear-model 1";

std::string expect_key(std::istream& is, const std::string& key) {
  std::string line;
  if (!std::getline(is, line)) throw ParseError(0, fmt::format("model: missing '{}'", key));
  if (line.rfind(key + " ", 0) != 0)
    throw ParseError(0, fmt::format("model: expected '{}', got '{}'", key, line));
  return line.substr(key.size() + 1);
}

}  // namespace

void save_model(std::ostream& os, const LinearModel& m) {
  os << kMagic << '\n';
  os << "dim " << m.dim() << '\n';
  os << "bias augmented-last\n";
  os << "labels " << m.mapping.negative << ' ' << m.mapping.positive << '\n';
  os << "weights\n";
  for (Eigen::Index i = 0; i < m.weights.size(); ++i) os << fmt::format("{}\n", m.weights(i));
}

LinearModel load_model(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != kMagic) throw ParseError(0, "model: bad header");
  const auto dim_text = expect_key(is, "dim");
  int dim = 0;
  if (std::from_chars(dim_text.data(), dim_text.data() + dim_text.size(), dim).ec != std::errc{} ||
      dim < 0)
    throw ParseError(0, "model: bad dim");
  if (expect_key(is, "bias") != "augmented-last") throw ParseError(0, "model: unknown bias convention");
  std::istringstream labels(expect_key(is, "labels"));
  LabelMapping mapping;
  if (!(labels >> mapping.negative >> mapping.positive)) throw ParseError(0, "model: bad labels");
  if (!std::getline(is, line) || line != "weights") throw ParseError(0, "model: missing weights");

  LinearModel m(dim, mapping);
  for (Eigen::Index i = 0; i <= dim; ++i) {
    if (!std::getline(is, line)) throw ParseError(0, "model: truncated weights");
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(line.data(), line.data() + line.size(), v);
    if (ec != std::errc{} || ptr != line.data() + line.size())
      throw ParseError(0, fmt::format("model: bad weight '{}'", line));
    m.weights(i) = v;
  }
  return m;
}

void save_model_file(const std::string& path, const LinearModel& m) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(fmt::format("cannot write '{}'", path));
  save_model(os, m);
}

LinearModel load_model_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error(fmt::format("cannot open '{}'", path));
  return load_model(is);
}

}  // namespace awwsvm
