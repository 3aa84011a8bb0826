#pragma once

#include <filesystem>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include <unistd.h>

#include "awwsvm/dataset.hpp"

namespace awwsvm::test_support {

/// Dense coordinates become features 1..n; zeros are skipped.
inline Sample dense_sample(std::initializer_list<double> x, int label) {
  Sample s;
  s.label = label;
  std::int32_t i = 1;
  for (const double v : x) {
    if (v != 0.0) s.features.push_back({i, v});
    ++i;
  }
  return s;
}

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
public:
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("awwsvm-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::string operator/(const std::string& name) const { return (path_ / name).string(); }

private:
  std::filesystem::path path_;
};

}  // namespace awwsvm::test_support
