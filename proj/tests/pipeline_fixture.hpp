// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "fdband/ingest.hpp"

#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <unistd.h>

namespace fdband::testing {

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("fdband_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
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
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void spit(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << text;
}

/// Seasonal p = 5 truth with a small trend, sampled every day.
inline SyntheticConfig seasonal_config(int years, std::uint64_t seed, Region region = Region::arctic) {
  SyntheticConfig c;
  c.coefficients = {10.0, 1.5, 3.5, 0.3, -0.6};
  for (int i = 0; i < years; ++i) c.year_offsets.push_back(-0.04 * i);
  c.first_year = 1979;
  c.noise_sd = 0.15;
  c.seed = seed;
  c.region = region;
  return c;
}

}  // namespace fdband::testing
