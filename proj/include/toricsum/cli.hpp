#pragma once

#include "toricsum/numeric.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace toricsum::cli {

enum class Format { kHuman, kJson, kCsv };

enum ExitCode : int {
  kOk = 0,
  kAssertionFailed = 1,  // a hard check (nu lower bound, convexity, formula verdict) failed
  kUsageError = 2,       // bad input or a budget error
};

struct RunConfig {
  std::string command;
  std::string polynomial;
  std::optional<int> dimension;
  std::vector<std::uint64_t> primes;
  std::vector<std::int64_t> powers;
  Rational eps = Rational(1, 100'000'000);
  std::optional<std::int64_t> T;
  std::uint64_t budget = 200'000'000;
  unsigned workers = 0;  // 0: all available cores
  Format format = Format::kHuman;
  std::optional<std::string> out_file;
  std::uint64_t seed = 1;
  std::optional<int> face_id;
  std::optional<int> critical_dim;
  int trials = 200;
  double ceiling = 100.0;
};

/// "a..b", "a,b,c" or "a".
std::vector<std::int64_t> parse_int_list(std::string_view text);
/// Like parse_int_list, but a range "a..b" expands to the primes in it.
std::vector<std::uint64_t> parse_prime_list(std::string_view text);

int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv and runs; returns the process exit code.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace toricsum::cli
