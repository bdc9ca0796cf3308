#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace kspave::cli {

enum ExitCode : int { kValid = 0, kInvalid = 1, kUsage = 2 };

struct RunConfig {
  std::string subcommand;
  std::vector<std::string> inputs;
  std::optional<std::string> certificate;
  std::optional<double> epsilon;
  std::optional<std::size_t> r;
  std::optional<double> eta;
  std::optional<double> theta;
  std::optional<std::size_t> freq_window;
  std::uint64_t seed = 0;
  std::size_t parallelism = 1;
  std::optional<std::size_t> budget_restarts;
  std::string emit = "json";
  std::optional<std::string> output;

  // gen
  std::string kind;
  std::optional<std::size_t> dim;
  std::optional<std::size_t> m;
  bool complex_field = false;

  std::string sign = "plus";
  std::optional<double> a;
  std::optional<std::size_t> n;
  std::vector<std::int64_t> values;
};

/// Parses argv into a config. On --help or a usage error, returns the exit
/// code to use instead (0 for help, 2 for errors) after printing to `err`.
struct ParseResult {
  std::optional<RunConfig> config;
  int exit_code = kValid;
};
ParseResult parse_args(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Runs one subcommand. Results go to --output if set, else to `out`;
/// diagnostics go to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

int main(int argc, const char* const* argv);

}  // namespace kspave::cli
