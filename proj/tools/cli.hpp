#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cdalg/serialize.hpp"

namespace cdalg::cli {

struct RunConfig {
  std::string command;  // algebra, forms, isotropy, level, sweep, brown
  std::string field = "Q";
  std::vector<std::string> gammas;
  std::string form;

  // forms
  std::vector<std::string> pfister;
  std::string orth;
  std::string tensor;
  unsigned multiple = 1;
  std::string scale;
  bool pure = false;

  // isotropy
  std::string represents;
  unsigned bruteforce_height = 0;

  // level / sweep budgets
  unsigned max_n = 7;
  unsigned height = 2;
  std::vector<std::string> props;
  int k_min = 0;
  int k_max = 2;

  // sweep
  std::vector<std::string> fields;
  std::vector<int> doublings;
  std::vector<std::string> gamma_values{"1", "-1", "2", "-2"};
  bool division_only = false;
  unsigned workers = 1;

  // brown
  int t = 2;
  std::string base = "Q";
  std::size_t samples = 1000;
  unsigned degree = 2;
  std::uint64_t seed = 7;

  std::string output;  // empty: stdout
};

/// Thrown by parse_config when --help was requested; what() holds the text.
struct HelpRequested : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Parses argv (argv[0] is the program name). Options may also come from a
/// TOML/INI file given with --config. Throws Error(ParseError) naming the
/// offending token.
RunConfig parse_config(int argc, const char* const* argv);

struct Outcome {
  Json report;
  int exit_code = 0;
};

/// Runs the configured command.
Outcome run(const RunConfig& config);

/// Writes dump(report) to path (stdout when empty). Throws Error(IOError).
void emit_report(const Json& report, const std::string& path);

/// Exit codes: 0 complete, 2 some statement violated, 3 inconclusive only.
int exit_code_for(const SweepReport& r);

}  // namespace cdalg::cli
