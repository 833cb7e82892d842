#pragma once

#include <map>
#include <string>
#include <vector>

#include "cdalg/levels.hpp"

namespace cdalg {

enum class TestVerdict { Consistent, Violated, Inconclusive };
std::string_view to_string(TestVerdict v) noexcept;

struct PropTest {
  std::string prop;
  int k = 0;
  std::string lhs;  // "statement = value"
  std::string rhs;
  TestVerdict verdict = TestVerdict::Inconclusive;
  std::string reason;
};

/// Ids accepted by run_test: 31i 31ii 31iii 32a 32c 33 34 35 35L 36 37 37L 38 39.
const std::vector<std::string>& known_props();
bool is_known_prop(const std::string& id);

/// Evaluates isotropy verdicts once per form text.
class InstanceContext {
 public:
  explicit InstanceContext(const LevelReport& report) : report_(report) {}

  const LevelReport& report() const { return report_; }
  const Algebra& algebra() const { return report_.algebra; }
  Verdict isotropy(const DiagonalForm& phi);
  Answer represents_minus_one(const DiagonalForm& phi);

 private:
  const LevelReport& report_;
  std::map<std::string, Verdict> iso_cache_;
  std::map<std::string, Answer> rep_cache_;
};

/// Evaluates one statement on one instance. k-independent statements (36)
/// ignore k.
PropTest run_test(const std::string& prop, InstanceContext& ctx, int k);

struct SweepSpec {
  std::vector<std::string> props;
  std::vector<Field> fields;
  std::vector<int> doublings;
  /// Each gamma coordinate ranges over these expressions (e.g. "1", "-2").
  std::vector<std::string> gamma_values;
  /// When set, the only gamma vector per (field, t) with matching length.
  std::vector<std::string> fixed_gammas;
  int k_min = 0;
  int k_max = 0;
  bool division_only = false;
  SearchOptions search;
  unsigned workers = 1;
};

struct InstanceReport {
  Field field;
  std::vector<Element> gammas;
  LevelReport levels;
  std::vector<PropTest> tests;
  std::string reproduce;
};

struct SweepReport {
  std::vector<InstanceReport> instances;
  std::size_t consistent = 0;
  std::size_t violated = 0;
  std::size_t inconclusive = 0;
};

SweepReport sweep(const SweepSpec& spec);

/// CLI line that re-runs the selected statements on a single instance.
std::string reproduction_command(const std::vector<std::string>& props, const Field& field,
                                 const std::vector<Element>& gammas, int k);

}  // namespace cdalg
