#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cdalg/algebra.hpp"
#include "cdalg/forms.hpp"
#include "cdalg/isotropy.hpp"

namespace cdalg {

/// A level or sublevel value. AtMost means a witness of that length was found
/// but shorter ones could not be excluded within the budget.
struct LevelValue {
  enum class Kind { Exact, AtMost, Infinite, Unknown };
  Kind kind = Kind::Unknown;
  unsigned n = 0;

  static LevelValue exact(unsigned n) { return {Kind::Exact, n}; }
  static LevelValue at_most(unsigned n) { return {Kind::AtMost, n}; }
  static LevelValue infinite() { return {Kind::Infinite, 0}; }
  static LevelValue unknown() { return {Kind::Unknown, 0}; }

  bool is_exact() const { return kind == Kind::Exact; }
  bool operator==(const LevelValue&) const = default;
  std::string to_string() const;
};

struct BoundEntry {
  std::string prop;
  DiagonalForm form;
  IsotropyResult result;
  std::string implied;  // e.g. "s <= 2", empty when nothing follows
};

enum class DivisionStatus { Division, NonDivision, Undetermined };
std::string_view to_string(DivisionStatus d) noexcept;

struct DivisionLabel {
  DivisionStatus status = DivisionStatus::Undetermined;
  std::string reason;
  /// Zero divisor pair x * y = 0 for NonDivision.
  std::optional<std::pair<CDElement, CDElement>> zero_divisors;
};

/// Labels A via isotropy of its norm form: an isotropic vector x gives
/// x * conj(x) = n(x) = 0; anisotropic norm forms make A a division algebra
/// for t <= 3 (composition algebras) and leave it undetermined beyond.
DivisionLabel division_label(const Algebra& a);

struct SearchOptions {
  unsigned max_n = 7;
  /// Rationals: coordinates d^{-1} v with v in [-height, height]^q, 1 <= d <= height.
  unsigned height = 2;
  /// Cap on the number of algebra elements enumerated.
  std::uint64_t max_elements = 1U << 22;
  /// Cap on sumset work (pairs combined).
  std::uint64_t work_budget = 50'000'000;
};

struct SearchOutcome {
  LevelValue value;
  /// Level: y_1..y_n with sum y_i^2 = -1. Sublevel: y_1..y_{n+1}, all y_i^2 != 0, sum 0.
  std::vector<CDElement> witness;
  std::string method;
  std::string note;
};

/// -1 as a sum of squares in A. Over F_p the search is exhaustive; over Q it
/// is bounded by `height`; over function fields only s = 1 is decided.
SearchOutcome level_search(const Algebra& a, const SearchOptions& options = {});

/// 0 as a sum of n + 1 nonzero squares.
SearchOutcome sublevel_search(const Algebra& a, const SearchOptions& options = {});

/// Level of the field itself (F_p by exhaustive search, Q is infinite).
LevelValue level_field(const Field& k, unsigned cap = 8);

/// If <1> + n x T_P is isotropic then s(A) <= n.
std::optional<BoundEntry> bound_31iii(const Algebra& a, unsigned n);

struct LevelReport {
  Algebra algebra;
  LevelValue level;
  LevelValue sublevel;
  std::string method;  // exhaustive-search, bounded-search or proposition-bound
  std::vector<CDElement> level_witness;
  std::vector<CDElement> sublevel_witness;
  std::vector<BoundEntry> bounds_trace;
  DivisionLabel division;
  std::vector<std::string> notes;
};

LevelReport compute_levels(const Algebra& a, const SearchOptions& options = {});

/// sum y_i^2 == -1 exactly.
bool check_level_witness(const std::vector<CDElement>& y);
/// sum y_i^2 == 0 with every y_i^2 != 0 and at least two terms.
bool check_sublevel_witness(const std::vector<CDElement>& y);

/// Sum of n copies of T_P, optionally preceded by m copies of <1>.
DiagonalForm ones_plus_multiple(const Algebra& a, std::size_t ones_count, std::size_t tp_copies);

}  // namespace cdalg
