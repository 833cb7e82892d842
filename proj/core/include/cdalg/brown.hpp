#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cdalg/algebra.hpp"
#include "cdalg/isotropy.hpp"

namespace cdalg {

/// A_t over F_t = K(X_1..X_t) with gammas (X_1, ..., X_t).
struct BrownInstance {
  int t = 0;
  Field base;
  Field field;
  Algebra algebra;
};

inline constexpr int kMaxBrownDoublings = 4;

/// 1 <= t <= 4 and base is Q or F_p; otherwise DimensionTooLarge / WrongField.
BrownInstance build_brown(int t, const Field& base);

struct SamplerOptions {
  std::size_t samples = 1000;
  /// Per-variable exponent bound of each polynomial coefficient.
  unsigned degree = 2;
  std::uint64_t seed = 7;
  /// Stop at the first zero product.
  bool stop_at_first = false;
  unsigned workers = 1;
};

/// Nonzero element whose coordinates are polynomials with exponents <= degree
/// in every variable and integer coefficients uniform in {-2..2}. Over Q or F_p
/// the coordinates are just such integers.
CDElement sample_element(const Algebra& a, unsigned degree, std::uint64_t seed, std::uint64_t index);

struct ZeroDivisorReport {
  std::size_t samples = 0;
  std::size_t counterexamples = 0;
  /// 0-based index of the first zero product and the pair itself.
  std::optional<std::size_t> first_index;
  std::optional<std::pair<CDElement, CDElement>> first_pair;
};

/// Draws pairs (x, y) of nonzero elements and counts zero products. Pair i is
/// a pure function of (seed, i), so the report does not depend on `workers`.
ZeroDivisorReport zero_divisor_sample_test(const Algebra& a, const SamplerOptions& options);

/// Residue-splitting certificate for the norm form <<-X_1, ..., -X_t>>.
IsotropyResult division_certificate(const BrownInstance& b);

/// Lowest X_t-orders of a_3, b_3, c_3, d_3 after clearing denominators, where
/// x = a + b v_t and y = c + d v_t.
struct ParityOrders {
  int m = 0;
  int n = 0;
  int p = 0;
  int r = 0;
};

/// Requires a, b, c, d all nonzero (PreconditionViolation otherwise).
ParityOrders parity_orders(const CDElement& x, const CDElement& y);

struct Refutation {
  /// "i".."iv" for a vanishing half, "parity" otherwise.
  std::string case_id;
  std::string explanation;
  std::optional<ParityOrders> orders;
  /// Where the argument breaks on this pair (empty if it goes through).
  std::string broken_step;
};

/// Runs the valuation-parity argument on a claimed zero product xy = 0.
/// x = 0 or y = 0: PreconditionViolation. xy != 0: ProductNotZero.
Refutation valuation_parity_refuter(const Algebra& a, const CDElement& x, const CDElement& y);
Refutation valuation_parity_refuter(const BrownInstance& b, const CDElement& x, const CDElement& y);

}  // namespace cdalg
