#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace cdalg {

inline constexpr int kMaxVariables = 8;

/// Exponent vector of a monomial in X_1..X_m. Compared lexicographically with
/// X_1 most significant, which is the term order used everywhere.
struct Monomial {
  std::array<std::uint16_t, kMaxVariables> exp{};

  auto operator<=>(const Monomial&) const = default;
  bool operator==(const Monomial&) const = default;

  unsigned total_degree() const;
  bool divides(const Monomial& other) const;
  Monomial operator*(const Monomial& other) const;
  /// Requires divides(other).
  Monomial quotient(const Monomial& divisor) const;
};

/// Scalar arithmetic of the coefficient field: rationals when p == 0, else the
/// prime field F_p with residues stored as integers in [0, p).
namespace coeff {
mpq_class reduce(mpq_class v, std::uint64_t p);
mpq_class inverse(const mpq_class& v, std::uint64_t p);
std::optional<mpq_class> sqrt(const mpq_class& v, std::uint64_t p);
}  // namespace coeff

/// Sparse multivariate polynomial over Q or F_p. Terms are kept sorted by
/// descending monomial with no zero coefficients, so equality is structural.
class Polynomial {
 public:
  struct Term {
    Monomial mono;
    mpq_class coeff;
    bool operator==(const Term&) const = default;
  };

  Polynomial() = default;
  Polynomial(std::uint64_t p, int nvars) : p_(p), nvars_(nvars) {}

  static Polynomial constant(std::uint64_t p, int nvars, const mpq_class& c);
  static Polynomial variable(std::uint64_t p, int nvars, int index);
  static Polynomial monomial(std::uint64_t p, int nvars, const Monomial& m, const mpq_class& c);

  std::uint64_t modulus() const { return p_; }
  int num_vars() const { return nvars_; }
  const std::vector<Term>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_one() const;
  /// Requires !is_zero().
  const Term& leading() const { return terms_.front(); }
  const mpq_class& leading_coeff() const { return terms_.front().coeff; }

  unsigned degree_in(int var) const;
  /// Lowest exponent of var over all terms. Requires !is_zero().
  unsigned min_exponent(int var) const;
  /// Largest variable index occurring with positive degree, or -1.
  int highest_variable() const;

  Polynomial operator-() const;
  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial scaled(const mpq_class& c) const;
  Polynomial times_monomial(const Monomial& m, const mpq_class& c) const;

  bool operator==(const Polynomial& o) const {
    return p_ == o.p_ && nvars_ == o.nvars_ && terms_ == o.terms_;
  }

  /// Quotient when `divisor` divides *this exactly, otherwise nullopt.
  std::optional<Polynomial> exact_div(const Polynomial& divisor) const;
  /// Divides by the leading coefficient; zero stays zero.
  Polynomial monic() const;
  /// Square root if *this is a perfect square in K[X], otherwise nullopt.
  std::optional<Polynomial> sqrt() const;

  std::string to_string() const;

 private:
  void normalize();

  std::uint64_t p_ = 0;
  int nvars_ = 0;
  std::vector<Term> terms_;
};

/// Monic greatest common divisor (zero only when both inputs are zero).
Polynomial gcd(const Polynomial& a, const Polynomial& b);

}  // namespace cdalg
