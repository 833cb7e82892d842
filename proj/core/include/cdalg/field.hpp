#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include <gmpxx.h>

#include "cdalg/polynomial.hpp"

namespace cdalg {

enum class FieldKind { Rationals, PrimeField, RationalFunctionField };

/// One of Q, F_p (p an odd prime) or K(X_1..X_m) with K one of the former two.
/// Characteristic 2 is rejected at construction.
class Field {
 public:
  Field() = default;

  static Field rationals() { return Field(0, 0); }
  static Field prime(std::uint64_t p);
  static Field function_field(const Field& base, int nvars);
  /// Accepts "Q", "Fp:5", "Q(X1..X3)", "Fp:3(X1..X2)" and "Q(X1)".
  static Field parse(std::string_view text);

  FieldKind kind() const;
  /// 0 for the rationals and their function fields.
  std::uint64_t characteristic() const { return p_; }
  int num_vars() const { return nvars_; }
  bool is_function_field() const { return nvars_ > 0; }
  /// The constant field (itself when not a function field).
  Field base() const { return Field(p_, 0); }

  std::string to_string() const;

  bool operator==(const Field&) const = default;

 private:
  Field(std::uint64_t p, int nvars) : p_(p), nvars_(nvars) {}

  std::uint64_t p_ = 0;
  int nvars_ = 0;
};

/// Reduced quotient num/den with gcd(num, den) = 1 and den monic in the lex
/// term order (X_1 > X_2 > ...). That normalization makes equality structural.
struct RationalFunction {
  Polynomial num;
  Polynomial den;
  bool operator==(const RationalFunction&) const = default;
};

/// Immutable scalar of a Field in canonical form.
class Element {
 public:
  Element() = default;

  static Element zero(const Field& f);
  static Element one(const Field& f);
  static Element from_int(const Field& f, long v);
  static Element from_rational(const Field& f, const mpq_class& v);
  /// X_{index+1} of a function field.
  static Element variable(const Field& f, int index);
  static Element from_polynomial(const Field& f, const Polynomial& num);
  /// Normalizes num/den; throws DivisionByZero when den is zero.
  static Element from_fraction(const Field& f, const Polynomial& num, const Polynomial& den);
  /// Parses an arithmetic expression over integers and X1..Xm with
  /// + - * / ^ and parentheses, e.g. "-3/2", "X1^2/(1+X1)".
  static Element parse(const Field& f, std::string_view text);

  const Field& field() const { return field_; }

  bool is_zero() const;
  bool is_one() const;

  Element operator+(const Element& o) const;
  Element operator-(const Element& o) const;
  Element operator*(const Element& o) const;
  Element operator/(const Element& o) const;
  Element operator-() const;
  Element inverse() const;
  Element pow(unsigned long e) const;

  bool operator==(const Element& o) const;
  bool operator!=(const Element& o) const { return !(*this == o); }

  /// Only meaningful for the matching representation.
  const mpq_class& rational() const { return std::get<mpq_class>(value_); }
  std::uint64_t residue() const { return std::get<std::uint64_t>(value_); }
  const RationalFunction& rational_function() const { return std::get<RationalFunction>(value_); }

  /// Canonical text: "-3/2", "4", "X1^2 + 1", "(X1)/(X1 + 1)".
  std::string to_string() const;

 private:
  using Value = std::variant<mpq_class, std::uint64_t, RationalFunction>;
  Element(Field f, Value v) : field_(f), value_(std::move(v)) {}

  void require_same_field(const Element& o) const;

  Field field_;
  Value value_{mpq_class(0)};
};

enum class ArithOp { Add, Sub, Mul, Div };

Element arith(const Element& a, const Element& b, ArithOp op);

/// Root r with r*r == a, if a is a square in its field. For F_p the returned
/// root is the smaller residue representative.
std::optional<Element> is_square(const Element& a);

/// var-adic valuation (var is 0-based) of a nonzero rational-function element.
int valuation(const Element& a, int var);

/// Embeds a base-field scalar (Q or F_p) into a function field over it.
Element embed(const Element& base_scalar, const Field& target);

}  // namespace cdalg
