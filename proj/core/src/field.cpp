#include "cdalg/field.hpp"

#include <cctype>
#include <charconv>

#include "cdalg/errors.hpp"
#include "cdalg/modular.hpp"

namespace cdalg {

Field Field::prime(std::uint64_t p) {
  if (p == 2) throw Error(ErrorCode::InvalidField, "characteristic 2 is not supported");
  if (!modular::is_prime(p)) throw Error(ErrorCode::InvalidField, std::to_string(p) + " is not an odd prime");
  return Field(p, 0);
}

Field Field::function_field(const Field& base, int nvars) {
  if (base.is_function_field()) throw Error(ErrorCode::InvalidField, "nested function fields are not supported");
  if (nvars < 1 || nvars > kMaxVariables) {
    throw Error(ErrorCode::InvalidField, "indeterminate count must be in 1.." + std::to_string(kMaxVariables));
  }
  return Field(base.p_, nvars);
}

namespace {

bool parse_uint(std::string_view s, std::uint64_t& out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

[[noreturn]] void bad_field(std::string_view text, const std::string& why) {
  throw Error(ErrorCode::ParseError, "field '" + std::string(text) + "': " + why);
}

}  // namespace

Field Field::parse(std::string_view text) {
  std::string_view head = text;
  std::string_view vars;
  if (const auto open = text.find('('); open != std::string_view::npos) {
    if (text.back() != ')') bad_field(text, "missing ')'");
    head = text.substr(0, open);
    vars = text.substr(open + 1, text.size() - open - 2);
  }

  Field base;
  if (head == "Q") {
    base = rationals();
  } else if (head.starts_with("Fp:")) {
    std::uint64_t p = 0;
    if (!parse_uint(head.substr(3), p)) bad_field(text, "expected Fp:<prime>");
    try {
      base = prime(p);
    } catch (const Error& e) {
      bad_field(text, e.what());
    }
  } else {
    bad_field(text, "expected Q or Fp:<prime>");
  }
  if (vars.empty()) {
    if (head.size() != text.size()) bad_field(text, "empty indeterminate list");
    return base;
  }

  // "X1..Xm" or "X1"
  std::uint64_t first = 0;
  std::uint64_t last = 0;
  if (const auto dots = vars.find(".."); dots != std::string_view::npos) {
    const auto lo = vars.substr(0, dots);
    const auto hi = vars.substr(dots + 2);
    if (!lo.starts_with('X') || !hi.starts_with('X') || !parse_uint(lo.substr(1), first) ||
        !parse_uint(hi.substr(1), last)) {
      bad_field(text, "expected (X1..Xm)");
    }
  } else {
    if (!vars.starts_with('X') || !parse_uint(vars.substr(1), first)) bad_field(text, "expected (X1..Xm)");
    last = first;
  }
  if (first != 1 || last < 1) bad_field(text, "indeterminates must be X1..Xm");
  if (last > static_cast<std::uint64_t>(kMaxVariables)) bad_field(text, "too many indeterminates");
  return function_field(base, static_cast<int>(last));
}

FieldKind Field::kind() const {
  if (nvars_ > 0) return FieldKind::RationalFunctionField;
  return p_ == 0 ? FieldKind::Rationals : FieldKind::PrimeField;
}

std::string Field::to_string() const {
  std::string s = p_ == 0 ? "Q" : "Fp:" + std::to_string(p_);
  if (nvars_ == 1) s += "(X1)";
  if (nvars_ > 1) s += "(X1..X" + std::to_string(nvars_) + ")";
  return s;
}

// ---------------------------------------------------------------------------

Element Element::zero(const Field& f) { return from_int(f, 0); }
Element Element::one(const Field& f) { return from_int(f, 1); }

Element Element::from_int(const Field& f, long v) {
  switch (f.kind()) {
    case FieldKind::Rationals:
      return Element(f, mpq_class(v));
    case FieldKind::PrimeField:
      return Element(f, modular::reduce(v, f.characteristic()));
    case FieldKind::RationalFunctionField:
      break;
  }
  return from_rational(f, mpq_class(v));
}

Element Element::from_rational(const Field& f, const mpq_class& v) {
  switch (f.kind()) {
    case FieldKind::Rationals: {
      mpq_class c = v;
      if (mpz_cmp_ui(c.get_den_mpz_t(), 1) != 0) c.canonicalize();
      return Element(f, std::move(c));
    }
    case FieldKind::PrimeField: {
      const mpq_class r = coeff::reduce(v, f.characteristic());
      return Element(f, r == 0 ? std::uint64_t{0} : static_cast<std::uint64_t>(r.get_num().get_ui()));
    }
    case FieldKind::RationalFunctionField:
      return from_polynomial(f, Polynomial::constant(f.characteristic(), f.num_vars(), v));
  }
  return {};
}

Element Element::variable(const Field& f, int index) {
  if (!f.is_function_field()) throw Error(ErrorCode::WrongField, "variables exist only in function fields");
  return from_polynomial(f, Polynomial::variable(f.characteristic(), f.num_vars(), index));
}

Element Element::from_polynomial(const Field& f, const Polynomial& num) {
  return Element(f, RationalFunction{num, Polynomial::constant(f.characteristic(), f.num_vars(), 1)});
}

Element Element::from_fraction(const Field& f, const Polynomial& num, const Polynomial& den) {
  if (den.is_zero()) throw Error(ErrorCode::DivisionByZero, "rational function with zero denominator");
  const std::uint64_t p = f.characteristic();
  const int m = f.num_vars();
  if (num.is_zero()) return zero(f);
  if (den.is_constant()) {
    return Element(f, RationalFunction{num.scaled(coeff::inverse(den.leading_coeff(), p)),
                                       Polynomial::constant(p, m, 1)});
  }
  const Polynomial g = gcd(num, den);
  Polynomial n = g.is_one() ? num : *num.exact_div(g);
  Polynomial d = g.is_one() ? den : *den.exact_div(g);
  const mpq_class lc_inv = coeff::inverse(d.leading_coeff(), p);
  return Element(f, RationalFunction{n.scaled(lc_inv), d.scaled(lc_inv)});
}

bool Element::is_zero() const {
  return std::visit(
      [](const auto& v) -> bool {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, RationalFunction>) {
          return v.num.is_zero();
        } else {
          return v == 0;
        }
      },
      value_);
}

bool Element::is_one() const { return *this == one(field_); }

void Element::require_same_field(const Element& o) const {
  if (!(field_ == o.field_)) {
    throw Error(ErrorCode::FieldMismatch, field_.to_string() + " vs " + o.field_.to_string());
  }
}

Element Element::operator+(const Element& o) const {
  require_same_field(o);
  const std::uint64_t p = field_.characteristic();
  switch (field_.kind()) {
    case FieldKind::Rationals: return Element(field_, mpq_class(rational() + o.rational()));
    case FieldKind::PrimeField: return Element(field_, modular::add(residue(), o.residue(), p));
    case FieldKind::RationalFunctionField: {
      const auto& a = rational_function();
      const auto& b = o.rational_function();
      if (a.den == b.den) return from_fraction(field_, a.num + b.num, a.den);
      return from_fraction(field_, a.num * b.den + b.num * a.den, a.den * b.den);
    }
  }
  return {};
}

Element Element::operator-() const {
  const std::uint64_t p = field_.characteristic();
  switch (field_.kind()) {
    case FieldKind::Rationals: return Element(field_, mpq_class(-rational()));
    case FieldKind::PrimeField: return Element(field_, modular::neg(residue(), p));
    case FieldKind::RationalFunctionField:
      return Element(field_, RationalFunction{-rational_function().num, rational_function().den});
  }
  return {};
}

Element Element::operator-(const Element& o) const {
  require_same_field(o);
  return *this + (-o);
}

Element Element::operator*(const Element& o) const {
  require_same_field(o);
  const std::uint64_t p = field_.characteristic();
  switch (field_.kind()) {
    case FieldKind::Rationals: return Element(field_, mpq_class(rational() * o.rational()));
    case FieldKind::PrimeField: return Element(field_, modular::mul(residue(), o.residue(), p));
    case FieldKind::RationalFunctionField: {
      const auto& a = rational_function();
      const auto& b = o.rational_function();
      if (a.den.is_one() && b.den.is_one()) return from_polynomial(field_, a.num * b.num);
      return from_fraction(field_, a.num * b.num, a.den * b.den);
    }
  }
  return {};
}

Element Element::inverse() const {
  if (is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  const std::uint64_t p = field_.characteristic();
  switch (field_.kind()) {
    case FieldKind::Rationals: return Element(field_, mpq_class(1 / rational()));
    case FieldKind::PrimeField: return Element(field_, modular::inv(residue(), p));
    case FieldKind::RationalFunctionField:
      return from_fraction(field_, rational_function().den, rational_function().num);
  }
  return {};
}

Element Element::operator/(const Element& o) const {
  require_same_field(o);
  if (o.is_zero()) throw Error(ErrorCode::DivisionByZero, "division by zero");
  return *this * o.inverse();
}

Element Element::pow(unsigned long e) const {
  Element result = one(field_);
  Element base = *this;
  while (e > 0) {
    if (e & 1UL) result = result * base;
    e >>= 1UL;
    if (e > 0) base = base * base;
  }
  return result;
}

bool Element::operator==(const Element& o) const { return field_ == o.field_ && value_ == o.value_; }

std::string Element::to_string() const {
  switch (field_.kind()) {
    case FieldKind::Rationals: return rational().get_str();
    case FieldKind::PrimeField: return std::to_string(residue());
    case FieldKind::RationalFunctionField: {
      const auto& rf = rational_function();
      if (rf.den.is_one()) return rf.num.to_string();
      return "(" + rf.num.to_string() + ")/(" + rf.den.to_string() + ")";
    }
  }
  return {};
}

// ---------------------------------------------------------------------------

namespace {

class ExpressionParser {
 public:
  ExpressionParser(const Field& f, std::string_view text) : field_(f), text_(text) {}

  Element parse() {
    Element v = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorCode::ParseError,
                "'" + std::string(text_) + "' at offset " + std::to_string(pos_) + ": " + why);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string digits() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected digits");
    return std::string(text_.substr(start, pos_ - start));
  }

  Element expr() {
    Element v = term();
    while (true) {
      if (accept('+')) {
        v = v + term();
      } else if (accept('-')) {
        v = v - term();
      } else {
        return v;
      }
    }
  }

  Element term() {
    Element v = unary();
    while (true) {
      if (accept('*')) {
        v = v * unary();
      } else if (accept('/')) {
        const Element d = unary();
        if (d.is_zero()) fail("division by zero");
        v = v / d;
      } else {
        return v;
      }
    }
  }

  Element unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Element power() {
    Element base = primary();
    if (accept('^')) {
      const std::string e = digits();
      if (e.size() > 4) fail("exponent too large");
      base = base.pow(std::stoul(e));
    }
    return base;
  }

  Element primary() {
    skip_ws();
    if (accept('(')) {
      Element v = expr();
      if (!accept(')')) fail("expected ')'");
      return v;
    }
    if (pos_ < text_.size() && text_[pos_] == 'X') {
      ++pos_;
      const std::string idx = digits();
      const unsigned long i = std::stoul(idx);
      if (!field_.is_function_field() || i < 1 || i > static_cast<unsigned long>(field_.num_vars())) {
        fail("indeterminate X" + idx + " not in field " + field_.to_string());
      }
      return Element::variable(field_, static_cast<int>(i - 1));
    }
    if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      return Element::from_rational(field_, mpq_class(mpz_class(digits())));
    }
    fail("expected number, indeterminate or '('");
  }

  const Field& field_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Element Element::parse(const Field& f, std::string_view text) {
  try {
    return ExpressionParser(f, text).parse();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ParseError) throw;
    throw Error(ErrorCode::ParseError, "'" + std::string(text) + "': " + e.what());
  }
}

// ---------------------------------------------------------------------------

Element arith(const Element& a, const Element& b, ArithOp op) {
  switch (op) {
    case ArithOp::Add: return a + b;
    case ArithOp::Sub: return a - b;
    case ArithOp::Mul: return a * b;
    case ArithOp::Div: return a / b;
  }
  return a;
}

std::optional<Element> is_square(const Element& a) {
  const Field& f = a.field();
  switch (f.kind()) {
    case FieldKind::Rationals: {
      auto r = coeff::sqrt(a.rational(), 0);
      if (!r) return std::nullopt;
      return Element::from_rational(f, *r);
    }
    case FieldKind::PrimeField: {
      auto r = modular::sqrt(a.residue(), f.characteristic());
      if (!r) return std::nullopt;
      return Element::from_rational(f, mpq_class(mpz_class(std::to_string(*r))));
    }
    case FieldKind::RationalFunctionField: {
      const auto& rf = a.rational_function();
      auto n = rf.num.sqrt();
      if (!n) return std::nullopt;
      auto d = rf.den.sqrt();
      if (!d) return std::nullopt;
      return Element::from_fraction(f, *n, *d);
    }
  }
  return std::nullopt;
}

int valuation(const Element& a, int var) {
  if (!a.field().is_function_field()) throw Error(ErrorCode::WrongField, "valuation needs a rational function");
  if (var < 0 || var >= a.field().num_vars()) throw Error(ErrorCode::PreconditionViolation, "no such indeterminate");
  if (a.is_zero()) throw Error(ErrorCode::ZeroHasNoValuation, "valuation of zero");
  const auto& rf = a.rational_function();
  return static_cast<int>(rf.num.min_exponent(var)) - static_cast<int>(rf.den.min_exponent(var));
}

Element embed(const Element& base_scalar, const Field& target) {
  if (base_scalar.field() == target) return base_scalar;
  if (!(base_scalar.field() == target.base())) {
    throw Error(ErrorCode::FieldMismatch, "cannot embed " + base_scalar.field().to_string() + " into " +
                                              target.to_string());
  }
  if (base_scalar.field().kind() == FieldKind::Rationals) return Element::from_rational(target, base_scalar.rational());
  return Element::from_rational(target, mpq_class(mpz_class(std::to_string(base_scalar.residue()))));
}

}  // namespace cdalg
