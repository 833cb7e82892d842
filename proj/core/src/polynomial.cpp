#include "cdalg/polynomial.hpp"

#include <algorithm>
#include <sstream>

#include "cdalg/errors.hpp"
#include "cdalg/modular.hpp"

namespace cdalg {

unsigned Monomial::total_degree() const {
  unsigned d = 0;
  for (auto e : exp) d += e;
  return d;
}

bool Monomial::divides(const Monomial& other) const {
  for (int i = 0; i < kMaxVariables; ++i) {
    if (exp[i] > other.exp[i]) return false;
  }
  return true;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial r;
  for (int i = 0; i < kMaxVariables; ++i) {
    const unsigned s = unsigned{exp[i]} + other.exp[i];
    if (s > 0xFFFFU) throw Error(ErrorCode::DimensionTooLarge, "monomial exponent overflow");
    r.exp[i] = static_cast<std::uint16_t>(s);
  }
  return r;
}

Monomial Monomial::quotient(const Monomial& divisor) const {
  Monomial r;
  for (int i = 0; i < kMaxVariables; ++i) r.exp[i] = static_cast<std::uint16_t>(exp[i] - divisor.exp[i]);
  return r;
}

namespace coeff {

namespace {
std::uint64_t mpz_mod_p(const mpz_class& z, std::uint64_t p) {
  mpz_class r;
  mpz_class pp;
  mpz_import(pp.get_mpz_t(), 1, 1, sizeof(p), 0, 0, &p);
  mpz_fdiv_r(r.get_mpz_t(), z.get_mpz_t(), pp.get_mpz_t());
  std::uint64_t out = 0;
  if (r != 0) {
    std::size_t count = 0;
    mpz_export(&out, &count, 1, sizeof(out), 0, 0, r.get_mpz_t());
  }
  return out;
}

mpq_class from_u64(std::uint64_t v) {
  mpz_class z;
  mpz_import(z.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
  return mpq_class(z);
}

std::uint64_t to_u64(const mpq_class& v) {
  std::uint64_t out = 0;
  if (v != 0) {
    std::size_t count = 0;
    mpz_export(&out, &count, 1, sizeof(out), 0, 0, v.get_num_mpz_t());
  }
  return out;
}
}  // namespace

mpq_class reduce(mpq_class v, std::uint64_t p) {
  if (p == 0) {
    v.canonicalize();
    return v;
  }
  const std::uint64_t num = mpz_mod_p(v.get_num(), p);
  const std::uint64_t den = mpz_mod_p(v.get_den(), p);
  if (den == 0) throw Error(ErrorCode::DivisionByZero, "denominator vanishes mod p");
  return from_u64(modular::mul(num, modular::inv(den, p), p));
}

mpq_class inverse(const mpq_class& v, std::uint64_t p) {
  if (v == 0) throw Error(ErrorCode::DivisionByZero, "inverse of zero coefficient");
  if (p == 0) return 1 / v;
  return from_u64(modular::inv(to_u64(v), p));
}

std::optional<mpq_class> sqrt(const mpq_class& v, std::uint64_t p) {
  if (p != 0) {
    auto r = modular::sqrt(to_u64(v), p);
    if (!r) return std::nullopt;
    return from_u64(*r);
  }
  if (v < 0) return std::nullopt;
  if (mpz_perfect_square_p(v.get_num_mpz_t()) == 0 || mpz_perfect_square_p(v.get_den_mpz_t()) == 0) {
    return std::nullopt;
  }
  mpz_class n;
  mpz_class d;
  mpz_sqrt(n.get_mpz_t(), v.get_num_mpz_t());
  mpz_sqrt(d.get_mpz_t(), v.get_den_mpz_t());
  return mpq_class(n, d);
}

}  // namespace coeff

Polynomial Polynomial::constant(std::uint64_t p, int nvars, const mpq_class& c) {
  return monomial(p, nvars, Monomial{}, c);
}

Polynomial Polynomial::variable(std::uint64_t p, int nvars, int index) {
  if (index < 0 || index >= nvars) throw Error(ErrorCode::FieldMismatch, "variable index out of range");
  Monomial m;
  m.exp[index] = 1;
  return monomial(p, nvars, m, 1);
}

Polynomial Polynomial::monomial(std::uint64_t p, int nvars, const Monomial& m, const mpq_class& c) {
  Polynomial r(p, nvars);
  mpq_class v = coeff::reduce(c, p);
  if (v != 0) r.terms_.push_back({m, std::move(v)});
  return r;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.front().mono == Monomial{});
}

bool Polynomial::is_one() const {
  return terms_.size() == 1 && terms_.front().mono == Monomial{} && terms_.front().coeff == 1;
}

unsigned Polynomial::degree_in(int var) const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max<unsigned>(d, t.mono.exp[var]);
  return d;
}

unsigned Polynomial::min_exponent(int var) const {
  unsigned d = 0xFFFFU;
  for (const auto& t : terms_) d = std::min<unsigned>(d, t.mono.exp[var]);
  return d;
}

int Polynomial::highest_variable() const {
  for (int v = nvars_ - 1; v >= 0; --v) {
    if (degree_in(v) > 0) return v;
  }
  return -1;
}

void Polynomial::normalize() {
  std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) { return a.mono > b.mono; });
  std::vector<Term> merged;
  merged.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!merged.empty() && merged.back().mono == t.mono) {
      merged.back().coeff += t.coeff;
    } else {
      merged.push_back(std::move(t));
    }
  }
  terms_.clear();
  for (auto& t : merged) {
    t.coeff = coeff::reduce(std::move(t.coeff), p_);
    if (t.coeff != 0) terms_.push_back(std::move(t));
  }
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& t : r.terms_) t.coeff = coeff::reduce(-t.coeff, p_);
  return r;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  Polynomial r(p_, nvars_);
  r.terms_.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    if (j == o.terms_.size() || (i < terms_.size() && terms_[i].mono > o.terms_[j].mono)) {
      r.terms_.push_back(terms_[i++]);
    } else if (i == terms_.size() || o.terms_[j].mono > terms_[i].mono) {
      r.terms_.push_back(o.terms_[j++]);
    } else {
      mpq_class c = coeff::reduce(terms_[i].coeff + o.terms_[j].coeff, p_);
      if (c != 0) r.terms_.push_back({terms_[i].mono, std::move(c)});
      ++i;
      ++j;
    }
  }
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
  Polynomial r(p_, nvars_);
  if (terms_.empty() || o.terms_.empty()) return r;
  r.terms_.reserve(terms_.size() * o.terms_.size());
  for (const auto& a : terms_) {
    for (const auto& b : o.terms_) r.terms_.push_back({a.mono * b.mono, a.coeff * b.coeff});
  }
  r.normalize();
  return r;
}

Polynomial Polynomial::scaled(const mpq_class& c) const {
  return times_monomial(Monomial{}, c);
}

Polynomial Polynomial::times_monomial(const Monomial& m, const mpq_class& c) const {
  Polynomial r(p_, nvars_);
  const mpq_class cc = coeff::reduce(c, p_);
  if (cc == 0) return r;
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back({t.mono * m, coeff::reduce(t.coeff * cc, p_)});
  return r;
}

std::optional<Polynomial> Polynomial::exact_div(const Polynomial& divisor) const {
  if (divisor.is_zero()) throw Error(ErrorCode::DivisionByZero, "polynomial division by zero");
  Polynomial quotient(p_, nvars_);
  Polynomial rem = *this;
  const Term& lead = divisor.leading();
  const mpq_class lead_inv = coeff::inverse(lead.coeff, p_);
  std::vector<Term> q_terms;
  while (!rem.is_zero()) {
    const Term& lt = rem.leading();
    if (!lead.mono.divides(lt.mono)) return std::nullopt;
    const Monomial m = lt.mono.quotient(lead.mono);
    const mpq_class c = coeff::reduce(lt.coeff * lead_inv, p_);
    q_terms.push_back({m, c});
    rem = rem - divisor.times_monomial(m, c);
  }
  // Quotient terms were produced in strictly descending order.
  quotient.terms_ = std::move(q_terms);
  return quotient;
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  return scaled(coeff::inverse(leading_coeff(), p_));
}

std::optional<Polynomial> Polynomial::sqrt() const {
  if (is_zero()) return *this;
  const Term& lt = leading();
  Monomial half;
  for (int i = 0; i < kMaxVariables; ++i) {
    if (lt.mono.exp[i] % 2 != 0) return std::nullopt;
    half.exp[i] = static_cast<std::uint16_t>(lt.mono.exp[i] / 2);
  }
  auto c = coeff::sqrt(lt.coeff, p_);
  if (!c) return std::nullopt;

  std::array<unsigned, kMaxVariables> bound{};
  for (int v = 0; v < nvars_; ++v) bound[v] = degree_in(v) / 2;

  Polynomial root = monomial(p_, nvars_, half, *c);
  const mpq_class two_c_inv = coeff::inverse(coeff::reduce(2 * *c, p_), p_);
  Polynomial rem = *this - root * root;
  Monomial prev = half;
  while (!rem.is_zero()) {
    const Term& r = rem.leading();
    if (!half.divides(r.mono)) return std::nullopt;
    const Monomial m = r.mono.quotient(half);
    if (!(m < prev)) return std::nullopt;
    for (int v = 0; v < nvars_; ++v) {
      if (m.exp[v] > bound[v]) return std::nullopt;
    }
    const Polynomial t = monomial(p_, nvars_, m, r.coeff * two_c_inv);
    rem = rem - (root * t).scaled(2) - t * t;
    root = root + t;
    prev = m;
  }
  return root;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& t : terms_) {
    mpq_class c = t.coeff;
    bool negative = false;
    if (p_ == 0 && c < 0) {
      negative = true;
      c = -c;
    }
    if (first) {
      if (negative) out << "-";
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;
    const bool is_const = t.mono == Monomial{};
    if (is_const || c != 1) {
      out << c.get_str();
      if (!is_const) out << "*";
    }
    bool first_var = true;
    for (int v = 0; v < nvars_; ++v) {
      const unsigned e = t.mono.exp[v];
      if (e == 0) continue;
      if (!first_var) out << "*";
      first_var = false;
      out << "X" << (v + 1);
      if (e > 1) out << "^" << e;
    }
  }
  return out.str();
}

namespace {

using Univariate = std::vector<Polynomial>;  // index = degree in the main variable

Univariate to_univariate(const Polynomial& a, int var) {
  Univariate out(a.degree_in(var) + 1, Polynomial(a.modulus(), a.num_vars()));
  for (const auto& t : a.terms()) {
    Monomial m = t.mono;
    const unsigned e = m.exp[var];
    m.exp[var] = 0;
    out[e] = out[e] + Polynomial::monomial(a.modulus(), a.num_vars(), m, t.coeff);
  }
  return out;
}

Polynomial from_univariate(const Univariate& u, int var, std::uint64_t p, int nvars) {
  Polynomial out(p, nvars);
  for (std::size_t e = 0; e < u.size(); ++e) {
    Monomial m;
    m.exp[var] = static_cast<std::uint16_t>(e);
    out = out + u[e].times_monomial(m, 1);
  }
  return out;
}

void trim(Univariate& u) {
  while (!u.empty() && u.back().is_zero()) u.pop_back();
}

Polynomial content(const Univariate& u) {
  Polynomial g(u.front().modulus(), u.front().num_vars());
  for (const auto& c : u) {
    g = gcd(g, c);
    if (g.is_one()) break;
  }
  return g;
}

Univariate divide_coefficients(const Univariate& u, const Polynomial& d) {
  Univariate out;
  out.reserve(u.size());
  for (const auto& c : u) out.push_back(*c.exact_div(d));
  return out;
}

Univariate primitive(const Univariate& u) { return divide_coefficients(u, content(u)); }

// Pseudo-remainder of a by b (both nonzero), up to a content factor.
Univariate pseudo_remainder(Univariate a, const Univariate& b) {
  const Polynomial& lb = b.back();
  const std::size_t db = b.size() - 1;
  trim(a);
  while (!a.empty() && a.size() - 1 >= db) {
    const std::size_t shift = a.size() - 1 - db;
    const Polynomial la = a.back();
    for (auto& c : a) c = c * lb;
    for (std::size_t i = 0; i <= db; ++i) a[i + shift] = a[i + shift] - la * b[i];
    trim(a);
  }
  return a;
}

}  // namespace

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  const std::uint64_t p = a.modulus();
  const int nvars = a.num_vars();
  if (a.is_constant() || b.is_constant()) return Polynomial::constant(p, nvars, 1);

  const int var = std::max(a.highest_variable(), b.highest_variable());
  Univariate ua = to_univariate(a, var);
  Univariate ub = to_univariate(b, var);
  if (ua.size() == 1) return gcd(a, content(ub));
  if (ub.size() == 1) return gcd(content(ua), b);

  const Polynomial ca = content(ua);
  const Polynomial cb = content(ub);
  const Polynomial c = gcd(ca, cb);
  Univariate pa = divide_coefficients(ua, ca);
  Univariate pb = divide_coefficients(ub, cb);
  if (pa.size() < pb.size()) std::swap(pa, pb);
  while (true) {
    Univariate r = pseudo_remainder(pa, pb);
    pa = std::move(pb);
    if (r.empty()) break;
    if (r.size() == 1) {
      // Nonzero constant in the main variable: the primitive gcd is 1.
      pa = Univariate{Polynomial::constant(p, nvars, 1)};
      break;
    }
    pb = primitive(r);
  }
  const Polynomial g = from_univariate(primitive(pa), var, p, nvars);
  return (g * c).monic();
}

}  // namespace cdalg
