#include "cdalg/algebra.hpp"

#include <span>

#include "cdalg/errors.hpp"
#include "cdalg/modular.hpp"

namespace cdalg {

namespace {

// Sign table of the doubling recursion. With h = 2^(t-1), i' = i - h, j' = j - h:
//   (e_i, 0)(e_j, 0)   = (e_i e_j, 0)
//   (e_i, 0)(0, e_j')  = (0, e_j' e_i)
//   (0, e_i')(e_j, 0)  = (0, e_i' conj(e_j))
//   (0, e_i')(0, e_j') = (g conj(e_j') e_i', 0)
std::vector<std::int8_t> doubling_signs(int t) {
  std::vector<std::int8_t> prev{1};
  for (int level = 1; level <= t; ++level) {
    const std::size_t h = std::size_t{1} << (level - 1);
    const std::size_t q = 2 * h;
    std::vector<std::int8_t> next(q * q);
    auto old = [&](std::size_t i, std::size_t j) { return prev[i * h + j]; };
    auto conj_sign = [](std::size_t j) -> std::int8_t { return j == 0 ? 1 : -1; };
    for (std::size_t i = 0; i < q; ++i) {
      for (std::size_t j = 0; j < q; ++j) {
        std::int8_t s = 0;
        if (i < h && j < h) {
          s = old(i, j);
        } else if (i < h) {
          s = old(j - h, i);
        } else if (j < h) {
          s = static_cast<std::int8_t>(old(i - h, j) * conj_sign(j));
        } else {
          s = static_cast<std::int8_t>(old(j - h, i - h) * conj_sign(j - h));
        }
        next[i * q + j] = s;
      }
    }
    prev = std::move(next);
  }
  return prev;
}

}  // namespace

AlgebraSpec::AlgebraSpec(Field field, std::vector<Element> gammas)
    : field_(std::move(field)), gammas_(std::move(gammas)) {
  if (gammas_.size() > static_cast<std::size_t>(kMaxDoublings)) {
    throw Error(ErrorCode::DimensionTooLarge,
                "at most " + std::to_string(kMaxDoublings) + " doublings are supported");
  }
  for (std::size_t i = 0; i < gammas_.size(); ++i) {
    if (!(gammas_[i].field() == field_)) {
      throw Error(ErrorCode::FieldMismatch, "parameter " + std::to_string(i + 1) + " is not in " + field_.to_string());
    }
    if (gammas_[i].is_zero()) throw Error(ErrorCode::ZeroGamma, "parameter " + std::to_string(i + 1) + " is zero");
  }
  signs_ = doubling_signs(doublings());
  alpha_products_.reserve(dim());
  alpha_products_.push_back(Element::one(field_));
  for (std::size_t mask = 1; mask < dim(); ++mask) {
    const auto low = static_cast<std::size_t>(__builtin_ctzll(mask));
    alpha_products_.push_back(alpha_products_[mask & (mask - 1)] * gammas_[low]);
  }
}

Element AlgebraSpec::structure_constant(std::size_t i, std::size_t j) const {
  const Element& a = alpha_products_[i & j];
  return sign(i, j) > 0 ? a : -a;
}

std::vector<Element> AlgebraSpec::pure_betas() const {
  std::vector<Element> out;
  out.reserve(dim() - 1);
  for (std::size_t i = 1; i < dim(); ++i) out.push_back(beta(i));
  return out;
}

bool AlgebraSpec::same_as(const AlgebraSpec& other) const {
  return this == &other || (field_ == other.field_ && gammas_ == other.gammas_);
}

Algebra build_algebra(const Field& field, std::vector<Element> gammas) {
  return std::make_shared<const AlgebraSpec>(field, std::move(gammas));
}

// ---------------------------------------------------------------------------

CDElement::CDElement(Algebra algebra, std::vector<Element> coeffs)
    : algebra_(std::move(algebra)), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != algebra_->dim()) {
    throw Error(ErrorCode::AlgebraMismatch, "expected " + std::to_string(algebra_->dim()) + " coefficients, got " +
                                                std::to_string(coeffs_.size()));
  }
  for (const auto& c : coeffs_) {
    if (!(c.field() == algebra_->field())) throw Error(ErrorCode::FieldMismatch, "coefficient outside the base field");
  }
}

CDElement CDElement::zero(const Algebra& a) {
  return CDElement(a, std::vector<Element>(a->dim(), Element::zero(a->field())));
}

CDElement CDElement::one(const Algebra& a) { return scalar(a, Element::one(a->field())); }

CDElement CDElement::scalar(const Algebra& a, const Element& c) {
  std::vector<Element> v(a->dim(), Element::zero(a->field()));
  v[0] = c;
  return CDElement(a, std::move(v));
}

CDElement CDElement::basis(const Algebra& a, std::size_t index) {
  if (index >= a->dim()) throw Error(ErrorCode::PreconditionViolation, "basis index out of range");
  std::vector<Element> v(a->dim(), Element::zero(a->field()));
  v[index] = Element::one(a->field());
  return CDElement(a, std::move(v));
}

bool CDElement::is_zero() const {
  for (const auto& c : coeffs_) {
    if (!c.is_zero()) return false;
  }
  return true;
}

bool CDElement::is_scalar() const {
  for (std::size_t i = 1; i < coeffs_.size(); ++i) {
    if (!coeffs_[i].is_zero()) return false;
  }
  return true;
}

void CDElement::require_same_algebra(const CDElement& o) const {
  if (!algebra_->same_as(*o.algebra_)) throw Error(ErrorCode::AlgebraMismatch, "elements of different algebras");
}

CDElement CDElement::operator+(const CDElement& o) const {
  require_same_algebra(o);
  std::vector<Element> v;
  v.reserve(dim());
  for (std::size_t i = 0; i < dim(); ++i) v.push_back(coeffs_[i] + o.coeffs_[i]);
  return CDElement(algebra_, std::move(v));
}

CDElement CDElement::operator-() const {
  std::vector<Element> v;
  v.reserve(dim());
  for (const auto& c : coeffs_) v.push_back(-c);
  return CDElement(algebra_, std::move(v));
}

CDElement CDElement::operator-(const CDElement& o) const { return *this + (-o); }

CDElement CDElement::scaled(const Element& c) const {
  std::vector<Element> v;
  v.reserve(dim());
  for (const auto& x : coeffs_) v.push_back(x * c);
  return CDElement(algebra_, std::move(v));
}

CDElement CDElement::operator*(const CDElement& o) const { return multiply(*this, o); }

bool CDElement::operator==(const CDElement& o) const {
  return algebra_->same_as(*o.algebra_) && coeffs_ == o.coeffs_;
}

namespace {

std::vector<Element> multiply_fp(const AlgebraSpec& a, const CDElement& x, const CDElement& y) {
  const std::size_t q = a.dim();
  const std::uint64_t p = a.field().characteristic();
  std::vector<std::uint64_t> xs(q), ys(q), alpha(q), acc(q, 0);
  for (std::size_t i = 0; i < q; ++i) {
    xs[i] = x[i].residue();
    ys[i] = y[i].residue();
    alpha[i] = a.alpha_product(i).residue();
  }
  for (std::size_t i = 0; i < q; ++i) {
    if (xs[i] == 0) continue;
    for (std::size_t j = 0; j < q; ++j) {
      if (ys[j] == 0) continue;
      const std::uint64_t term = modular::mul(modular::mul(xs[i], ys[j], p), alpha[i & j], p);
      acc[i ^ j] = a.sign(i, j) > 0 ? modular::add(acc[i ^ j], term, p) : modular::sub(acc[i ^ j], term, p);
    }
  }
  std::vector<Element> out;
  out.reserve(q);
  for (auto v : acc) out.push_back(Element::from_int(a.field(), static_cast<long>(v)));
  return out;
}

bool integral(const Element& e) { return mpz_cmp_ui(e.rational().get_den_mpz_t(), 1) == 0; }

std::vector<Element> multiply_z(const AlgebraSpec& a, const CDElement& x, const CDElement& y) {
  const std::size_t q = a.dim();
  std::vector<mpz_class> acc(q);
  mpz_class term;
  for (std::size_t i = 0; i < q; ++i) {
    if (x[i].is_zero()) continue;
    const mpz_srcptr xi = x[i].rational().get_num_mpz_t();
    for (std::size_t j = 0; j < q; ++j) {
      if (y[j].is_zero()) continue;
      mpz_mul(term.get_mpz_t(), xi, y[j].rational().get_num_mpz_t());
      const mpz_srcptr alpha = a.alpha_product(i & j).rational().get_num_mpz_t();
      if (a.sign(i, j) > 0) {
        mpz_addmul(acc[i ^ j].get_mpz_t(), term.get_mpz_t(), alpha);
      } else {
        mpz_submul(acc[i ^ j].get_mpz_t(), term.get_mpz_t(), alpha);
      }
    }
  }
  std::vector<Element> out;
  out.reserve(q);
  for (const auto& v : acc) out.push_back(Element::from_rational(a.field(), mpq_class(v)));
  return out;
}

std::vector<Element> multiply_q(const AlgebraSpec& a, const CDElement& x, const CDElement& y) {
  const std::size_t q = a.dim();
  bool ints = true;
  for (std::size_t i = 0; i < q && ints; ++i) {
    ints = integral(x[i]) && integral(y[i]) && integral(a.alpha_product(i));
  }
  if (ints) return multiply_z(a, x, y);
  std::vector<mpq_class> acc(q);
  mpq_class term;
  for (std::size_t i = 0; i < q; ++i) {
    if (x[i].is_zero()) continue;
    const mpq_class& xi = x[i].rational();
    for (std::size_t j = 0; j < q; ++j) {
      if (y[j].is_zero()) continue;
      mpq_mul(term.get_mpq_t(), xi.get_mpq_t(), y[j].rational().get_mpq_t());
      if ((i & j) != 0) mpq_mul(term.get_mpq_t(), term.get_mpq_t(), a.alpha_product(i & j).rational().get_mpq_t());
      if (a.sign(i, j) > 0) {
        mpq_add(acc[i ^ j].get_mpq_t(), acc[i ^ j].get_mpq_t(), term.get_mpq_t());
      } else {
        mpq_sub(acc[i ^ j].get_mpq_t(), acc[i ^ j].get_mpq_t(), term.get_mpq_t());
      }
    }
  }
  std::vector<Element> out;
  out.reserve(q);
  for (const auto& v : acc) out.push_back(Element::from_rational(a.field(), v));
  return out;
}

}  // namespace

CDElement multiply(const CDElement& x, const CDElement& y) {
  const AlgebraSpec& a = *x.algebra();
  if (!a.same_as(*y.algebra())) throw Error(ErrorCode::AlgebraMismatch, "elements of different algebras");
  if (a.field().kind() == FieldKind::PrimeField) return CDElement(x.algebra(), multiply_fp(a, x, y));
  if (a.field().kind() == FieldKind::Rationals) return CDElement(x.algebra(), multiply_q(a, x, y));
  const std::size_t q = a.dim();
  std::vector<Element> out(q, Element::zero(a.field()));
  for (std::size_t i = 0; i < q; ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < q; ++j) {
      if (y[j].is_zero()) continue;
      Element term = x[i] * y[j];
      if ((i & j) != 0) term = term * a.alpha_product(i & j);
      if (a.sign(i, j) > 0) {
        out[i ^ j] = out[i ^ j] + term;
      } else {
        out[i ^ j] = out[i ^ j] - term;
      }
    }
  }
  return CDElement(x.algebra(), std::move(out));
}

namespace {

using Coeffs = std::vector<Element>;

Coeffs conj_coeffs(std::span<const Element> a) {
  Coeffs out(a.begin(), a.end());
  for (std::size_t i = 1; i < out.size(); ++i) out[i] = -out[i];
  return out;
}

Coeffs add_coeffs(const Coeffs& a, const Coeffs& b) {
  Coeffs out;
  out.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(a[i] + b[i]);
  return out;
}

Coeffs doubling_product(std::span<const Element> a, std::span<const Element> b, std::span<const Element> gammas) {
  if (a.size() == 1) return Coeffs{a[0] * b[0]};
  const std::size_t h = a.size() / 2;
  const Element& g = gammas[gammas.size() - 1];
  const auto sub_gammas = gammas.first(gammas.size() - 1);
  const auto a1 = a.first(h);
  const auto a2 = a.subspan(h);
  const auto b1 = b.first(h);
  const auto b2 = b.subspan(h);
  const Coeffs b1c = conj_coeffs(b1);
  const Coeffs b2c = conj_coeffs(b2);

  Coeffs first = doubling_product(a1, b1, sub_gammas);
  Coeffs twist = doubling_product(b2c, a2, sub_gammas);
  for (auto& c : twist) c = c * g;
  first = add_coeffs(first, twist);
  Coeffs second = add_coeffs(doubling_product(a2, b1c, sub_gammas), doubling_product(b2, a1, sub_gammas));

  first.insert(first.end(), second.begin(), second.end());
  return first;
}

}  // namespace

CDElement multiply_by_doubling(const CDElement& x, const CDElement& y) {
  if (!x.algebra()->same_as(*y.algebra())) throw Error(ErrorCode::AlgebraMismatch, "elements of different algebras");
  return CDElement(x.algebra(), doubling_product(x.coeffs(), y.coeffs(), x.algebra()->gammas()));
}

CDElement conjugate(const CDElement& x) { return CDElement(x.algebra(), conj_coeffs(x.coeffs())); }

Element trace(const CDElement& x) { return x[0] + x[0]; }

Element norm(const CDElement& x) {
  const AlgebraSpec& a = *x.algebra();
  Element n = x[0] * x[0];
  for (std::size_t i = 1; i < x.dim(); ++i) {
    if (x[i].is_zero()) continue;
    n = n - a.beta(i) * x[i] * x[i];
  }
  return n;
}

std::pair<Element, CDElement> scalar_pure_split(const CDElement& x) {
  Coeffs pure = x.coeffs();
  pure[0] = Element::zero(x.algebra()->field());
  return {x[0], CDElement(x.algebra(), std::move(pure))};
}

}  // namespace cdalg
