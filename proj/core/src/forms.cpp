#include "cdalg/forms.hpp"

#include <algorithm>

#include "cdalg/errors.hpp"

namespace cdalg {

DiagonalForm::DiagonalForm(Field field, std::vector<Element> coeffs)
    : field_(std::move(field)), coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw Error(ErrorCode::PreconditionViolation, "a form needs at least one coefficient");
  for (const auto& c : coeffs_) {
    if (!(c.field() == field_)) throw Error(ErrorCode::FieldMismatch, "form coefficient outside " + field_.to_string());
    if (c.is_zero()) throw Error(ErrorCode::ZeroScalar, "degenerate form (zero coefficient)");
  }
}

DiagonalForm DiagonalForm::parse(const Field& field, std::string_view text) {
  std::vector<Element> coeffs;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i < text.size() && text[i] == '(') ++depth;
    if (i < text.size() && text[i] == ')') --depth;
    if (i == text.size() || (text[i] == ',' && depth == 0)) {
      coeffs.push_back(Element::parse(field, text.substr(start, i - start)));
      start = i + 1;
    }
  }
  try {
    return DiagonalForm(field, std::move(coeffs));
  } catch (const Error& e) {
    throw Error(ErrorCode::ParseError, "form '" + std::string(text) + "': " + e.what());
  }
}

Element DiagonalForm::evaluate(std::span<const Element> x) const {
  if (x.size() != coeffs_.size()) throw Error(ErrorCode::PreconditionViolation, "vector length does not match form");
  Element sum = Element::zero(field_);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!x[i].is_zero()) sum = sum + coeffs_[i] * x[i] * x[i];
  }
  return sum;
}

bool DiagonalForm::same_multiset(const DiagonalForm& other) const {
  if (!(field_ == other.field_) || dim() != other.dim()) return false;
  auto key = [](const DiagonalForm& f) {
    std::vector<std::string> k;
    k.reserve(f.dim());
    for (const auto& c : f.coeffs_) k.push_back(c.to_string());
    std::sort(k.begin(), k.end());
    return k;
  };
  return key(*this) == key(other);
}

std::string DiagonalForm::to_string() const {
  std::string s = "<";
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (i > 0) s += ", ";
    s += coeffs_[i].to_string();
  }
  return s + ">";
}

namespace {
void require_same_field(const DiagonalForm& a, const DiagonalForm& b) {
  if (!(a.field() == b.field())) throw Error(ErrorCode::FieldMismatch, "forms over different fields");
}
}  // namespace

DiagonalForm orth_sum(const DiagonalForm& a, const DiagonalForm& b) {
  require_same_field(a, b);
  std::vector<Element> c = a.coeffs();
  c.insert(c.end(), b.coeffs().begin(), b.coeffs().end());
  return DiagonalForm(a.field(), std::move(c));
}

DiagonalForm tensor(const DiagonalForm& a, const DiagonalForm& b) {
  require_same_field(a, b);
  std::vector<Element> c;
  c.reserve(a.dim() * b.dim());
  for (const auto& x : a.coeffs()) {
    for (const auto& y : b.coeffs()) c.push_back(x * y);
  }
  return DiagonalForm(a.field(), std::move(c));
}

DiagonalForm scale_multiple(std::size_t n, const DiagonalForm& phi) {
  if (n == 0) throw Error(ErrorCode::PreconditionViolation, "multiple must be positive");
  std::vector<Element> c;
  c.reserve(n * phi.dim());
  for (std::size_t k = 0; k < n; ++k) c.insert(c.end(), phi.coeffs().begin(), phi.coeffs().end());
  return DiagonalForm(phi.field(), std::move(c));
}

DiagonalForm scalar_scale(const Element& a, const DiagonalForm& phi) {
  if (a.is_zero()) throw Error(ErrorCode::ZeroScalar, "scaling by zero");
  std::vector<Element> c;
  c.reserve(phi.dim());
  for (const auto& x : phi.coeffs()) c.push_back(a * x);
  return DiagonalForm(phi.field(), std::move(c));
}

DiagonalForm ones(const Field& field, std::size_t n) {
  return DiagonalForm(field, std::vector<Element>(n, Element::one(field)));
}

DiagonalForm pfister(const Field& field, std::span<const Element> a) {
  for (const auto& x : a) {
    if (x.is_zero()) throw Error(ErrorCode::ZeroScalar, "Pfister slot is zero");
  }
  std::vector<Element> c;
  c.reserve(std::size_t{1} << a.size());
  c.push_back(Element::one(field));
  for (std::size_t mask = 1; mask < (std::size_t{1} << a.size()); ++mask) {
    const auto low = static_cast<std::size_t>(__builtin_ctzll(mask));
    c.push_back(c[mask & (mask - 1)] * a[low]);
  }
  return DiagonalForm(field, std::move(c));
}

DiagonalForm pure_subform(const DiagonalForm& phi) {
  if (phi.dim() < 2 || !phi[0].is_one()) throw Error(ErrorCode::NotUnitLeading, "form is not <1> + phi'");
  return DiagonalForm(phi.field(), std::vector<Element>(phi.coeffs().begin() + 1, phi.coeffs().end()));
}

DiagonalForm trace_form(const AlgebraSpec& a) {
  std::vector<Element> c{Element::one(a.field())};
  for (auto& b : a.pure_betas()) c.push_back(std::move(b));
  return DiagonalForm(a.field(), std::move(c));
}

DiagonalForm pure_trace_form(const AlgebraSpec& a) {
  if (a.doublings() == 0) throw Error(ErrorCode::ScalarAlgebra, "the scalar algebra has no pure part");
  return DiagonalForm(a.field(), a.pure_betas());
}

DiagonalForm norm_form(const AlgebraSpec& a) {
  std::vector<Element> slots;
  for (const auto& g : a.gammas()) slots.push_back(-g);
  return pfister(a.field(), slots);
}

}  // namespace cdalg
