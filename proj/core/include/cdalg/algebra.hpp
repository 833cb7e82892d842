#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "cdalg/field.hpp"

namespace cdalg {

inline constexpr int kMaxDoublings = 10;

/// The algebra A_t = K{a_1,...,a_t} obtained from K by t Cayley-Dickson
/// doublings (a1, a2)(b1, b2) = (a1 b1 + g conj(b2) a2, a2 conj(b1) + b2 a1).
///
/// Basis indexing: basis index i in [0, 2^t) read in binary; bit j set means
/// the generator adjoined by doubling j+1 is a factor. Index 0 is the unit.
/// Then f_i f_j = sign(i, j) * (prod of a_{l+1} over bits l of i & j) * f_{i ^ j},
/// so the whole multiplication table is a sign table plus 2^t alpha products.
class AlgebraSpec {
 public:
  AlgebraSpec(Field field, std::vector<Element> gammas);

  const Field& field() const { return field_; }
  const std::vector<Element>& gammas() const { return gammas_; }
  int doublings() const { return static_cast<int>(gammas_.size()); }
  std::size_t dim() const { return std::size_t{1} << gammas_.size(); }

  int sign(std::size_t i, std::size_t j) const { return signs_[i * dim() + j]; }
  const Element& alpha_product(std::size_t mask) const { return alpha_products_[mask]; }
  /// beta_ij with f_i f_j = beta_ij f_{i^j}.
  Element structure_constant(std::size_t i, std::size_t j) const;
  /// f_i^2 = beta(i) * 1; beta(0) = 1.
  Element beta(std::size_t i) const { return structure_constant(i, i); }
  /// (beta_2, ..., beta_q) in basis order, i.e. the diagonal of the pure trace form.
  std::vector<Element> pure_betas() const;

  /// Same field and same parameters.
  bool same_as(const AlgebraSpec& other) const;

 private:
  Field field_;
  std::vector<Element> gammas_;
  std::vector<std::int8_t> signs_;
  std::vector<Element> alpha_products_;
};

using Algebra = std::shared_ptr<const AlgebraSpec>;

/// Throws ZeroGamma, FieldMismatch or DimensionTooLarge (t > kMaxDoublings).
Algebra build_algebra(const Field& field, std::vector<Element> gammas);

/// x = x_1 1 + sum x_i f_i as a coefficient vector of length 2^t.
class CDElement {
 public:
  CDElement(Algebra algebra, std::vector<Element> coeffs);

  static CDElement zero(const Algebra& a);
  static CDElement one(const Algebra& a);
  static CDElement scalar(const Algebra& a, const Element& c);
  static CDElement basis(const Algebra& a, std::size_t index);

  const Algebra& algebra() const { return algebra_; }
  const std::vector<Element>& coeffs() const { return coeffs_; }
  const Element& operator[](std::size_t i) const { return coeffs_[i]; }
  std::size_t dim() const { return coeffs_.size(); }

  bool is_zero() const;
  bool is_scalar() const;

  CDElement operator+(const CDElement& o) const;
  CDElement operator-(const CDElement& o) const;
  CDElement operator-() const;
  CDElement scaled(const Element& c) const;
  CDElement operator*(const CDElement& o) const;

  bool operator==(const CDElement& o) const;

 private:
  void require_same_algebra(const CDElement& o) const;

  Algebra algebra_;
  std::vector<Element> coeffs_;
};

/// Table-driven product.
CDElement multiply(const CDElement& x, const CDElement& y);
/// Product computed by direct recursion on the doubling formula; independent
/// of the precomputed table and used to cross-check it.
CDElement multiply_by_doubling(const CDElement& x, const CDElement& y);

CDElement conjugate(const CDElement& x);
/// t(x) = 2 x_1.
Element trace(const CDElement& x);
/// n(x) = x_1^2 - sum beta_i x_i^2.
Element norm(const CDElement& x);
/// (x_1, x'') with x = x_1 1 + x''.
std::pair<Element, CDElement> scalar_pure_split(const CDElement& x);

}  // namespace cdalg
