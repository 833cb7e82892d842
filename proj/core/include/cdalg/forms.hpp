#pragma once

#include <span>
#include <vector>

#include "cdalg/algebra.hpp"
#include "cdalg/field.hpp"

namespace cdalg {

/// Nondegenerate diagonal quadratic form <c_1, ..., c_n>, n >= 1, all c_i != 0.
class DiagonalForm {
 public:
  DiagonalForm(Field field, std::vector<Element> coeffs);

  /// Parses "1,-1,3" (comma-separated element expressions).
  static DiagonalForm parse(const Field& field, std::string_view text);

  const Field& field() const { return field_; }
  const std::vector<Element>& coeffs() const { return coeffs_; }
  std::size_t dim() const { return coeffs_.size(); }
  const Element& operator[](std::size_t i) const { return coeffs_[i]; }

  /// sum c_i x_i^2
  Element evaluate(std::span<const Element> x) const;

  /// Equality of coefficient multisets (diagonal forms are isometric under
  /// permutation of the diagonal).
  bool same_multiset(const DiagonalForm& other) const;

  bool operator==(const DiagonalForm&) const = default;

  std::string to_string() const;

 private:
  Field field_;
  std::vector<Element> coeffs_;
};

DiagonalForm orth_sum(const DiagonalForm& a, const DiagonalForm& b);
/// Coefficients c_i d_j in row-major order.
DiagonalForm tensor(const DiagonalForm& a, const DiagonalForm& b);
/// n x phi: n copies concatenated.
DiagonalForm scale_multiple(std::size_t n, const DiagonalForm& phi);
/// <a c_1, ..., a c_n>
DiagonalForm scalar_scale(const Element& a, const DiagonalForm& phi);
/// n x <1>
DiagonalForm ones(const Field& field, std::size_t n);

/// <<a_1,...,a_n>> = <1,a_1> (x) ... (x) <1,a_n>: coefficient at bitmask m is the
/// product of the a_i whose bit is set in m.
DiagonalForm pfister(const Field& field, std::span<const Element> a);
/// Drops the leading <1>; throws NotUnitLeading.
DiagonalForm pure_subform(const DiagonalForm& phi);

/// T_C = <1, beta_2, ..., beta_q>
DiagonalForm trace_form(const AlgebraSpec& a);
/// T_P = <beta_2, ..., beta_q>; throws ScalarAlgebra for t = 0.
DiagonalForm pure_trace_form(const AlgebraSpec& a);
/// n_C = <<-a_1, ..., -a_t>>
DiagonalForm norm_form(const AlgebraSpec& a);

}  // namespace cdalg
