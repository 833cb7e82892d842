#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "cdalg/forms.hpp"

namespace cdalg {

enum class Verdict { Isotropic, Anisotropic, Unknown };

std::string_view to_string(Verdict v) noexcept;

/// One step of the residue-splitting recursion for monomial-coefficient forms
/// over K(X_1..X_m). Inner nodes split on the parity of the X_variable
/// exponent; leaves hold the residue form over K and the base oracle's verdict.
struct CertificateNode {
  int variable = -1;                  // 0-based indeterminate split at this node; -1 for a leaf
  std::string branch;                 // "root", "even" or "odd"
  std::vector<std::size_t> indices;   // positions in the original form
  std::vector<std::string> residue;   // leaf only: residue coefficients over K
  Verdict verdict = Verdict::Unknown;
  std::vector<CertificateNode> children;
};

struct IsotropyResult {
  Verdict verdict = Verdict::Unknown;
  /// Present for isotropic verdicts; nonzero with phi(witness) == 0.
  std::optional<std::vector<Element>> witness;
  std::optional<CertificateNode> certificate;
  std::string method;
  /// Free-form remark, e.g. that a witness search hit its cap.
  std::string note;

  bool isotropic() const { return verdict == Verdict::Isotropic; }
  bool anisotropic() const { return verdict == Verdict::Anisotropic; }
};

/// Real place when `real` is set, otherwise the prime p.
struct Place {
  bool real = false;
  mpz_class p;

  static Place infinity() { return Place{true, 0}; }
  static Place prime(mpz_class p) { return Place{false, std::move(p)}; }
};

/// Hilbert symbol (a, b)_v of nonzero rationals; +1 or -1.
int hilbert_symbol(const mpq_class& a, const mpq_class& b, const Place& place);

struct RationalSearchOptions {
  /// Witness heights are tried as 1, 2, 4, ... while the enumeration work stays
  /// below this many candidate vectors.
  std::uint64_t work_budget = 20'000'000;
  /// Skip the witness search and return the bare verdict.
  bool search_witness = true;
};

/// Exact decision over F_p (p odd).
IsotropyResult isotropic_fp(const DiagonalForm& phi);

/// Exact Hasse-Minkowski decision over Q with witness search for isotropic forms.
IsotropyResult isotropic_q(const DiagonalForm& phi, const RationalSearchOptions& options = {});

/// Local isotropy of a form over Q at one place (used by isotropic_q; exposed for tests).
bool locally_isotropic(const DiagonalForm& phi, const Place& place);

struct BruteForceOptions {
  /// Upper bound on the number of candidate vectors; beyond it SearchSpaceTooLarge.
  std::uint64_t max_candidates = 50'000'000;
};

/// Independent search oracle.
///  F_p: exhaustive over F_p^n (anisotropic when nothing is found).
///  Q:   every integer vector with max-norm <= height (unknown when nothing is found).
///  K(X): polynomial coordinates of total degree <= height with coefficients in {-1, 0, 1}.
IsotropyResult isotropic_bruteforce(const DiagonalForm& phi, unsigned height, const BruteForceOptions& options = {});

/// Residue-splitting decision for forms whose coefficients are (unit of K) x
/// (monomial in X_1..X_m). Throws NonMonomialCoefficient otherwise.
IsotropyResult monomial_anisotropy_certificate(const DiagonalForm& phi);

/// Dispatches on the field of phi. Without want_witness, rational isotropic
/// verdicts come back without a witness.
IsotropyResult isotropic(const DiagonalForm& phi, bool want_witness = true);

enum class Answer { Yes, No, Unknown };

struct Representation {
  Answer answer = Answer::Unknown;
  /// x != 0 with phi(x) == c when answer is Yes.
  std::optional<std::vector<Element>> witness;
};

/// Decides whether phi represents c != 0 via isotropy of phi + <-c>.
Representation represents(const DiagonalForm& phi, const Element& c);

/// D_K(phi) over F_p together with 0 when phi is isotropic, as sorted residues.
std::vector<std::uint64_t> value_set_fp(const DiagonalForm& phi);

/// Fast path on raw residues; returns a nonzero zero of sum c_i x_i^2 when one
/// exists. Coefficients must be nonzero residues mod p.
std::optional<std::vector<std::uint64_t>> find_zero_fp(std::span<const std::uint64_t> coeffs, std::uint64_t p);

}  // namespace cdalg
