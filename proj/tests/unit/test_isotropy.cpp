#include <gtest/gtest.h>

#include <random>
#include <set>

#include "cdalg/errors.hpp"
#include "cdalg/isotropy.hpp"
#include "oracles.hpp"

using namespace cdalg;
using oracle::form_of;

namespace {

void expect_witness(const DiagonalForm& phi, const IsotropyResult& r) {
  ASSERT_TRUE(r.witness.has_value()) << phi.to_string();
  bool nonzero = false;
  for (const auto& e : *r.witness) nonzero = nonzero || !e.is_zero();
  EXPECT_TRUE(nonzero);
  EXPECT_TRUE(phi.evaluate(*r.witness).is_zero()) << phi.to_string();
}

std::vector<mpz_class> primes_dividing(const mpq_class& a, const mpq_class& b) {
  std::set<mpz_class> out{2};
  for (mpz_class n : {mpz_class(a.get_num()), mpz_class(a.get_den()), mpz_class(b.get_num()), mpz_class(b.get_den())}) {
    n = abs(n);
    while (n > 1 && n % 2 == 0) n /= 2;
    for (mpz_class p = 3; p * p <= n; p += 2) {
      if (n % p == 0) {
        out.insert(p);
        while (n % p == 0) n /= p;
      }
    }
    if (n > 1) out.insert(n);
  }
  return {out.begin(), out.end()};
}

}  // namespace

TEST(Isotropy, FiniteFieldExamples) {
  const Field f3 = Field::prime(3), f5 = Field::prime(5);
  const auto r = isotropic(form_of(f3, {1, 1, 1}));
  EXPECT_TRUE(r.isotropic());
  expect_witness(form_of(f3, {1, 1, 1}), r);
  EXPECT_TRUE(isotropic(form_of(f3, {1, 1})).anisotropic());
  const auto r5 = isotropic(form_of(f5, {1, 1}));
  EXPECT_TRUE(r5.isotropic());
  expect_witness(form_of(f5, {1, 1}), r5);
}

TEST(Isotropy, FiniteFieldMatchesExhaustiveSearch) {
  std::mt19937_64 rng(17);
  for (std::uint64_t p : {3ULL, 5ULL, 7ULL}) {
    const Field f = Field::prime(p);
    for (int rep = 0; rep < 120; ++rep) {
      const std::size_t n = 1 + rng() % (p == 7 ? 5 : 6);
      std::vector<std::uint64_t> c;
      std::vector<long> cl;
      for (std::size_t i = 0; i < n; ++i) {
        c.push_back(1 + rng() % (p - 1));
        cl.push_back(static_cast<long>(c.back()));
      }
      const DiagonalForm phi = form_of(f, cl);
      const IsotropyResult r = isotropic_fp(phi);
      const bool expected = oracle::fp_zero_exhaustive(c, p).has_value();
      ASSERT_EQ(r.isotropic(), expected) << phi.to_string() << " over F_" << p;
      if (expected) expect_witness(phi, r);
      if (n >= 3) {
        EXPECT_TRUE(r.isotropic());
      }
    }
  }
}

TEST(Isotropy, HilbertSymbolExamples) {
  const Place real = Place::infinity();
  EXPECT_EQ(hilbert_symbol(-1, -1, real), -1);
  EXPECT_EQ(hilbert_symbol(-1, -1, Place::prime(2)), -1);
  EXPECT_EQ(hilbert_symbol(-1, -1, Place::prime(3)), 1);
  for (long b : {-7, -2, 3, 10}) {
    for (long p : {2, 3, 5, 7}) EXPECT_EQ(hilbert_symbol(1, b, Place::prime(p)), 1);
    EXPECT_EQ(hilbert_symbol(1, b, real), 1);
  }
  EXPECT_EQ(hilbert_symbol(2, 5, Place::prime(5)), -1);
  EXPECT_EQ(hilbert_symbol(3, 3, Place::prime(3)), -1);
}

TEST(Isotropy, HilbertSymbolProductFormula) {
  std::mt19937_64 rng(23);
  for (int rep = 0; rep < 300; ++rep) {
    auto draw = [&] {
      long v = 0;
      while (v == 0) v = static_cast<long>(rng() % 121) - 60;
      return mpq_class(v, 1 + rng() % 12);
    };
    mpq_class a = draw(), b = draw();
    a.canonicalize();
    b.canonicalize();
    int prod = hilbert_symbol(a, b, Place::infinity());
    for (const auto& p : primes_dividing(a, b)) prod *= hilbert_symbol(a, b, Place::prime(p));
    EXPECT_EQ(prod, 1) << a << ", " << b;
    // (a, b) = 1 exactly when a x^2 + b y^2 = z^2 has a rational zero, so a
    // zero found by search forces every local symbol to be 1.
    if (oracle::q_zero_box({a.get_num().get_si() * a.get_den().get_si(), b.get_num().get_si() * b.get_den().get_si(), -1}, 12)) {
      for (const auto& p : primes_dividing(a, b)) EXPECT_EQ(hilbert_symbol(a, b, Place::prime(p)), 1);
    }
  }
}

TEST(Isotropy, RationalExamples) {
  const Field q = Field::rationals();
  EXPECT_TRUE(isotropic(form_of(q, {1, 1, 1, 1})).anisotropic());
  const auto r = isotropic(form_of(q, {1, -1}));
  EXPECT_TRUE(r.isotropic());
  expect_witness(form_of(q, {1, -1}), r);
  EXPECT_TRUE(isotropic(form_of(q, {1, 1, -3})).anisotropic());
  EXPECT_FALSE(oracle::q_zero_box({1, 1, -3}, 50).has_value());
  const auto r5 = isotropic(form_of(q, {1, 1, 1, 1, -7}));
  EXPECT_TRUE(r5.isotropic());
  EXPECT_TRUE(isotropic(form_of(q, {1, 1, 1, 1, 1})).anisotropic());
}

TEST(Isotropy, RationalAgreesWithBoxSearch) {
  std::mt19937_64 rng(29);
  const Field q = Field::rationals();
  for (int rep = 0; rep < 120; ++rep) {
    const std::size_t n = 2 + rng() % 3;
    std::vector<long> c;
    for (std::size_t i = 0; i < n; ++i) {
      long v = 0;
      while (v == 0) v = static_cast<long>(rng() % 21) - 10;
      c.push_back(v);
    }
    const DiagonalForm phi = form_of(q, c);
    const IsotropyResult r = isotropic_q(phi);
    ASSERT_NE(r.verdict, Verdict::Unknown);
    const auto box = oracle::q_zero_box(c, n == 4 ? 8 : 20);
    if (box) {
      EXPECT_TRUE(r.isotropic()) << phi.to_string();
    }
    if (r.isotropic() && r.witness) expect_witness(phi, r);
  }
}

TEST(Isotropy, BruteForce) {
  const Field q = Field::rationals();
  EXPECT_TRUE(isotropic_bruteforce(form_of(Field::prime(3), {1, 1, 1}), 1).isotropic());
  EXPECT_TRUE(isotropic_bruteforce(form_of(Field::prime(3), {1, 1}), 1).anisotropic());
  EXPECT_EQ(isotropic_bruteforce(form_of(q, {1, 1}), 10).verdict, Verdict::Unknown);
  EXPECT_EQ(isotropic_bruteforce(form_of(q, {1, -2}), 2).verdict, Verdict::Unknown);
  EXPECT_TRUE(isotropic_bruteforce(form_of(q, {1, -1}), 1).isotropic());
  BruteForceOptions tiny;
  tiny.max_candidates = 10;
  EXPECT_THROW(isotropic_bruteforce(form_of(Field::prime(7), {1, 1, 1, 1}), 1, tiny), Error);
}

TEST(Isotropy, MonomialCertificates) {
  const Field f1 = Field::parse("Q(X1)");
  const Field f2 = Field::parse("Q(X1..X2)");
  auto form = [](const Field& f, const char* s) { return DiagonalForm::parse(f, s); };

  const auto r1 = monomial_anisotropy_certificate(form(f1, "1,-X1"));
  EXPECT_TRUE(r1.anisotropic());
  ASSERT_TRUE(r1.certificate.has_value());
  EXPECT_EQ(r1.certificate->children.size(), 2U);

  const auto r2 = monomial_anisotropy_certificate(form(f1, "1,-1"));
  EXPECT_TRUE(r2.isotropic());
  expect_witness(form(f1, "1,-1"), r2);

  EXPECT_TRUE(monomial_anisotropy_certificate(form(f2, "1,-X1,-X2,X1*X2")).anisotropic());
  EXPECT_TRUE(monomial_anisotropy_certificate(form(f2, "1,X1,X2,X1*X2")).anisotropic());
  // Odd-part residue <1, -1> is isotropic, so the form is too.
  const auto r3 = monomial_anisotropy_certificate(form(f1, "1,X1,-X1"));
  EXPECT_TRUE(r3.isotropic());
  expect_witness(form(f1, "1,X1,-X1"), r3);
  const auto r4 = monomial_anisotropy_certificate(form(f1, "X1^2,-4"));
  EXPECT_TRUE(r4.isotropic());
  expect_witness(form(f1, "X1^2,-4"), r4);
  EXPECT_THROW(monomial_anisotropy_certificate(form(f1, "1,1+X1")), Error);
}

TEST(Isotropy, CertificateAgreesWithDegreeParity) {
  // Over Q(X1), <a X1^i, b X1^j> is isotropic iff i = j mod 2 and -b/a is a rational square.
  const Field f = Field::parse("Q(X1)");
  const Element x = Element::variable(f, 0);
  for (long a : {1, -1, 2, -2, 3}) {
    for (long b : {1, -1, 2, -2, -4, 8}) {
      for (unsigned i = 0; i < 3; ++i) {
        for (unsigned j = 0; j < 3; ++j) {
          const DiagonalForm phi(f, {Element::from_int(f, a) * x.pow(i), Element::from_int(f, b) * x.pow(j)});
          mpq_class ratio(-b, a);
          ratio.canonicalize();
          const bool expected = (i + j) % 2 == 0 && is_square(Element::from_rational(Field::rationals(), ratio)).has_value();
          EXPECT_EQ(monomial_anisotropy_certificate(phi).isotropic(), expected) << phi.to_string();
        }
      }
    }
  }
}

TEST(Isotropy, CertificateAgreesWithBruteForceOnIsotropicSide) {
  const Field f = Field::parse("Fp:3(X1)");
  std::mt19937_64 rng(31);
  for (int rep = 0; rep < 40; ++rep) {
    std::vector<Element> c;
    for (int i = 0; i < 3; ++i) {
      c.push_back(Element::from_int(f, 1 + static_cast<long>(rng() % 2)) * Element::variable(f, 0).pow(rng() % 3));
    }
    const DiagonalForm phi(f, c);
    const auto cert = monomial_anisotropy_certificate(phi);
    const auto brute = isotropic_bruteforce(phi, 1);
    if (brute.isotropic()) {
      EXPECT_TRUE(cert.isotropic()) << phi.to_string();
    }
    if (cert.isotropic()) expect_witness(phi, cert);
  }
}

TEST(Isotropy, Represents) {
  const Field f5 = Field::prime(5), q = Field::rationals();
  const auto r = represents(form_of(f5, {1, 1}), Element::from_int(f5, -1));
  EXPECT_EQ(r.answer, Answer::Yes);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ(form_of(f5, {1, 1}).evaluate(*r.witness), Element::from_int(f5, -1));

  const auto r7 = represents(form_of(q, {1, -1}), Element::from_int(q, 7));
  EXPECT_EQ(r7.answer, Answer::Yes);
  ASSERT_TRUE(r7.witness.has_value());
  EXPECT_EQ(form_of(q, {1, -1}).evaluate(*r7.witness), Element::from_int(q, 7));

  EXPECT_EQ(represents(form_of(q, {1, 1}), Element::from_int(q, -1)).answer, Answer::No);
  EXPECT_EQ(represents(form_of(q, {1, 1}), Element::from_int(q, 3)).answer, Answer::No);
  EXPECT_EQ(represents(form_of(q, {1, 1}), Element::from_int(q, 5)).answer, Answer::Yes);
  EXPECT_THROW(represents(form_of(q, {1, 1}), Element::zero(q)), Error);
}

TEST(Isotropy, IsotropicFormsAreUniversalOverFp) {
  std::mt19937_64 rng(37);
  for (std::uint64_t p : {3ULL, 5ULL, 7ULL}) {
    const Field f = Field::prime(p);
    for (int rep = 0; rep < 30; ++rep) {
      std::vector<long> c;
      const std::size_t n = 2 + rng() % 3;
      for (std::size_t i = 0; i < n; ++i) c.push_back(1 + static_cast<long>(rng() % (p - 1)));
      const DiagonalForm phi = form_of(f, c);
      if (!isotropic_fp(phi).isotropic()) continue;
      EXPECT_EQ(value_set_fp(phi).size(), p) << phi.to_string();
    }
  }
}

TEST(Isotropy, PfisterFormAndPureSubformAgreeOverFp) {
  for (std::uint64_t p : {3ULL, 5ULL, 7ULL}) {
    const Field f = Field::prime(p);
    for (long a = 1; a < static_cast<long>(p); ++a) {
      for (long b = 1; b < static_cast<long>(p); ++b) {
        const DiagonalForm phi = pfister(f, std::vector<Element>{Element::from_int(f, a), Element::from_int(f, b)});
        EXPECT_EQ(isotropic(phi).isotropic(), isotropic(pure_subform(phi)).isotropic());
      }
    }
  }
}
