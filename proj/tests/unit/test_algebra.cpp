#include <gtest/gtest.h>

#include <random>

#include "cdalg/algebra.hpp"
#include "cdalg/errors.hpp"
#include "oracles.hpp"

using namespace cdalg;

namespace {

std::vector<Element> ints(const Field& f, std::initializer_list<long> v) {
  std::vector<Element> out;
  for (long x : v) out.push_back(Element::from_int(f, x));
  return out;
}

CDElement vec(const Algebra& a, std::initializer_list<long> v) { return CDElement(a, ints(a->field(), v)); }

}  // namespace

TEST(Algebra, QuaternionTable) {
  const Field q = Field::rationals();
  const Algebra h = build_algebra(q, ints(q, {-1, -1}));
  const auto f = [&](std::size_t i) { return CDElement::basis(h, i - 1); };
  EXPECT_EQ(f(2) * f(3), f(4));
  EXPECT_EQ(f(3) * f(2), -f(4));
  EXPECT_EQ(f(4) * f(4), -CDElement::one(h));
}

TEST(Algebra, NoDoublings) {
  const Algebra k = build_algebra(Field::rationals(), {});
  EXPECT_EQ(k->dim(), 1U);
}

TEST(Algebra, BetasOverF3) {
  const Field f = Field::prime(3);
  const Algebra a = build_algebra(f, ints(f, {1, 1}));
  const auto betas = a->pure_betas();
  ASSERT_EQ(betas.size(), 3U);
  EXPECT_EQ(betas[0].to_string(), "1");
  EXPECT_EQ(betas[1].to_string(), "1");
  EXPECT_EQ(betas[2].to_string(), "2");
}

TEST(Algebra, BadParameters) {
  const Field q = Field::rationals();
  EXPECT_THROW(build_algebra(q, ints(q, {1, 0})), Error);
  EXPECT_THROW(build_algebra(q, {Element::from_int(Field::prime(3), 1)}), Error);
}

TEST(Algebra, SignTableMatchesDoublingRecursion) {
  for (const char* fd : {"Q", "Fp:5", "Q(X1..X2)"}) {
    const Field f = Field::parse(fd);
    std::mt19937_64 rng(11);
    for (int t = 1; t <= 4; ++t) {
      if (f.is_function_field() && t > 3) break;
      std::vector<Element> gammas;
      for (int j = 0; j < t; ++j) {
        Element g = Element::from_int(f, static_cast<long>(rng() % 7) - 3);
        if (g.is_zero()) g = Element::from_int(f, 2);
        if (f.is_function_field()) g = g * Element::variable(f, j % 2);
        gammas.push_back(g);
      }
      const Algebra a = build_algebra(f, gammas);
      for (int s = 0; s < 20; ++s) {
        const CDElement x = oracle::random_element(a, rng);
        const CDElement y = oracle::random_element(a, rng);
        const auto expected = oracle::doubling_multiply(gammas, x.coeffs(), y.coeffs());
        ASSERT_EQ((x * y).coeffs(), expected) << fd << " t=" << t;
        EXPECT_EQ(multiply_by_doubling(x, y), x * y);
        EXPECT_EQ(conjugate(x).coeffs(), oracle::doubling_conjugate(x.coeffs()));
      }
    }
  }
}

TEST(Algebra, UnitAndGeneratorSquares) {
  const Field q = Field::rationals();
  const Algebra a = build_algebra(q, ints(q, {3, -2, 5}));
  std::mt19937_64 rng(2);
  const CDElement x = oracle::random_element(a, rng);
  EXPECT_EQ(CDElement::one(a) * x, x);
  EXPECT_EQ(x * CDElement::one(a), x);
  // u_j = f at the top bit of doubling j squares to gamma_j.
  for (std::size_t j = 0; j < 3; ++j) {
    const CDElement u = CDElement::basis(a, std::size_t{1} << j);
    EXPECT_EQ(u * u, CDElement::scalar(a, a->gammas()[j]));
  }
}

TEST(Algebra, ConjugateTraceNorm) {
  const Field q = Field::rationals();
  const Algebra h = build_algebra(q, ints(q, {-1, -1}));
  EXPECT_EQ(conjugate(CDElement::one(h)), CDElement::one(h));
  EXPECT_EQ(conjugate(vec(h, {1, 2, 0, 0})), vec(h, {1, -2, 0, 0}));
  EXPECT_EQ(trace(CDElement::one(h)).to_string(), "2");
  EXPECT_EQ(norm(CDElement::one(h)).to_string(), "1");
  EXPECT_EQ(norm(vec(h, {1, 1, 0, 0})).to_string(), "2");

  const Algebra a = build_algebra(q, ints(q, {2, -3, 5}));
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    const CDElement x = oracle::random_element(a, rng);
    const CDElement y = oracle::random_element(a, rng);
    EXPECT_EQ(conjugate(conjugate(x)), x);
    EXPECT_EQ(x * conjugate(x), CDElement::scalar(a, norm(x)));
    EXPECT_EQ(conjugate(x * y), conjugate(y) * conjugate(x));
    EXPECT_EQ(x * x - x.scaled(trace(x)) + CDElement::scalar(a, norm(x)), CDElement::zero(a));
  }
}

TEST(Algebra, ScalarPureSplit) {
  const Field q = Field::rationals();
  const Algebra h = build_algebra(q, ints(q, {-1, -1}));
  auto [s1, p1] = scalar_pure_split(CDElement::one(h));
  EXPECT_TRUE(s1.is_one());
  EXPECT_TRUE(p1.is_zero());
  auto [s2, p2] = scalar_pure_split(CDElement::basis(h, 1));
  EXPECT_TRUE(s2.is_zero());
  EXPECT_EQ(p2, CDElement::basis(h, 1));
  auto [s3, p3] = scalar_pure_split(vec(h, {3, 2, 0, 1}));
  EXPECT_EQ(s3.to_string(), "3");
  EXPECT_EQ(p3, vec(h, {0, 2, 0, 1}));
}

TEST(Algebra, MismatchedAlgebrasThrow) {
  const Field q = Field::rationals();
  const Algebra a = build_algebra(q, ints(q, {-1}));
  const Algebra b = build_algebra(q, ints(q, {-2}));
  EXPECT_THROW(CDElement::one(a) * CDElement::one(b), Error);
}
