#include <gtest/gtest.h>

#include "cdalg/brown.hpp"
#include "cdalg/errors.hpp"
#include "cdalg/forms.hpp"
#include "cdalg/serialize.hpp"
#include "oracles.hpp"

using namespace cdalg;

TEST(Brown, Construction) {
  const BrownInstance b = build_brown(2, Field::rationals());
  EXPECT_EQ(b.field.to_string(), "Q(X1..X2)");
  EXPECT_EQ(b.algebra->dim(), 4U);
  EXPECT_EQ(b.algebra->gammas()[1], Element::variable(b.field, 1));
  EXPECT_THROW(build_brown(0, Field::rationals()), Error);
  EXPECT_THROW(build_brown(5, Field::rationals()), Error);
  EXPECT_THROW(build_brown(1, Field::parse("Q(X1)")), Error);
}

TEST(Brown, CertificatesAreAnisotropic) {
  for (const char* base : {"Q", "Fp:3", "Fp:5"}) {
    for (int t = 1; t <= 4; ++t) {
      const BrownInstance b = build_brown(t, Field::parse(base));
      const IsotropyResult r = division_certificate(b);
      EXPECT_TRUE(r.anisotropic()) << base << " t=" << t;
      ASSERT_TRUE(r.certificate.has_value());
      EXPECT_EQ(r.note.empty(), t < 4);
    }
  }
  const BrownInstance b1 = build_brown(1, Field::rationals());
  EXPECT_TRUE(norm_form(*b1.algebra).same_multiset(DiagonalForm::parse(b1.field, "1,-X1")));
  const BrownInstance b2 = build_brown(2, Field::rationals());
  EXPECT_TRUE(norm_form(*b2.algebra).same_multiset(DiagonalForm::parse(b2.field, "1,-X1,-X2,X1*X2")));
}

TEST(Brown, SamplerIsDeterministicAndWorkerIndependent) {
  const BrownInstance b = build_brown(2, Field::rationals());
  SamplerOptions o;
  o.samples = 60;
  const ZeroDivisorReport r1 = zero_divisor_sample_test(b.algebra, o);
  o.workers = 3;
  const ZeroDivisorReport r3 = zero_divisor_sample_test(b.algebra, o);
  EXPECT_EQ(dump(to_json(r1)), dump(to_json(r3)));
  EXPECT_EQ(sample_element(b.algebra, 2, 7, 5), sample_element(b.algebra, 2, 7, 5));
  EXPECT_NE(sample_element(b.algebra, 2, 7, 5), sample_element(b.algebra, 2, 8, 5));
}

TEST(Brown, NoZeroDivisorsAndNormsMultiply) {
  for (int t = 1; t <= 2; ++t) {
    const BrownInstance b = build_brown(t, Field::rationals());
    SamplerOptions o;
    o.samples = 200;
    EXPECT_EQ(zero_divisor_sample_test(b.algebra, o).counterexamples, 0U);
    for (std::uint64_t i = 0; i < 20; ++i) {
      const CDElement x = sample_element(b.algebra, 2, 1, 2 * i);
      const CDElement y = sample_element(b.algebra, 2, 1, 2 * i + 1);
      EXPECT_EQ(norm(x * y), norm(x) * norm(y));
      EXPECT_THROW(valuation_parity_refuter(b, x, y), Error);
    }
  }
}

TEST(Brown, ControlInstanceHasZeroDivisors) {
  const Field f = Field::prime(3);
  const Algebra a = build_algebra(f, {Element::one(f), Element::one(f)});
  SamplerOptions o;
  o.samples = 100;
  const ZeroDivisorReport r = zero_divisor_sample_test(a, o);
  EXPECT_GT(r.counterexamples, 0U);
  ASSERT_TRUE(r.first_pair.has_value());
  EXPECT_TRUE((r.first_pair->first * r.first_pair->second).is_zero());
  // (f_2 - 1)(f_2 + 1) = f_2^2 - 1 = 0
  const CDElement f2 = CDElement::basis(a, 1);
  EXPECT_TRUE(((f2 - CDElement::one(a)) * (f2 + CDElement::one(a))).is_zero());
}

TEST(Brown, RefuterPreconditions) {
  const BrownInstance b = build_brown(1, Field::rationals());
  const CDElement f2 = CDElement::basis(b.algebra, 1);
  try {
    valuation_parity_refuter(b, f2, f2);
    FAIL() << "expected ProductNotZero";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ProductNotZero);
  }
  try {
    valuation_parity_refuter(b, CDElement::zero(b.algebra), f2);
    FAIL() << "expected PreconditionViolation";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PreconditionViolation);
  }
}

TEST(Brown, RefuterCaseTwoOnSyntheticPair) {
  // Over A = F_3{1} (X := gamma_2 = 1 placeholder) a zero product with b = 0, a != 0.
  const Field f = Field::prime(3);
  const Algebra a = build_algebra(f, {Element::one(f), Element::one(f)});
  const CDElement f2 = CDElement::basis(a, 1);
  const CDElement x = f2 + CDElement::one(a);  // a = 1 + f_2, b = 0
  const CDElement y = f2 - CDElement::one(a);  // c = f_2 - 1, d = 0
  ASSERT_TRUE((x * y).is_zero());
  const Refutation r = valuation_parity_refuter(a, x, y);
  EXPECT_EQ(r.case_id, "ii");
  EXPECT_NE(r.explanation.find("d = c = 0"), std::string::npos);
  EXPECT_FALSE(r.broken_step.empty());
}

TEST(Brown, ParityOrdersOfClearedComponents) {
  const BrownInstance b = build_brown(1, Field::rationals());
  const Field& f = b.field;
  const CDElement x(b.algebra, {Element::parse(f, "X1^2"), Element::parse(f, "X1/(X1+1)")});
  const CDElement y(b.algebra, {Element::parse(f, "1"), Element::parse(f, "X1^3")});
  const ParityOrders o = parity_orders(x, y);
  EXPECT_EQ(o.m, 2);
  EXPECT_EQ(o.n, 1);
  EXPECT_EQ(o.p, 0);
  EXPECT_EQ(o.r, 3);
}
