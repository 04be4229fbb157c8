#include <gtest/gtest.h>

#include <random>

#include "disctower/jet.hpp"
#include "disctower/linear_change.hpp"
#include "support.hpp"

using namespace disctower;
using namespace disctower::testing;

namespace {

ContextPtr xy() { return make_context({"x1", "x2"}); }
ContextPtr xyz() { return make_context({"x1", "x2", "x3"}); }

}  // namespace

TEST(Scalar, CanonicalFromString) {
  EXPECT_EQ(to_string(scalar_from_string("6/-4")), "-3/2");
  EXPECT_EQ(to_string(scalar_from_string("5")), "5/1");
  EXPECT_EQ(to_display_string(scalar_from_string("10/5")), "2");
  EXPECT_THROW(scalar_from_string("1/0"), Error);
  EXPECT_THROW(scalar_from_string("abc"), Error);
}

TEST(Jet, AddCancels) {
  auto c = xy();
  Jet a = jet(c, {{{1, 0}, q(1)}, {{0, 1}, q(1)}}, 4);
  Jet b = jet(c, {{{1, 0}, q(-1)}}, 4);
  EXPECT_EQ(jet_add(a, b), jet(c, {{{0, 1}, q(1)}}, 4));
}

TEST(Jet, AddUsesMinimumPrecision) {
  auto c = xy();
  Jet a = jet(c, {{{1, 0}, q(1)}}, 3, false);
  Jet b = jet(c, {{{2, 0}, q(1)}}, 5, false);
  Jet s = jet_add(a, b);
  EXPECT_EQ(s.precision(), 3);
  EXPECT_EQ(s.body(), poly(2, {{{1, 0}, q(1)}, {{2, 0}, q(1)}}));
}

TEST(Jet, AddZeroIsIdentity) {
  auto c = xy();
  Jet f = jet(c, {{{1, 1}, q(3, 2)}, {{0, 0}, q(-1)}}, 4);
  EXPECT_EQ(jet_add(Jet::zero(c, 4), f), f);
}

TEST(Jet, MulDifferenceOfSquares) {
  auto c = xy();
  Jet a = jet(c, {{{0, 0}, q(1)}, {{1, 0}, q(1)}}, 3);
  Jet b = jet(c, {{{0, 0}, q(1)}, {{1, 0}, q(-1)}}, 3);
  EXPECT_EQ(jet_mul(a, b).body(), poly(2, {{{0, 0}, q(1)}, {{2, 0}, q(-1)}}));
}

TEST(Jet, MulTruncatesOverflow) {
  auto c = xy();
  Jet p = jet_mul(jet(c, {{{1, 0}, q(1)}}, 4), jet(c, {{{3, 0}, q(1)}}, 4));
  EXPECT_TRUE(p.is_zero());
  EXPECT_EQ(p.precision(), 4);
  EXPECT_FALSE(p.exact());
}

TEST(Jet, CubeMatchesBinomialExpansion) {
  auto c = xy();
  Jet base = jet(c, {{{0, 0}, q(1)}, {{1, 0}, q(1)}}, 4);
  Jet cube = base * base * base;
  MultiPoly expected(2);
  Integer binom = 1;
  for (int k = 0; k <= 3; ++k) {
    expected.add_term(Monomial::variable(0, k), Scalar(binom));
    binom = binom * (3 - k) / (k + 1);
  }
  EXPECT_EQ(cube.body(), expected);
  EXPECT_TRUE(cube.exact());
}

TEST(Jet, InvertGeometricSeries) {
  auto c = xy();
  Jet inv = jet_invert_unit(jet(c, {{{0, 0}, q(1)}, {{1, 0}, q(-1)}}, 4));
  EXPECT_EQ(inv.body(), poly(2, {{{0, 0}, q(1)}, {{1, 0}, q(1)}, {{2, 0}, q(1)}, {{3, 0}, q(1)}}));
  EXPECT_FALSE(inv.exact());
}

TEST(Jet, InvertConstant) {
  auto c = xy();
  Jet inv = jet_invert_unit(Jet::constant(c, q(2), 3));
  EXPECT_EQ(inv.body(), poly(2, {{{0, 0}, q(1, 2)}}));
  EXPECT_TRUE(inv.exact());
}

TEST(Jet, InvertRejectsNonUnit) {
  auto c = xy();
  try {
    jet_invert_unit(Jet::variable(c, 0, 3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotAUnit);
  }
}

TEST(Jet, SubstituteShear) {
  auto c = xyz();
  Jet f = jet(c, {{{0, 1, 1}, q(1)}}, 5);
  LinearChange shear(1, {{q(1), q(1)}, {q(0), q(1)}});
  EXPECT_EQ(jet_substitute_linear(f, shear).body(), poly(3, {{{0, 0, 2}, q(1)}, {{0, 1, 1}, q(1)}}));
}

TEST(Jet, SubstituteIdentity) {
  auto c = xyz();
  Jet f = jet(c, {{{1, 2, 0}, q(2)}, {{0, 0, 1}, q(-1)}}, 5);
  EXPECT_EQ(jet_substitute_linear(f, LinearChange::identity(0, 3)), f);
}

TEST(Jet, SingularChangeRejected) {
  try {
    LinearChange bad(0, {{q(1), q(2)}, {q(2), q(4)}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SingularMatrix);
  }
}

TEST(Jet, Order) {
  auto c = xy();
  EXPECT_EQ(jet_order(jet(c, {{{2, 1}, q(1)}, {{5, 0}, q(1)}}, 8)), 3);
  EXPECT_EQ(jet_order(Jet::zero(c, 6)), std::nullopt);
  EXPECT_EQ(jet_order(Jet::constant(c, q(5), 6)), 0);
}

TEST(Jet, ContextMismatch) {
  Jet a = Jet::variable(xy(), 0, 3);
  Jet b = Jet::variable(make_context({"a", "b"}), 0, 3);
  try {
    jet_add(a, b);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ContextMismatch);
  }
}

TEST(JetProperties, RingAxioms) {
  std::mt19937_64 rng(11);
  auto c = xyz();
  for (int trial = 0; trial < 60; ++trial) {
    Jet a(c, random_poly(rng, 3, 3, 6, 6), 6);
    Jet b(c, random_poly(rng, 3, 3, 6, 6), 6);
    Jet d(c, random_poly(rng, 3, 3, 6, 6), 6);
    EXPECT_EQ(((a + b) + d).body(), (a + (b + d)).body());
    EXPECT_EQ((a * (b + d)).body(), (a * b + a * d).body());
    EXPECT_EQ((a * b).body(), (b * a).body());
  }
}

TEST(JetProperties, PrecisionCoherence) {
  std::mt19937_64 rng(12);
  auto c = xyz();
  const int n = 5;
  for (int trial = 0; trial < 60; ++trial) {
    MultiPoly pa = random_poly(rng, 3, 3, n + 5, 8);
    MultiPoly pb = random_poly(rng, 3, 3, n + 5, 8);
    Jet lo_a(c, pa, n), lo_b(c, pb, n);
    Jet hi_a(c, pa, n + 5), hi_b(c, pb, n + 5);
    EXPECT_EQ((lo_a * lo_b).body(), jet_truncate(hi_a * hi_b, n).body());
    EXPECT_EQ((lo_a + lo_b).body(), jet_truncate(hi_a + hi_b, n).body());
    if (sgn(pa.constant_term()) != 0) {
      EXPECT_EQ(jet_invert_unit(lo_a).body(), jet_truncate(jet_invert_unit(hi_a), n).body());
    }
  }
}

TEST(JetProperties, InverseIsInverse) {
  std::mt19937_64 rng(13);
  auto c = xyz();
  for (int trial = 0; trial < 60; ++trial) {
    MultiPoly p = random_poly(rng, 3, 3, 7, 7);
    p.add_term(Monomial{}, Scalar(trial % 4 + 1));
    if (sgn(p.constant_term()) == 0) continue;
    Jet a(c, p, 7);
    Jet residual = a * jet_invert_unit(a) - Jet::constant(c, q(1), 7);
    EXPECT_EQ(jet_order(residual), std::nullopt);
  }
}

TEST(JetProperties, SubstituteRoundTrip) {
  std::mt19937_64 rng(14);
  std::uniform_int_distribution<int> entry(-3, 3);
  auto c = xyz();
  for (int trial = 0; trial < 40; ++trial) {
    ScalarMatrix m(3, std::vector<Scalar>(3));
    for (auto& row : m) {
      for (auto& e : row) e = entry(rng);
    }
    if (sgn(LinearChange::determinant(m)) == 0) continue;
    LinearChange change(0, m);
    Jet f(c, random_poly(rng, 3, 3, 6, 6), 6);
    EXPECT_EQ(jet_substitute_linear(jet_substitute_linear(f, change), change.inverse()).body(), f.body());
  }
}

TEST(JetProperties, ScalarsStayCanonical) {
  std::mt19937_64 rng(15);
  auto c = xy();
  for (int trial = 0; trial < 40; ++trial) {
    MultiPoly p = random_poly(rng, 2, 2, 5, 6);
    p.add_term(Monomial{}, random_scalar(rng) + 7);
    Jet a(c, p, 5);
    Jet r = jet_invert_unit(a) * a + a * Scalar(3, 7);
    for (const auto& [m, v] : r.body().terms()) EXPECT_TRUE(is_canonical(v));
  }
}

TEST(MultiPoly, ExactDivision) {
  MultiPoly a = poly(2, {{{1, 0}, q(1)}, {{0, 1}, q(1)}});
  MultiPoly b = poly(2, {{{1, 0}, q(1)}, {{0, 1}, q(-1)}});
  auto quotient = (a * b).divide_exact(b);
  ASSERT_TRUE(quotient);
  EXPECT_EQ(*quotient, a);
  EXPECT_FALSE((a * b + MultiPoly::constant(2, q(1))).divide_exact(b));
}
