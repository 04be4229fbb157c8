#include <gtest/gtest.h>

#include <random>

#include "disctower/hensel.hpp"
#include "support.hpp"

using namespace disctower;
using namespace disctower::testing;

namespace {

ContextPtr ctx2() { return make_context({"x1", "x2"}); }

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::InvalidArgument;
}

// x2 * sqrt(1 + x2) below degree n, from binom(1/2, k).
MultiPoly binomial_branch(int n) {
  MultiPoly out(2);
  Scalar b = 1;
  for (int k = 0; k + 1 < n; ++k) {
    out.add_term(mono({0, k + 1}), b);
    b = b * q(1 - 2 * k, 2) / (k + 1);
  }
  return out;
}

// (1 - sqrt(1 - 4 x2)) / 2 = sum Catalan(k) x2^(k+1) below degree n.
MultiPoly catalan_branch(int n) {
  MultiPoly out(2);
  Scalar c = 1;
  for (int k = 0; k + 1 < n; ++k) {
    out.add_term(mono({0, k + 1}), c);
    c = c * q(2 * (2 * k + 1), k + 2);
  }
  return out;
}

}  // namespace

TEST(Hensel, ExactRootsAreFixed) {
  auto c = ctx2();
  Jet f = Jet::from_poly(c, poly(2, {{{2, 0}, q(1)}, {{1, 1}, q(-3)}, {{0, 2}, q(2)}}), 12);
  auto sol = hensel_lift_branches(f, 0, {jet(c, {{{0, 1}, q(1)}}, 12), jet(c, {{{0, 1}, q(2)}}, 12)}, 8);
  ASSERT_EQ(sol.branches.size(), 2u);
  EXPECT_EQ(sol.branches[0].body(), poly(2, {{{0, 1}, q(1)}}));
  EXPECT_EQ(sol.branches[1].body(), poly(2, {{{0, 1}, q(2)}}));
  EXPECT_TRUE(sol.branches[0].exact());
}

TEST(Hensel, BinomialSeriesBranch) {
  auto c = ctx2();
  Jet f = Jet::from_poly(c, poly(2, {{{2, 0}, q(1)}, {{0, 2}, q(-1)}, {{0, 3}, q(-1)}}), 20);
  Jet g = hensel_lift(f, 0, jet(c, {{{0, 1}, q(1)}}, 20), 9);
  EXPECT_EQ(g.body(), binomial_branch(9));
  EXPECT_EQ(g.body().coefficient(mono({0, 2})), q(1, 2));
  EXPECT_EQ(g.body().coefficient(mono({0, 3})), q(-1, 8));
  EXPECT_FALSE(g.exact());
}

TEST(Hensel, CatalanBranchWithUnitDerivative) {
  auto c = ctx2();
  Jet f = Jet::from_poly(c, poly(2, {{{2, 0}, q(1)}, {{1, 0}, q(-1)}, {{0, 1}, q(1)}}), 20);
  EXPECT_EQ(hensel_lift(f, 0, Jet::zero(c, 20), 10).body(), catalan_branch(10));
}

TEST(Hensel, DoubleRoot) {
  auto c = ctx2();
  Jet f = Jet::from_poly(c, poly(2, {{{2, 0}, q(1)}, {{1, 1}, q(-2)}, {{0, 2}, q(1)}}), 12);
  EXPECT_EQ(kind_of([&] { hensel_lift(f, 0, jet(c, {{{0, 1}, q(1)}}, 12), 6); }), ErrorKind::DerivativeNotUnit);
}

TEST(Hensel, SeedTooFar) {
  auto c = ctx2();
  Jet f = Jet::from_poly(c, poly(2, {{{2, 0}, q(1)}, {{0, 2}, q(-1)}, {{0, 3}, q(-1)}}), 20);
  EXPECT_EQ(kind_of([&] { hensel_lift(f, 0, jet(c, {{{0, 1}, q(2)}}, 20), 6); }), ErrorKind::SeedNotApproximate);
}

TEST(Hensel, TruncatedInputLimitsTarget) {
  auto c = ctx2();
  Jet f(c, poly(2, {{{2, 0}, q(1)}, {{0, 2}, q(-1)}, {{0, 3}, q(-1)}}), 8, false);
  EXPECT_EQ(hensel_lift(f, 0, jet(c, {{{0, 1}, q(1)}}, 8), 7).body(), binomial_branch(7));
  EXPECT_EQ(kind_of([&] { hensel_lift(f, 0, jet(c, {{{0, 1}, q(1)}}, 8), 8); }), ErrorKind::InconclusivePrecision);
}

TEST(HenselProperties, RecoversPlantedRoots) {
  std::mt19937_64 rng(41);
  auto c = make_context({"x1", "x2", "x3"});
  for (int trial = 0; trial < 30; ++trial) {
    // F = (x1 - R)(x1 - S): a unit derivative when S(0) != 0, order one otherwise.
    const bool tangent = trial % 2 == 1;
    MultiPoly r = random_poly(rng, 3, 3, 5, 6, false).restrict_to_zero({true, false, false});
    MultiPoly s = random_poly(rng, 3, 3, 4, 4, false).restrict_to_zero({true, false, false});
    if (tangent) {
      if (r.homogeneous_part(1) == s.homogeneous_part(1) || (r - s).homogeneous_part(1).is_zero()) continue;
    } else {
      s += MultiPoly::constant(3, Scalar(1 + trial % 3));
    }
    const MultiPoly x1 = MultiPoly::variable(3, 0);
    Jet f = Jet::from_poly(c, (x1 - r) * (x1 - s), 16);
    Jet seed = Jet::from_poly(c, r.truncated(2), 16);
    const int target = 7;
    Jet g = hensel_lift(f, 0, seed, target);
    EXPECT_EQ(g.body(), r.truncated(target));
    Jet longer = hensel_lift(f, 0, seed, target + 3);
    EXPECT_EQ(jet_truncate(longer, target).body(), g.body());
  }
}
