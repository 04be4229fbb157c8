#include <gtest/gtest.h>

#include <random>

#include "disctower/discriminants.hpp"
#include "support.hpp"

using namespace disctower;
using namespace disctower::testing;

namespace {

ContextPtr t_only() { return make_context({"T"}); }

// Monic polynomial over constant jets from its leading-first coefficients.
UniOverJets constant_poly(const std::vector<Scalar>& coeffs, int precision = 4) {
  auto c = t_only();
  std::vector<Jet> jets;
  for (const auto& v : coeffs) jets.push_back(Jet::constant(c, v, precision));
  return UniOverJets(0, jets);
}

// Expands prod (T - r) into leading-first coefficients.
std::vector<Scalar> expand_roots(const std::vector<Scalar>& roots) {
  std::vector<Scalar> c{Scalar(1)};
  for (const auto& r : roots) {
    std::vector<Scalar> next(c.size() + 1, Scalar(0));
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k] += c[k];
      next[k + 1] -= r * c[k];
    }
    c = next;
  }
  return c;
}

Scalar constant_of(const Jet& j) { return j.constant_term(); }

}  // namespace

TEST(PowerSums, QuadraticByHand) {
  // context (a1, a2, T), f = T^2 + a1 T + a2
  auto c = make_context({"a1", "a2", "T"});
  UniOverJets f(2, {Jet::constant(c, q(1), 6), Jet::variable(c, 0, 6), Jet::variable(c, 1, 6)});
  auto s = newton_power_sums(f, 2);
  EXPECT_EQ(s[0].body(), MultiPoly::constant(3, q(2)));
  EXPECT_EQ(s[1].body(), poly(3, {{{1, 0, 0}, q(-1)}}));
  EXPECT_EQ(s[2].body(), poly(3, {{{2, 0, 0}, q(1)}, {{0, 1, 0}, q(-2)}}));
}

TEST(PowerSums, PurePower) {
  auto s = newton_power_sums(constant_poly({q(1), q(0), q(0), q(0)}), 5);
  EXPECT_EQ(constant_of(s[0]), 3);
  for (int k = 1; k <= 5; ++k) EXPECT_TRUE(s[static_cast<std::size_t>(k)].is_zero());
}

TEST(PowerSums, SingleRoot) {
  auto s = newton_power_sums(constant_poly({q(1), q(-3, 2)}), 4);
  Scalar power = 1;
  for (int k = 0; k <= 4; ++k) {
    EXPECT_EQ(constant_of(s[static_cast<std::size_t>(k)]), power);
    power *= Scalar(3, 2);
  }
}

TEST(Gdisc, QuadraticMatchesHankelOracle) {
  auto c = make_context({"a1", "a2", "T"});
  UniOverJets f(2, {Jet::constant(c, q(1), 6), Jet::variable(c, 0, 6), Jet::variable(c, 1, 6)});
  auto d = generalized_discriminants(f);
  // det [[2, -a1], [-a1, a1^2 - 2 a2]] = a1^2 - 4 a2
  MultiPoly a1 = MultiPoly::variable(3, 0), a2 = MultiPoly::variable(3, 1);
  MultiPoly hankel = MultiPoly::constant(3, q(2)) * (a1 * a1 - a2 * Scalar(2)) - a1 * a1;
  EXPECT_EQ(d.entry(1).body(), hankel);
  EXPECT_EQ(d.entry(1).body(), a1 * a1 - a2 * Scalar(4));
  EXPECT_EQ(constant_of(d.entry(2)), 2);
}

TEST(Gdisc, DoubleRootCubic) {
  auto d = generalized_discriminants(constant_poly({q(1), q(0), q(-3), q(2)}));
  EXPECT_TRUE(d.entry(1).is_exact_zero());
  EXPECT_EQ(constant_of(d.entry(2)), 18);
  EXPECT_EQ(constant_of(d.entry(3)), 3);
  EXPECT_EQ(gdisc_from_roots_oracle({q(1), q(1), q(-2)}, 2), 18);
}

TEST(Gdisc, PurePowerHasOneDistinctRoot) {
  for (int p = 1; p <= 6; ++p) {
    std::vector<Scalar> coeffs(static_cast<std::size_t>(p) + 1, Scalar(0));
    coeffs[0] = 1;
    auto d = generalized_discriminants(constant_poly(coeffs));
    for (int j = 1; j < p; ++j) EXPECT_TRUE(d.entry(j).is_exact_zero());
    EXPECT_EQ(constant_of(d.entry(p)), p);
  }
}

TEST(CountDistinct, Examples) {
  using R = DistinctRootReport;
  EXPECT_EQ(count_distinct_roots(constant_poly({q(1), q(0), q(-3), q(2)})), R::determined(2));
  EXPECT_EQ(count_distinct_roots(constant_poly({q(1), q(0), q(-1), q(0)})), R::determined(3));
  EXPECT_EQ(constant_of(generalized_discriminants(constant_poly({q(1), q(0), q(-1), q(0)})).entry(1)), 4);
  EXPECT_EQ(count_distinct_roots(constant_poly({q(1), q(0), q(0), q(0), q(0)})), R::determined(1));
}

TEST(CountDistinct, TruncatedZeroIsInconclusive) {
  auto c = make_context({"x", "T"});
  // T^2 + a2 where a2 is only known to vanish below degree 3.
  UniOverJets f(1, {Jet::constant(c, q(1), 3), Jet::zero(c, 3), Jet(c, MultiPoly(2), 3, false)});
  EXPECT_EQ(count_distinct_roots(f), DistinctRootReport::inconclusive(1));
}

TEST(CountDistinct, RejectsNonMonic) {
  try {
    count_distinct_roots(constant_poly({q(2), q(1)}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotMonic);
  }
}

TEST(SylvesterOracle, Examples) {
  auto c = make_context({"a1", "a2", "T"});
  UniOverJets f(2, {Jet::constant(c, q(1), 6), Jet::variable(c, 0, 6), Jet::variable(c, 1, 6)});
  MultiPoly a1 = MultiPoly::variable(3, 0), a2 = MultiPoly::variable(3, 1);
  EXPECT_EQ(classical_discriminant_oracle(f).body(), a1 * a1 - a2 * Scalar(4));
  EXPECT_EQ(constant_of(classical_discriminant_oracle(constant_poly({q(1), q(0), q(-1), q(0)}))), 4);
  EXPECT_TRUE(classical_discriminant_oracle(constant_poly({q(1), q(0), q(0)})).is_zero());
}

TEST(RootsOracle, Examples) {
  EXPECT_EQ(gdisc_from_roots_oracle({q(0), q(1), q(-1)}, 1), 4);
  EXPECT_EQ(gdisc_from_roots_oracle({q(7, 3)}, 1), 1);
  try {
    gdisc_from_roots_oracle({q(1)}, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::IndexOutOfRange);
  }
}

TEST(GdiscProperties, AgreesWithRootOracle) {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> degree(1, 6);
  for (int trial = 0; trial < 80; ++trial) {
    const int p = degree(rng);
    std::vector<Scalar> roots;
    for (int k = 0; k < p; ++k) {
      // Repeats are common so that higher indices get exercised.
      if (k > 0 && rng() % 3 == 0) {
        roots.push_back(roots[rng() % roots.size()]);
      } else {
        roots.push_back(random_scalar(rng, 4, 2));
      }
    }
    auto d = generalized_discriminants(constant_poly(expand_roots(roots)));
    for (int j = 1; j <= p; ++j) EXPECT_EQ(constant_of(d.entry(j)), gdisc_from_roots_oracle(roots, j));
  }
}

TEST(GdiscProperties, DeltaOneMatchesResultant) {
  std::mt19937_64 rng(22);
  std::uniform_int_distribution<int> degree(1, 5);
  auto c = make_context({"x1", "x2", "T"});
  for (int trial = 0; trial < 30; ++trial) {
    const int p = degree(rng);
    std::vector<Jet> coeffs{Jet::constant(c, q(1), 6)};
    for (int k = 0; k < p; ++k) coeffs.emplace_back(c, random_poly(rng, 3, 2, 6, 4), 6, trial % 2 == 0);
    UniOverJets f(2, coeffs);
    EXPECT_EQ(generalized_discriminants(f).entry(1).body(), classical_discriminant_oracle(f).body());
  }
}

TEST(GdiscProperties, VanishingCharacterization) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 60; ++trial) {
    const int d = 1 + static_cast<int>(rng() % 4);
    std::vector<Scalar> distinct;
    while (static_cast<int>(distinct.size()) < d) {
      Scalar r = random_scalar(rng, 6, 2);
      if (std::find(distinct.begin(), distinct.end(), r) == distinct.end()) distinct.push_back(r);
    }
    std::vector<Scalar> roots;
    for (const auto& r : distinct) {
      const int m = 1 + static_cast<int>(rng() % 2);
      for (int k = 0; k < m; ++k) roots.push_back(r);
    }
    EXPECT_EQ(count_distinct_roots(constant_poly(expand_roots(roots))), DistinctRootReport::determined(d));
  }
}

TEST(GdiscProperties, LastEntryIsDegree) {
  std::mt19937_64 rng(24);
  auto c = make_context({"x1", "T"});
  for (int p = 1; p <= 6; ++p) {
    std::vector<Jet> coeffs{Jet::constant(c, q(1), 5)};
    for (int k = 0; k < p; ++k) coeffs.emplace_back(c, random_poly(rng, 2, 1, 5, 3), 5, false);
    auto d = generalized_discriminants(UniOverJets(1, coeffs));
    EXPECT_EQ(d.entry(p).body(), MultiPoly::constant(2, Scalar(p)));
  }
}

TEST(GdiscProperties, ShiftInvariant) {
  std::mt19937_64 rng(25);
  auto c = make_context({"x1", "T"});
  for (int trial = 0; trial < 30; ++trial) {
    const int p = 1 + static_cast<int>(rng() % 5);
    std::vector<Jet> coeffs{Jet::constant(c, q(1), 5)};
    for (int k = 0; k < p; ++k) coeffs.emplace_back(c, random_poly(rng, 2, 1, 5, 3), 5, true);
    UniOverJets f(1, coeffs);
    auto d = generalized_discriminants(f);
    auto e = generalized_discriminants(uni_shift(f, random_scalar(rng)));
    for (int j = 1; j <= p; ++j) EXPECT_EQ(d.entry(j).body(), e.entry(j).body());
  }
}
