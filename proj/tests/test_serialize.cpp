#include <gtest/gtest.h>

#include <random>

#include "disctower/serialize.hpp"
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

// dump -> parse -> rebuild -> dump must reproduce the bytes.
template <class T, class Read>
void expect_round_trip(const T& value, Read read) {
  const std::string once = dump(to_json(value));
  const std::string twice = dump(to_json(read(Json::parse(once))));
  EXPECT_EQ(once, twice);
}

Jet random_jet(std::mt19937_64& rng, const ContextPtr& c) {
  std::uniform_int_distribution<int> n(1, 8);
  const int prec = n(rng);
  return Jet(c, random_poly(rng, c->arity(), c->arity(), prec, 6), prec, rng() % 2 == 0);
}

}  // namespace

TEST(Serialize, JetShape) {
  auto c = make_context({"t", "x"}, {"t"});
  Jet a = jet(c, {{{0, 2}, q(3, 2)}, {{1, 0}, q(-1)}}, 4);
  const Json j = to_json(a);
  EXPECT_EQ(j["kind"], "jet");
  EXPECT_EQ(j["parameters"], Json::array({"t"}));
  EXPECT_EQ(j["terms"][1][1], "3/2");
  EXPECT_EQ(j["terms"][0][1], "-1/1");
  Jet back = jet_from_json(j);
  EXPECT_EQ(back.body(), a.body());
  EXPECT_TRUE(back.context()->is_parameter(0));
}

TEST(Serialize, RationalsAreCanonicalized) {
  Json j = to_json(jet(ctx2(), {{{1, 0}, q(1)}}, 3));
  j["terms"][0][1] = "4/6";
  EXPECT_EQ(jet_from_json(j).body().coefficient(mono({1, 0})), q(2, 3));
}

TEST(Serialize, Malformed) {
  Json good = to_json(jet(ctx2(), {{{1, 0}, q(1)}}, 3));
  auto with = [&](auto edit) {
    Json j = good;
    edit(j);
    return kind_of([&] { jet_from_json(j); });
  };
  EXPECT_EQ(with([](Json& j) { j["kind"] = "gdisc"; }), ErrorKind::ParseError);
  EXPECT_EQ(with([](Json& j) { j.erase("precision"); }), ErrorKind::ParseError);
  EXPECT_EQ(with([](Json& j) { j["precision"] = 0; }), ErrorKind::ParseError);
  EXPECT_EQ(with([](Json& j) { j["terms"][0][1] = "1/0"; }), ErrorKind::ParseError);
  EXPECT_EQ(with([](Json& j) { j["terms"][0][1] = 2; }), ErrorKind::ParseError);
  EXPECT_EQ(with([](Json& j) { j["terms"][0][0] = Json::array({1}); }), ErrorKind::ParseError);
  EXPECT_EQ(with([](Json& j) { j["terms"][0][0][0] = -1; }), ErrorKind::ParseError);
  EXPECT_EQ(with([](Json& j) { j["exact"] = 1; }), ErrorKind::ParseError);
}

TEST(Serialize, DistinctRoots) {
  expect_round_trip(DistinctRootReport::determined(3), distinct_roots_from_json);
  expect_round_trip(DistinctRootReport::inconclusive(2), distinct_roots_from_json);
  EXPECT_EQ(to_json(DistinctRootReport::determined(3))["count"], 3);
  Json j = to_json(DistinctRootReport::determined(1));
  j["status"] = "maybe";
  EXPECT_EQ(kind_of([&] { distinct_roots_from_json(j); }), ErrorKind::ParseError);
}

TEST(Serialize, NormalSystems) {
  auto c = ctx2();
  expect_round_trip(build_tower_set({jet(c, {{{0, 2}, q(1)}, {{3, 0}, q(-1)}}, 10)}), normal_system_from_json);
  expect_round_trip(build_tower_function({jet(c, {{{0, 2}, q(1)}}, 8)}), normal_system_from_json);
  auto c3 = make_context({"x1", "x2", "x3"});
  auto ns = build_tower_set({jet(c3, {{{0, 1, 1}, q(1)}, {{2, 0, 0}, q(1)}}, 8)});
  expect_round_trip(ns, normal_system_from_json);
  NormalSystem back = normal_system_from_json(Json::parse(dump(to_json(ns))));
  EXPECT_EQ(dump(to_json(verify_normal_system(back))), dump(to_json(verify_normal_system(ns))));
  expect_round_trip(verify_normal_system(ns), verification_from_json);
}

TEST(Serialize, VerificationFlagMustAgree) {
  auto ns = build_tower_set({jet(ctx2(), {{{0, 2}, q(1)}, {{3, 0}, q(-1)}}, 10)});
  Json j = to_json(verify_normal_system(ns));
  ASSERT_TRUE(j["all_symbolic_pass"].get<bool>());
  j["all_symbolic_pass"] = false;
  EXPECT_EQ(kind_of([&] { verification_from_json(j); }), ErrorKind::ParseError);
}

TEST(Serialize, Profile) {
  auto c = make_context({"t", "x"});
  auto f = UniOverJets(1, std::vector<Jet>{Jet::constant(c, 1, 6), Jet::zero(c, 6), jet(c, {{{1, 0}, q(-1)}}, 6)});
  auto prof = root_count_profile(f, SampleRegion{{0.5}, {}, 5});
  expect_round_trip(prof, profile_from_json);
  EXPECT_FALSE(to_json(prof)["constant"].get<bool>());
}

TEST(SerializeProperties, RoundTripsAreByteIdentical) {
  std::mt19937_64 rng(71);
  auto c = make_context({"x1", "x2", "x3"}, {"x1"});
  for (int trial = 0; trial < 60; ++trial) {
    Jet a = random_jet(rng, c);
    expect_round_trip(a, jet_from_json);

    std::vector<Jet> tail;
    const int p = 1 + trial % 3;
    for (int k = 0; k < p; ++k) tail.push_back(Jet(c, random_poly(rng, 3, 2, 5, 4), 6, true));
    auto f = UniOverJets::monic(2, tail, c, 6);
    expect_round_trip(f, polynomial_from_json);
    expect_round_trip(generalized_discriminants(f), gdisc_from_json);

    ScalarMatrix m(2, std::vector<Scalar>(2));
    for (auto& row : m)
      for (auto& s : row) s = random_scalar(rng, 9, 7);
    if (m[0][0] * m[1][1] == m[0][1] * m[1][0]) m[0][0] += 1;
    expect_round_trip(LinearChange(1, m), linear_change_from_json);

    expect_round_trip(BranchSolution{{a, random_jet(rng, c)}, 1 + trial % 5}, branches_from_json);
  }
}

TEST(SerializeProperties, PreparationRoundTrips) {
  std::mt19937_64 rng(72);
  auto c = ctx2();
  int done = 0;
  for (int trial = 0; trial < 40; ++trial) {
    MultiPoly g = random_poly(rng, 2, 2, 5, 5, false);
    g.add_term(mono({0, 1 + trial % 3}), q(1));
    Jet f = Jet::from_poly(c, g, 7);
    try {
      expect_round_trip(weierstrass_prepare(f, 1), preparation_from_json);
      ++done;
    } catch (const Error&) {
    }
  }
  EXPECT_GT(done, 10);
}

TEST(SerializeProperties, SetTowersRoundTrip) {
  std::mt19937_64 rng(73);
  auto c = make_context({"x1", "x2", "x3"});
  int done = 0;
  for (int trial = 0; trial < 15; ++trial) {
    MultiPoly g = random_poly(rng, 3, 3, 4, 4, false);
    g.add_term(mono({0, 0, 2}), q(1));
    try {
      auto ns = build_tower_set({Jet::from_poly(c, g, 7)});
      expect_round_trip(ns, normal_system_from_json);
      ++done;
    } catch (const Error&) {
    }
  }
  EXPECT_GT(done, 5);
}
