// Copyright 2026 The gptkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <numeric>
#include <set>

#include "gptkit/catalog.hpp"
#include "gptkit/error.hpp"
#include "gptkit/model_io.hpp"
#include "gptkit/symmetric.hpp"
#include "gptkit/testspace.hpp"
#include "oracle.hpp"

namespace gptkit {
namespace {

using oracle::qv;

std::size_t brute_automorphism_count(const TestSpace& ts) {
  std::set<Test> family(ts.tests().begin(), ts.tests().end());
  std::vector<std::size_t> p(ts.size());
  std::iota(p.begin(), p.end(), 0);
  std::size_t count = 0;
  do {
    bool ok = true;
    for (const auto& t : ts.tests()) {
      Test img;
      for (auto x : t) img.push_back(p[x]);
      std::sort(img.begin(), img.end());
      if (!family.count(img)) {
        ok = false;
        break;
      }
    }
    count += ok;
  } while (std::next_permutation(p.begin(), p.end()));
  return count;
}

TEST(TestSpace, RejectsUncoveredOutcome) {
  EXPECT_THROW(TestSpace({"a", "b", "c"}, {{0, 1}}), ValidationError);
}

TEST(TestSpace, RejectsEmptyAndDuplicateTests) {
  EXPECT_THROW(TestSpace({"a"}, {{0}, {}}), ValidationError);
  EXPECT_THROW(TestSpace({"a", "b"}, {{0, 1}, {1, 0}}), ValidationError);
}

TEST(PureStates, FireflyHasFiveIncludingEpsilon) {
  Model m = Model::full(catalog::firefly());
  // Outcome order: a, x, b, y, c, z.
  std::vector<Weight> expected = {
      qv({"0", "0", "1", "0", "0", "1"}), qv({"0", "1", "0", "0", "1", "0"}),
      qv({"0", "1", "0", "1", "0", "1"}), qv({"1/2", "0", "1/2", "0", "1/2", "0"}),
      qv({"1", "0", "0", "1", "0", "0"})};
  EXPECT_EQ(enumerate_pure_states(m), expected);
}

TEST(PureStates, SquareBitIsUnitSquare) {
  auto v = enumerate_pure_states(Model::full(catalog::square_bit()));
  std::set<std::pair<Q, Q>> corners;
  for (const auto& w : v) corners.insert({w[0], w[2]});
  std::set<std::pair<Q, Q>> square = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
  EXPECT_EQ(v.size(), 4u);
  EXPECT_EQ(corners, square);
}

TEST(PureStates, StatelessTestSpaceThrows) {
  EXPECT_THROW(enumerate_pure_states(Model::full(catalog::stateless())), EmptyStateSpace);
}

TEST(PureStates, MatchesSupportBruteForce) {
  std::vector<TestSpace> spaces = {catalog::square_bit(), catalog::firefly(),
                                   TestSpace({"p", "q", "r", "s"}, {{0, 1}, {1, 2}, {2, 3}})};
  for (std::size_t n = 2; n <= 8; ++n) spaces.push_back(catalog::classical(n));
  for (const auto& ts : spaces) {
    EXPECT_EQ(enumerate_pure_states(Model::full(ts)), oracle::weight_vertices(ts));
  }
}

TEST(PureStates, VerticesSatisfyTestSums) {
  for (const char* name : {"squarebit", "firefly", "grid3", "graph3", "ngon:5", "classical:4"}) {
    Model m = catalog::builtin(name);
    for (const auto& w : m.pure_states()) EXPECT_TRUE(is_weight(m.test_space(), w)) << name;
  }
}

TEST(PureStates, GridThreeIsBirkhoff) {
  auto v = enumerate_pure_states(Model::full(catalog::grid(3)));
  ASSERT_EQ(v.size(), 6u);
  for (const auto& w : v) {
    for (std::size_t i = 0; i < 3; ++i) {
      Q row = 0;
      for (std::size_t j = 0; j < 3; ++j) {
        EXPECT_TRUE(w[i * 3 + j] == 0 || w[i * 3 + j] == 1);
        row += w[i * 3 + j];
      }
      EXPECT_EQ(row, 1);
    }
  }
}

TEST(PureStates, GeneratedModelDropsInteriorGenerators) {
  TestSpace sq = catalog::square_bit();
  Model m = Model::generated(sq, {qv({"1", "0", "1", "0"}), qv({"0", "1", "0", "1"}),
                                  qv({"1/2", "1/2", "1/2", "1/2"})});
  EXPECT_EQ(m.pure_states().size(), 2u);
}

TEST(Classify, SimplexIsClassical) {
  for (std::size_t n = 2; n <= 6; ++n) {
    EXPECT_EQ(classify_classicality(Model::full(catalog::classical(n))), Classicality::kClassical);
  }
}

TEST(Classify, FireflyIsPartition) {
  EXPECT_EQ(classify_classicality(Model::full(catalog::firefly())), Classicality::kPartition);
}

TEST(Classify, SquareBitDispersionFreeStatesSeparate) {
  // Four dispersion-free vertices, unital and separating but not sharp.
  Model m = Model::full(catalog::square_bit());
  StatePredicates p = state_predicates(m);
  EXPECT_EQ(p.dispersion_free.size(), 4u);
  EXPECT_TRUE(p.unital);
  EXPECT_TRUE(p.separating);
  EXPECT_FALSE(p.sharp);
  EXPECT_EQ(classify_classicality(m), Classicality::kPartition);
}

TEST(Predicates, Firefly) {
  StatePredicates p = state_predicates(Model::full(catalog::firefly()));
  EXPECT_TRUE(p.unital);
  EXPECT_FALSE(p.sharp);
  EXPECT_TRUE(p.separating);
  EXPECT_EQ(p.dispersion_free.size(), 4u);
}

TEST(Predicates, SimplexAllTrue) {
  StatePredicates p = state_predicates(Model::full(catalog::classical(4)));
  EXPECT_TRUE(p.unital && p.sharp && p.separating);
}

TEST(Predicates, GridUnital) {
  EXPECT_TRUE(state_predicates(Model::full(catalog::grid(3))).unital);
}

TEST(Predicates, SharpImpliesUnital) {
  for (const char* name :
       {"squarebit", "firefly", "grid3", "graph3", "ngon:3", "ngon:4", "ngon:6", "classical:3"}) {
    StatePredicates p = state_predicates(catalog::builtin(name));
    if (p.sharp) EXPECT_TRUE(p.unital) << name;
  }
}

TEST(Distinguish, SquareBitCornerPair) {
  Model m = Model::full(catalog::square_bit());
  // (α(x), α(y)) = (1, 0) and (0, 0).
  auto d = distinguishability(m, {qv({"1", "0", "0", "1"}), qv({"0", "1", "0", "1"})});
  ASSERT_TRUE(d.has_value());
  EXPECT_EQ(m.test_space().tests()[d->test], (gptkit::Test{0, 1}));
  EXPECT_EQ(d->outcomes, (std::vector<std::size_t>{0, 1}));
}

TEST(Distinguish, IdenticalStatesFail) {
  Model m = Model::full(catalog::square_bit());
  Weight w = qv({"1", "0", "0", "1"});
  EXPECT_FALSE(distinguishability(m, {w, w}).has_value());
}

TEST(Distinguish, GridStates) {
  Model m = Model::full(catalog::grid(3));
  Weight uniform(9, Q(1, 3));
  // The uniform state is certain of nothing, so it cannot be told apart.
  EXPECT_FALSE(distinguishability(m, {m.pure_states()[0], uniform}).has_value());
  auto pure = m.pure_states();
  auto d = distinguishability(m, {pure[0], pure[5]});
  ASSERT_TRUE(d.has_value());
  EXPECT_EQ(pure[0][d->outcomes[0]], 1);
  EXPECT_EQ(pure[5][d->outcomes[1]], 1);
}

TEST(Lift, FireflyBecomesNineOutcomes) {
  ContextualLift l = lift_contextual(catalog::firefly());
  EXPECT_EQ(l.lifted.size(), 9u);
  EXPECT_EQ(l.lifted.tests().size(), 3u);
  Model m = Model::full(catalog::firefly());
  for (const auto& w : m.pure_states()) {
    EXPECT_TRUE(is_weight(l.lifted, l.pullback(w)));
  }
}

TEST(Lift, SingleTestIsCopy) {
  ContextualLift l = lift_contextual(catalog::classical(3));
  EXPECT_EQ(l.lifted.size(), 3u);
  EXPECT_EQ(l.lifted.tests(), catalog::classical(3).tests());
}

TEST(Lift, SquareBitPullbackPreservesWeights) {
  ContextualLift l = lift_contextual(catalog::square_bit());
  EXPECT_EQ(l.lifted.size(), 4u);
  EXPECT_EQ(l.lifted.tests().size(), 2u);
  EXPECT_TRUE(is_weight(l.lifted, l.pullback(qv({"1/3", "2/3", "1/5", "4/5"}))));
}

TEST(Automorphisms, MatchBruteForce) {
  for (const auto& ts : {catalog::square_bit(), catalog::firefly(), catalog::classical(4),
                         catalog::classical(5)}) {
    EXPECT_EQ(automorphism_group(ts).order, Z(brute_automorphism_count(ts)));
  }
  EXPECT_EQ(automorphism_group(catalog::square_bit()).order, 8);
  EXPECT_EQ(automorphism_group(catalog::classical(5)).order, 120);
}

TEST(Automorphisms, FireflyKeepsCornerOutcomesApart) {
  TestSpace ff = catalog::firefly();
  std::set<std::size_t> corners = {0, 2, 4};
  for (const auto& g : automorphism_group(ff).generators) {
    for (auto c : corners) EXPECT_TRUE(corners.count(g[c]));
  }
}

TEST(Automorphisms, GuardRefusesLargeSpaces) {
  EXPECT_THROW(automorphism_group(catalog::grid(5), 24), SizeGuardExceeded);
}

PermGroup two_blocks_s3() {
  return join(symmetric_group_on({0, 1, 2}, 6), symmetric_group_on({3, 4, 5}, 6));
}

TEST(Symmetric, GridFromWreathProduct) {
  PermGroup swap{6, {{3, 4, 5, 0, 1, 2}}};
  PermGroup g = join(two_blocks_s3(), swap);
  PermGroup h = symmetric_group_on({0, 1, 2}, 6);
  PermGroup k = setwise_stabilizer(g, {0, 3});
  SymmetricTestSpace s = build_symmetric_testspace(g, h, k, {0, 1, 2});
  EXPECT_EQ(s.test_space.size(), 9u);
  EXPECT_EQ(s.test_space.tests().size(), 6u);
  EXPECT_EQ(Model::full(s.test_space).pure_states().size(), 6u);
  EXPECT_EQ(automorphism_group(s.test_space).order, automorphism_group(catalog::grid(3)).order);
}

TEST(Symmetric, GraphFromDiagonal) {
  PermGroup g = two_blocks_s3();
  PermGroup h{6, {{1, 0, 2, 4, 3, 5}, {1, 2, 0, 4, 5, 3}}};
  PermGroup k = setwise_stabilizer(g, {0, 3});
  SymmetricTestSpace s = build_symmetric_testspace(g, h, k, {0, 1, 2});
  EXPECT_EQ(s.test_space.size(), 9u);
  EXPECT_EQ(s.test_space.tests().size(), 6u);
  EXPECT_EQ(Model::full(s.test_space).pure_states().size(), 6u);
}

TEST(Symmetric, StabilizerKGivesDisjointCopies) {
  PermGroup g = two_blocks_s3();
  PermGroup h = symmetric_group_on({0, 1, 2}, 6);
  PermGroup k = pointwise_stabilizer(h, {0});
  SymmetricTestSpace s = build_symmetric_testspace(g, h, k, {0, 1, 2});
  const auto& tests = s.test_space.tests();
  std::set<std::size_t> seen;
  for (const auto& t : tests) {
    EXPECT_EQ(t.size(), 3u);
    for (auto x : t) EXPECT_TRUE(seen.insert(x).second);
  }
  EXPECT_EQ(seen.size(), s.test_space.size());
}

TEST(Symmetric, OutputIsGSymmetric) {
  PermGroup g = two_blocks_s3();
  PermGroup h{6, {{1, 0, 2, 4, 3, 5}, {1, 2, 0, 4, 5, 3}}};
  SymmetricTestSpace s = build_symmetric_testspace(g, h, setwise_stabilizer(g, {0, 3}), {0, 1, 2});
  for (const auto& a : s.outcome_action) EXPECT_TRUE(is_symmetry(s.test_space, a));
}

TEST(Symmetric, MismatchedKThrows) {
  PermGroup g = two_blocks_s3();
  PermGroup h = symmetric_group_on({0, 1, 2}, 6);
  EXPECT_THROW(build_symmetric_testspace(g, h, g, {0, 1, 2}), StabilizerMismatch);
}

TEST(ModelIo, RoundTrip) {
  for (const char* name : {"squarebit", "firefly", "ngon:5"}) {
    Model m = catalog::builtin(name);
    Model back = parse_model_json(model_to_json(m));
    EXPECT_EQ(back.test_space(), m.test_space());
    EXPECT_EQ(back.pure_states(), m.pure_states());
  }
}

TEST(ModelIo, RejectsInvalidState) {
  EXPECT_THROW(parse_model_json(R"({"outcomes":["a","b"],"tests":[[0,1]],"states":[["1","1"]]})"),
               ValidationError);
  EXPECT_THROW(parse_model_json(R"({"outcomes":["a"],"tests":[[0,3]],"states":"full"})"),
               ValidationError);
}

TEST(ModelIo, GreechieDotHasOneNodePerOutcome) {
  std::string dot = greechie_dot(catalog::firefly());
  for (const char* n : {"n0 ", "n5 "}) EXPECT_NE(dot.find(n), std::string::npos);
  EXPECT_EQ(dot.rfind("graph greechie", 0), 0u);
}

}  // namespace
}  // namespace gptkit
