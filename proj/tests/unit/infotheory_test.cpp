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

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <random>

#include "gptkit/catalog.hpp"
#include "gptkit/composite.hpp"
#include "gptkit/error.hpp"
#include "gptkit/infotheory.hpp"
#include "oracle.hpp"

namespace gptkit {
namespace {

using oracle::qv;

LinearHull hull(const char* name) { return linear_hull(catalog::builtin(name)); }

TEST(Shannon, KnownValues) {
  EXPECT_DOUBLE_EQ(shannon_bits(std::vector<double>{0.5, 0.5}), 1.0);
  EXPECT_DOUBLE_EQ(shannon_bits(std::vector<double>{1.0, 0.0}), 0.0);
  EXPECT_NEAR(shannon_bits(qv({"1/4", "1/4", "1/4", "1/4"})), 2.0, 1e-15);
  EXPECT_NEAR(shannon_bits(std::vector<double>{0.75, 0.25}), oracle::h2(0.75), 1e-15);
}

TEST(MeasurementEntropy, SquareBitPicksSharperTest) {
  TestSpace sq = catalog::square_bit();
  EntropyReport r = measurement_entropy(sq, qv({"3/4", "1/4", "1/2", "1/2"}));
  EXPECT_NEAR(r.value_bits, oracle::h2(0.75), 1e-12);
  EXPECT_NEAR(r.value_bits, 0.811278, 1e-6);
  ASSERT_TRUE(r.test.has_value());
  EXPECT_EQ(sq.tests()[*r.test], (gptkit::Test{0, 1}));
}

TEST(MixingEntropy, SquareCenterMatchesGridSearch) {
  LinearHull sq = hull("squarebit");
  Weight center = qv({"1/2", "1/2", "1/2", "1/2"});
  EntropyReport r = mixing_entropy(sq, center);
  EXPECT_NEAR(r.value_bits, 1.0, 1e-12);

  // Independent search: fix the first weight on a 1e-3 grid and solve the
  // remaining three from normalization and the two free coordinates.
  const auto& v = sq.vertices();
  Eigen::Matrix3d m;
  for (int j = 0; j < 3; ++j) {
    m(0, j) = 1;
    m(1, j) = to_double(v[j + 1][0]);
    m(2, j) = to_double(v[j + 1][2]);
  }
  auto lu = m.fullPivLu();
  ASSERT_TRUE(lu.isInvertible());
  double best = 1e9;
  for (int i = 0; i <= 1000; ++i) {
    double l0 = i / 1000.0;
    Eigen::Vector3d rhs(1 - l0, 0.5 - l0 * to_double(v[0][0]), 0.5 - l0 * to_double(v[0][2]));
    Eigen::Vector3d rest = lu.solve(rhs);
    if (rest.minCoeff() < -1e-12) continue;
    best = std::min(best, shannon_bits(std::vector<double>{l0, rest(0), rest(1), rest(2)}));
  }
  EXPECT_NEAR(r.value_bits, best, 1e-9);
}

TEST(MixingEntropy, PureStateIsZero) {
  LinearHull sq = hull("squarebit");
  EXPECT_NEAR(mixing_entropy(sq, sq.vertices()[1]).value_bits, 0.0, 1e-15);
  EXPECT_THROW(mixing_entropy(sq, qv({"1", "1", "0", "1"})), ValidationError);
}

TEST(MultiTable, RejectsSignalingAndNegatives) {
  TestSpace sq = catalog::square_bit();
  QVec p(16);
  p[0 * 4 + 0] = 1;
  p[2 * 4 + 1] = 1;
  EXPECT_THROW(MultiTable({sq, sq}, p), ValidationError);
  QVec c = qv({"1/2", "-1/4", "0", "3/4"});
  TestSpace c2 = catalog::classical(2);
  EXPECT_THROW(MultiTable({c2, c2}, c), ValidationError);
}

TEST(MultiTable, ProductMarginals) {
  TestSpace sq = catalog::square_bit();
  Weight a = qv({"3/4", "1/4", "1/2", "1/2"}), b = qv({"1", "0", "1/2", "1/2"});
  MultiTable t = MultiTable::product({sq, sq}, {a, b});
  EXPECT_EQ(t.marginal({0}).probs(), a);
  EXPECT_EQ(t.marginal({1}).probs(), b);
  JointEntropies j = joint_entropies(t);
  EXPECT_NEAR(j.mutual, 0.0, 1e-12);
  EXPECT_NEAR(j.h_ab, j.h_a + j.h_b, 1e-12);
}

// Random classical joint distribution over party sizes n0 x n1 x n2.
QVec random_distribution(std::size_t size, std::mt19937& rng) {
  std::uniform_int_distribution<int> w(0, 6);
  QVec p(size);
  int total = 0;
  for (auto& x : p) {
    int k = w(rng);
    x = k;
    total += k;
  }
  if (total == 0) {
    p[0] = 1;
    total = 1;
  }
  for (auto& x : p) x /= total;
  return p;
}

TEST(Ssa, HoldsForClassicalTables) {
  std::mt19937 rng(5);
  std::vector<TestSpace> parties = {catalog::classical(2), catalog::classical(3),
                                    catalog::classical(2)};
  for (int k = 0; k < 50; ++k) {
    SsaReport r = ssa_check(MultiTable(parties, random_distribution(12, rng)));
    EXPECT_TRUE(r.holds);
    EXPECT_TRUE(r.consistent);
    EXPECT_NEAR(r.a, r.c, 1e-12);
  }
}

TEST(Ssa, FormsAgreeOnNonClassicalTables) {
  LinearHull sq = hull("squarebit");
  TensorSpace t(sq, sq, TensorKind::kMax);
  auto verts = t.vertex_states();
  std::mt19937 rng(9);
  std::uniform_int_distribution<std::size_t> pick(0, verts.size() - 1);
  TestSpace c2 = catalog::classical(2);
  for (int k = 0; k < 20; ++k) {
    const QMatrix& t0 = verts[pick(rng)].table();
    const QMatrix& t1 = verts[pick(rng)].table();
    QVec p(32);
    for (std::size_t a = 0; a < 4; ++a) {
      for (std::size_t b = 0; b < 4; ++b) {
        p[(a * 4 + b) * 2 + 0] = t0(a, b) / 2;
        p[(a * 4 + b) * 2 + 1] = t1(a, b) / 2;
      }
    }
    SsaReport r = ssa_check(MultiTable({sq.test_space(), sq.test_space(), c2}, p));
    EXPECT_NEAR(r.a, r.b, 1e-12);
    EXPECT_NEAR(r.b, r.c, 1e-12);
    EXPECT_NEAR(r.c, r.d, 1e-12);
    EXPECT_TRUE(r.consistent);
  }
}

TEST(Holevo, ClassicalBitEnsemble) {
  LinearHull c2 = hull("classical:2");
  HolevoReport r = holevo(c2, qv({"1/2", "1/2"}), c2.vertices(),
                          {c2.outcome(0), c2.outcome(1)});
  EXPECT_NEAR(r.chi, 1.0, 1e-12);
  ASSERT_TRUE(r.mutual_ef.has_value());
  EXPECT_NEAR(*r.mutual_ef, 1.0, 1e-12);
  EXPECT_TRUE(r.bound_holds);
}

TEST(Holevo, SquareBitBoundHolds) {
  LinearHull sq = hull("squarebit");
  std::vector<Weight> states = {qv({"1", "0", "1/2", "1/2"}), qv({"0", "1", "1/2", "1/2"})};
  QVec p = qv({"1/3", "2/3"});
  for (std::size_t x : {0u, 2u}) {
    HolevoReport r = holevo(sq, p, states, {sq.outcome(x), sq.outcome(x + 1)});
    EXPECT_TRUE(r.bound_holds);
    EXPECT_LE(*r.mutual_ef, r.chi + 1e-12);
  }
  EXPECT_THROW(holevo(sq, qv({"1/2", "1/3"}), states), ValidationError);
}

TEST(ClassicalRecord, SharedMinimizingTest) {
  LinearHull sq = hull("squarebit");
  std::vector<Weight> states = {qv({"1", "0", "1/2", "1/2"}), qv({"0", "1", "1/2", "1/2"})};
  ClassicalRecordIdentity r = classical_record_identity(sq, qv({"1/2", "1/2"}), states);
  EXPECT_TRUE(r.holds);
  EXPECT_NEAR(r.h_ab, 1.0, 1e-12);
}

TEST(ClassicalRecord, DifferentMinimizingTests) {
  LinearHull sq = hull("squarebit");
  std::vector<Weight> states = {qv({"1", "0", "1/2", "1/2"}), qv({"1/2", "1/2", "1", "0"})};
  ClassicalRecordIdentity r = classical_record_identity(sq, qv({"1/2", "1/2"}), states);
  EXPECT_FALSE(r.holds);
  EXPECT_NEAR(r.rhs, 1.0, 1e-12);
  EXPECT_NEAR(r.h_ab, 1.5, 1e-12);
}

TEST(Dpi, ClassicalChannels) {
  LinearHull c2 = hull("classical:2");
  CompositeState omega = CompositeState::from_coords(c2, c2, Q(1, 2) * QMatrix::identity(2));
  QMatrix flip(2, 2);
  flip(0, 1) = flip(1, 0) = 1;
  DpiReport f = dpi_check(omega, c2, flip);
  EXPECT_NEAR(f.before, 1.0, 1e-12);
  EXPECT_NEAR(f.after, 1.0, 1e-12);
  QMatrix noise(2, 2);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) noise(i, j) = Q(1, 2);
  }
  DpiReport n = dpi_check(omega, c2, noise);
  EXPECT_TRUE(n.holds);
  EXPECT_NEAR(n.after, 0.0, 1e-12);
  EXPECT_THROW(dpi_check(omega, c2, Q(2) * flip), ValidationError);
}

TEST(Dpi, MarginalizationOnClassicalTables) {
  std::mt19937 rng(3);
  std::vector<TestSpace> parties(3, catalog::classical(2));
  for (int k = 0; k < 30; ++k) {
    EXPECT_TRUE(dpi_marginalization(MultiTable(parties, random_distribution(8, rng))).holds);
  }
}

TEST(InformationCausality, PrBoxesReachN) {
  for (std::size_t n : {2u, 4u}) {
    IcRun r = run_information_causality(n, 1, IcResource::kPrBox);
    EXPECT_NEAR(r.lhs, static_cast<double>(n), 1e-12);
    EXPECT_TRUE(r.violated);
    ASSERT_EQ(r.exact_tables.size(), n);
    for (const auto& t : r.exact_tables) {
      EXPECT_EQ(t(0, 0), Q(1, 2));
      EXPECT_EQ(t(1, 1), Q(1, 2));
      EXPECT_EQ(t(0, 1), 0);
    }
  }
}

TEST(InformationCausality, ClassicalRespectsBound) {
  for (std::size_t n : {2u, 4u}) {
    IcRun r = run_information_causality(n, 1, IcResource::kClassical);
    EXPECT_LE(r.lhs, 1.0 + 1e-12);
    EXPECT_NEAR(r.lhs, 1.0, 1e-12);
    EXPECT_FALSE(r.violated);
  }
}

TEST(InformationCausality, QuantumBoxesStayBelow) {
  double c2 = std::pow(std::cos(std::numbers::pi / 8), 2);
  double two_level = c2 * c2 + (1 - c2) * (1 - c2);
  IcRun r2 = run_information_causality(2, 1, IcResource::kQuantum);
  EXPECT_NEAR(r2.lhs, 2 * (1 - oracle::h2(c2)), 1e-12);
  IcRun r4 = run_information_causality(4, 1, IcResource::kQuantum);
  EXPECT_NEAR(r4.lhs, 4 * (1 - oracle::h2(two_level)), 1e-12);
  EXPECT_NEAR(r4.lhs, 0.7549, 1e-4);
  EXPECT_FALSE(r2.violated);
  EXPECT_FALSE(r4.violated);
}

TEST(InformationCausality, UnsupportedSizes) {
  EXPECT_THROW(run_information_causality(3, 1, IcResource::kPrBox), UnsupportedSize);
  EXPECT_THROW(run_information_causality(2, 2, IcResource::kPrBox), UnsupportedSize);
  EXPECT_EQ(parse_ic_resource("pr"), IcResource::kPrBox);
  EXPECT_THROW(parse_ic_resource("box"), ValidationError);
}

TEST(Monoentropic, SquareBitIsNot) {
  MonoentropicReport r = monoentropic_check(hull("squarebit"));
  EXPECT_FALSE(r.monoentropic);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_GT(r.witness_s, r.witness_h);
}

TEST(Monoentropic, SimplexIs) {
  MonoentropicReport r = monoentropic_check(hull("classical:3"));
  EXPECT_TRUE(r.monoentropic);
  EXPECT_GT(r.states_checked, 3u);
}

}  // namespace
}  // namespace gptkit
