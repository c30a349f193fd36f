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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "gptkit/error.hpp"
#include "gptkit/jordan.hpp"

namespace gptkit {
namespace {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXd;

constexpr double kTol = 1e-9;

std::vector<JordanSystem> systems() {
  return {JordanSystem::real_sym(3), JordanSystem::complex_herm(2),
          JordanSystem::complex_herm(3), JordanSystem::quat_herm(2), JordanSystem::spin(3),
          JordanSystem::spin(5)};
}

MatrixXcd kron(const MatrixXcd& a, const MatrixXcd& b) {
  MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

std::string label(const JordanSystem& s) {
  return std::string(to_string(s.kind())) + "(" + std::to_string(s.n()) + ")";
}

TEST(JordanSystem, Dimensions) {
  for (int n = 1; n <= 4; ++n) {
    EXPECT_EQ(JordanSystem::real_sym(n).dim(), n * (n + 1) / 2);
    EXPECT_EQ(JordanSystem::complex_herm(n).dim(), n * n);
    EXPECT_EQ(JordanSystem::quat_herm(n).dim(), 2 * n * n - n);
    EXPECT_EQ(JordanSystem::spin(n).dim(), n + 1);
  }
  EXPECT_EQ(JordanSystem::quat_herm(1).dim(), 1);
  EXPECT_EQ(JordanSystem::quat_herm(2).dim(), 6);
  EXPECT_EQ(JordanSystem::spin(7).rank(), 2);
  EXPECT_EQ(JordanSystem::complex_herm(3).rank(), 3);
  EXPECT_EQ(parse_jordan_kind("quat"), JordanKind::kQuatHerm);
  EXPECT_THROW(parse_jordan_kind("octonion"), ValidationError);
}

TEST(JordanSystem, MatrixBasisIsOrthonormal) {
  for (const auto& s : systems()) {
    if (!s.is_matrix()) continue;
    for (int i = 0; i < s.dim(); ++i) {
      for (int j = 0; j < s.dim(); ++j) {
        EXPECT_NEAR(s.inner(VectorXd::Unit(s.dim(), i), VectorXd::Unit(s.dim(), j)),
                    i == j ? 1.0 : 0.0, kTol)
            << label(s);
      }
    }
  }
}

TEST(JordanSystem, ProductMatchesSymmetrizedMatrixProduct) {
  std::mt19937_64 rng(2);
  for (const auto& s : systems()) {
    if (!s.is_matrix()) continue;
    for (int k = 0; k < 20; ++k) {
      VectorXd x = s.random_element(rng), y = s.random_element(rng);
      MatrixXcd mx = s.to_matrix(x), my = s.to_matrix(y);
      MatrixXcd expect = 0.5 * (mx * my + my * mx);
      EXPECT_LT((s.to_matrix(s.product(x, y)) - expect).norm(), kTol) << label(s);
      EXPECT_LT((s.from_matrix(mx) - x).norm(), kTol) << label(s);
    }
  }
}

TEST(JordanSystem, SpinFactorRule) {
  JordanSystem s = JordanSystem::spin(3);
  VectorXd x(4), y(4);
  x << 1, 2, 0, -1;
  y << 0.5, 1, 1, 1;
  VectorXd expect(4);
  expect << 1 * 0.5 + (2 * 1 + 0 * 1 - 1 * 1), 0, 0, 0;
  expect.tail(3) = 1.0 * y.tail(3) + 0.5 * x.tail(3);
  EXPECT_LT((s.product(x, y) - expect).norm(), kTol);
  EXPECT_NEAR(s.trace(s.unit()), 2.0, kTol);
  EXPECT_LT((s.product(s.unit(), x) - x).norm(), kTol);
}

TEST(JordanAxioms, RandomTriples) {
  std::mt19937_64 rng(7);
  for (const auto& s : systems()) {
    for (int k = 0; k < 200; ++k) {
      VectorXd a = s.random_element(rng), b = s.random_element(rng), c = s.random_element(rng);
      EXPECT_LT((s.product(a, b) - s.product(b, a)).norm(), kTol) << label(s);
      VectorXd a2 = s.product(a, a);
      EXPECT_LT((s.product(a2, s.product(b, a)) - s.product(s.product(a2, b), a)).norm(), kTol)
          << label(s);
      EXPECT_NEAR(s.inner(s.product(a, b), c), s.inner(a, s.product(b, c)), kTol) << label(s);
      EXPECT_NEAR(s.inner(a, b), s.trace(s.product(a, b)), kTol) << label(s);
    }
  }
}

TEST(Spectral, UnitGivesStandardProjectors) {
  JordanSystem s = JordanSystem::complex_herm(2);
  Spectral sp = spectral_decompose(s, s.unit());
  ASSERT_EQ(sp.eigenvalues.size(), 2u);
  EXPECT_NEAR(sp.eigenvalues[0], 1.0, kTol);
  EXPECT_NEAR(sp.eigenvalues[1], 1.0, kTol);
  MatrixXcd p0 = MatrixXcd::Zero(2, 2), p1 = p0;
  p0(0, 0) = 1;
  p1(1, 1) = 1;
  bool straight = (s.to_matrix(sp.frame[0]) - p0).norm() < kTol &&
                  (s.to_matrix(sp.frame[1]) - p1).norm() < kTol;
  bool swapped = (s.to_matrix(sp.frame[0]) - p1).norm() < kTol &&
                 (s.to_matrix(sp.frame[1]) - p0).norm() < kTol;
  EXPECT_TRUE(straight || swapped);
}

TEST(Spectral, DiagonalElement) {
  JordanSystem s = JordanSystem::complex_herm(2);
  MatrixXcd d = MatrixXcd::Zero(2, 2);
  d(0, 0) = 3;
  d(1, 1) = -1;
  Spectral sp = spectral_decompose(s, s.from_matrix(d));
  EXPECT_NEAR(sp.eigenvalues[0], 3.0, kTol);
  EXPECT_NEAR(sp.eigenvalues[1], -1.0, kTol);
  EXPECT_NEAR(std::abs(s.to_matrix(sp.frame[0])(0, 0)), 1.0, kTol);
  EXPECT_NEAR(std::abs(s.to_matrix(sp.frame[1])(1, 1)), 1.0, kTol);
}

TEST(Spectral, SpinClosedForm) {
  JordanSystem s = JordanSystem::spin(3);
  VectorXd a(4);
  a << 2, 1, 2, 2;
  Spectral sp = spectral_decompose(s, a);
  EXPECT_NEAR(sp.eigenvalues[0], 5.0, kTol);
  EXPECT_NEAR(sp.eigenvalues[1], -1.0, kTol);
  VectorXd e0(4), e1(4);
  e0 << 0.5, 1.0 / 6, 1.0 / 3, 1.0 / 3;
  e1 << 0.5, -1.0 / 6, -1.0 / 3, -1.0 / 3;
  EXPECT_LT((sp.frame[0] - e0).norm(), kTol);
  EXPECT_LT((sp.frame[1] - e1).norm(), kTol);
  for (const auto& e : sp.frame) {
    EXPECT_LT((s.product(e, e) - e).norm(), kTol);
    EXPECT_NEAR(s.trace(e), 1.0, kTol);
  }
  EXPECT_LT(s.product(e0, e1).norm(), kTol);
}

TEST(Spectral, ReconstructionAndFrameInvariants) {
  std::mt19937_64 rng(11);
  for (const auto& s : systems()) {
    for (int k = 0; k < 50; ++k) {
      VectorXd a = s.random_element(rng);
      Spectral sp = spectral_decompose(s, a);
      ASSERT_EQ(static_cast<int>(sp.frame.size()), s.rank()) << label(s);
      VectorXd sum = VectorXd::Zero(s.dim()), rebuilt = sum;
      for (std::size_t i = 0; i < sp.frame.size(); ++i) {
        const VectorXd& e = sp.frame[i];
        EXPECT_LT((s.product(e, e) - e).norm(), kTol) << label(s);
        EXPECT_NEAR(s.trace(e), 1.0, kTol) << label(s);
        for (std::size_t j = i + 1; j < sp.frame.size(); ++j) {
          EXPECT_LT(s.product(e, sp.frame[j]).norm(), kTol) << label(s);
        }
        sum += e;
        rebuilt += sp.eigenvalues[i] * e;
      }
      EXPECT_LT((sum - s.unit()).norm(), kTol) << label(s);
      EXPECT_LT((rebuilt - a).norm(), kTol) << label(s);
      for (std::size_t i = 1; i < sp.eigenvalues.size(); ++i) {
        EXPECT_GE(sp.eigenvalues[i - 1], sp.eigenvalues[i] - kTol);
      }
    }
  }
}

TEST(Spectral, FunctionalCalculus) {
  std::mt19937_64 rng(4);
  for (const auto& s : systems()) {
    VectorXd p = s.random_positive(rng);
    EXPECT_GT(min_eigenvalue(s, p), 0.0) << label(s);
    VectorXd r = apply_spectral(s, p, [](double t) { return std::sqrt(t); });
    EXPECT_LT((s.product(r, r) - p).norm(), kTol) << label(s);
  }
}

TEST(QuadraticRepresentation, UnitAndPositivity) {
  std::mt19937_64 rng(8);
  for (const auto& s : systems()) {
    VectorXd c = s.random_element(rng);
    MatrixXd p = quadratic_representation(s, c);
    EXPECT_LT((p * s.unit() - s.product(c, c)).norm(), kTol) << label(s);
    for (int k = 0; k < 20; ++k) {
      VectorXd x = s.random_positive(rng);
      EXPECT_GE(min_eigenvalue(s, p * x), -kTol) << label(s);
    }
  }
}

TEST(Homogeneity, UnitToB) {
  std::mt19937_64 rng(12);
  for (const auto& s : systems()) {
    VectorXd b = s.random_positive(rng);
    HomogeneityWitness w = homogeneity_witness(s, s.unit(), b);
    EXPECT_LT((w.g * s.unit() - b).norm(), kTol) << label(s);
    VectorXd root = apply_spectral(s, b, [](double t) { return std::sqrt(t); });
    EXPECT_LT((w.g - quadratic_representation(s, root)).norm(), 1e-8) << label(s);
    EXPECT_TRUE(w.cone_preserved);
  }
}

TEST(Homogeneity, SameElementFixesIt) {
  std::mt19937_64 rng(13);
  JordanSystem s = JordanSystem::complex_herm(3);
  VectorXd a = s.random_positive(rng);
  HomogeneityWitness w = homogeneity_witness(s, a, a);
  EXPECT_LT((w.g * a - a).norm(), kTol);
  EXPECT_LT(w.residual, kTol);
}

TEST(Homogeneity, RandomRealPair) {
  std::mt19937_64 rng(14);
  JordanSystem s = JordanSystem::real_sym(3);
  VectorXd a = s.random_positive(rng), b = s.random_positive(rng);
  HomogeneityWitness w = homogeneity_witness(s, a, b);
  EXPECT_LT((w.g * a - b).norm(), kTol);
  EXPECT_TRUE(w.cone_preserved);
}

TEST(Homogeneity, BoundaryRejected) {
  JordanSystem s = JordanSystem::complex_herm(2);
  MatrixXcd p = MatrixXcd::Zero(2, 2);
  p(0, 0) = 1;
  EXPECT_THROW(homogeneity_witness(s, s.from_matrix(p), s.unit()), NotInterior);
}

TEST(SelfDuality, TraceFormAndSkewedForm) {
  EXPECT_TRUE(self_duality_check(JordanSystem::complex_herm(2), 200));
  EXPECT_TRUE(self_duality_check(JordanSystem::spin(4), 200));
  EXPECT_TRUE(self_duality_check(JordanSystem::real_sym(3), 200));
  EXPECT_TRUE(self_duality_check(JordanSystem::quat_herm(2), 200));
  for (const auto& s : {JordanSystem::complex_herm(2), JordanSystem::spin(4)}) {
    EXPECT_FALSE(self_duality_check(s, 200, 1, skewed_form(s))) << label(s);
  }
}

TEST(Purification, MaximallyMixedQubit) {
  MatrixXcd w = 0.5 * MatrixXcd::Identity(2, 2);
  Purification p = purify(w);
  EXPECT_LT(p.marginal_residual, 1e-12);
  EXPECT_NEAR(p.psi.norm(), 1.0, 1e-12);
  MatrixXcd rho = p.psi * p.psi.adjoint();
  EXPECT_LT((rho - max_entangled_projector(2)).norm(), 1e-12);
  EXPECT_LT((partial_trace_first(rho, 2, 2) - w).norm(), 1e-12);
  // Any basis E and its conjugate are perfectly correlated.
  std::mt19937_64 rng(3);
  JordanSystem q = JordanSystem::complex_herm(2);
  Spectral sp = spectral_decompose(q, q.random_element(rng));
  for (const auto& e : sp.frame) {
    MatrixXcd m = q.to_matrix(e);
    double joint = (rho * kron(m, m.conjugate())).trace().real();
    EXPECT_NEAR(joint, 0.5, 1e-12);
  }
}

TEST(Purification, PureAndDiagonal) {
  MatrixXcd pure = MatrixXcd::Zero(2, 2);
  pure(1, 1) = 1;
  Purification p = purify(pure);
  EXPECT_LT(p.marginal_residual, 1e-12);
  Eigen::Map<const MatrixXcd> psi(p.psi.data(), 2, 2);
  Eigen::JacobiSVD<MatrixXcd> svd(psi);
  EXPECT_NEAR(svd.singularValues()[1], 0.0, 1e-12);

  MatrixXcd d = MatrixXcd::Zero(2, 2);
  d(0, 0) = 0.75;
  d(1, 1) = 0.25;
  Purification q = purify(d);
  EXPECT_LT(q.marginal_residual, 1e-12);
  std::vector<double> lam = q.lambdas;
  std::sort(lam.begin(), lam.end());
  EXPECT_NEAR(lam[0], 0.25, 1e-12);
  EXPECT_NEAR(lam[1], 0.75, 1e-12);
  for (Eigen::Index i = 0; i < q.correlations.rows(); ++i) {
    EXPECT_NEAR(q.correlations(i, i), q.lambdas[i], 1e-12);
    for (Eigen::Index j = 0; j < q.correlations.cols(); ++j) {
      if (i != j) EXPECT_NEAR(q.correlations(i, j), 0.0, 1e-12);
    }
  }
}

TEST(Purification, RandomDensityMarginal) {
  std::mt19937_64 rng(21);
  JordanSystem s = JordanSystem::complex_herm(3);
  for (int k = 0; k < 20; ++k) {
    MatrixXcd w = s.to_matrix(s.random_state(rng));
    EXPECT_LT(purify(w).marginal_residual, 1e-12);
  }
}

TEST(Tomography, Dimensions) {
  TomographyDims c22 = local_tomography_dimensions(JordanKind::kComplexHerm, 2, 2);
  EXPECT_EQ(c22.dim_ab, 16);
  EXPECT_EQ(c22.product, 16);
  EXPECT_TRUE(c22.locally_tomographic);
  TomographyDims r22 = local_tomography_dimensions(JordanKind::kRealSym, 2, 2);
  EXPECT_EQ(r22.dim_ab, 10);
  EXPECT_EQ(r22.product, 9);
  EXPECT_FALSE(r22.locally_tomographic);
  TomographyDims c23 = local_tomography_dimensions(JordanKind::kComplexHerm, 2, 3);
  EXPECT_EQ(c23.dim_ab, 36);
  EXPECT_EQ(c23.product, 36);
  for (int m = 2; m <= 4; ++m) {
    for (int n = 2; n <= 4; ++n) {
      EXPECT_FALSE(local_tomography_dimensions(JordanKind::kRealSym, m, n).locally_tomographic);
    }
  }
  EXPECT_THROW(local_tomography_dimensions(JordanKind::kSpin, 2, 2), UnsupportedSize);
}

TEST(JordanModel, RanksAndSharpness) {
  JordanModelReport q = jordan_model_checks(JordanSystem::complex_herm(2), 50);
  EXPECT_EQ(q.rank, 2);
  EXPECT_TRUE(q.sharp);
  EXPECT_TRUE(q.primitive);
  JordanModelReport r = jordan_model_checks(JordanSystem::real_sym(3), 50);
  EXPECT_EQ(r.rank, 3);
  EXPECT_TRUE(r.uniform);
  JordanModelReport sp = jordan_model_checks(JordanSystem::spin(5), 50);
  EXPECT_EQ(sp.rank, 2);
  EXPECT_TRUE(sp.sharp);
  EXPECT_LT(sp.max_residual, kTol);
}

TEST(Factorization, TraceFormAndHancheOlsen) {
  for (auto [n, m] : {std::pair{2, 2}, std::pair{2, 3}}) {
    FactorizationReport f = trace_form_factorization_check(n, m, 100);
    EXPECT_TRUE(f.holds);
    EXPECT_LT(f.trace_form_residual, kTol);
    EXPECT_LT(f.hanche_olsen_residual, kTol);
    EXPECT_LT(f.primitive_residual, kTol);
  }
}

TEST(ConjugateCorrelator, UniformOnFrames) {
  for (int n = 2; n <= 4; ++n) EXPECT_LT(conjugate_correlator_deviation(n), kTol);
}

TEST(QuantumChsh, SingletAtOptimalAngles) {
  MatrixXcd rho = singlet();
  EXPECT_NEAR(rho.trace().real(), 1.0, 1e-12);
  Eigen::Vector3d z(0, 0, 1), x(1, 0, 0);
  Eigen::Vector3d b0 = -(z + x).normalized(), b1 = (x - z).normalized();
  EXPECT_NEAR(quantum_chsh(rho, z, x, b0, b1), 2 * std::numbers::sqrt2, 1e-9);
  EXPECT_NEAR(chsh_operator_max(z, x, b0, b1), 2 * std::numbers::sqrt2, 1e-9);
  QuantumChshOptimum opt = optimize_quantum_chsh();
  EXPECT_NEAR(opt.value, 2 * std::numbers::sqrt2, 1e-6);
  EXPECT_LE(opt.value, 2 * std::numbers::sqrt2 + 1e-9);
}

TEST(QuantumChsh, RandomSettingsNeverExceedTsirelson) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  auto dir = [&] {
    Eigen::Vector3d v(g(rng), g(rng), g(rng));
    return Eigen::Vector3d(v.normalized());
  };
  JordanSystem q = JordanSystem::complex_herm(4);
  for (int k = 0; k < 500; ++k) {
    MatrixXcd rho = q.to_matrix(q.random_state(rng));
    double s = quantum_chsh(rho, dir(), dir(), dir(), dir());
    EXPECT_LE(std::abs(s), 2 * std::numbers::sqrt2 + 1e-9);
  }
}

TEST(Suite, AllKindsWithinTolerance) {
  for (const auto& s : systems()) {
    JordanSuiteReport r = jordan_suite(s, 100, 3);
    EXPECT_LT(r.max_residual(), 1e-8) << label(s);
    EXPECT_TRUE(r.self_dual) << label(s);
    EXPECT_EQ(r.purification.has_value(), s.kind() == JordanKind::kComplexHerm) << label(s);
  }
}

TEST(Json, HermitianRoundTrip) {
  MatrixXcd m = parse_hermitian_json("[[1, [0, 2]], [[0, -2], 3]]");
  EXPECT_EQ(m(0, 1), std::complex<double>(0, 2));
  EXPECT_LT((parse_hermitian_json(matrix_to_json(m)) - m).norm(), 1e-15);
  EXPECT_THROW(parse_hermitian_json("[[1, 2], [3, 4]]"), ValidationError);
  EXPECT_THROW(parse_hermitian_json("[[1, 2]]"), ValidationError);
}

}  // namespace
}  // namespace gptkit
