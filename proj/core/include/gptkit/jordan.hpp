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

// Euclidean Jordan algebras in binary64: real symmetric, complex Hermitian
// and quaternionic Hermitian matrices, and spin factors.
//
// Matrix elements are coordinate vectors in a basis that is orthonormal for
// the trace form <a, b> = Tr(a ∘ b). Quaternionic matrices A + Bj live as
// [[A, B], [-B̄, Ā]] and have half the complex trace. Spin factor elements
// are plain (t, v) pairs with Tr(t, v) = 2t.

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace gptkit {

enum class JordanKind { kRealSym, kComplexHerm, kQuatHerm, kSpin };
const char* to_string(JordanKind k);
JordanKind parse_jordan_kind(const std::string& s);

class JordanSystem {
 public:
  static JordanSystem real_sym(int n);
  static JordanSystem complex_herm(int n);
  static JordanSystem quat_herm(int n);
  // Spin factor over R ⊕ R^n.
  static JordanSystem spin(int n);
  static JordanSystem make(JordanKind kind, int n);

  JordanKind kind() const { return kind_; }
  int n() const { return n_; }
  int dim() const { return dim_; }
  int rank() const { return kind_ == JordanKind::kSpin ? 2 : n_; }
  bool is_matrix() const { return kind_ != JordanKind::kSpin; }

  Eigen::VectorXd unit() const;
  Eigen::VectorXd product(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;
  double trace(const Eigen::VectorXd& x) const;
  double inner(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;

  // Matrix kinds only. Quaternionic elements come back as 2n x 2n complex
  // matrices.
  Eigen::MatrixXcd to_matrix(const Eigen::VectorXd& x) const;
  Eigen::VectorXd from_matrix(const Eigen::MatrixXcd& m) const;
  const std::vector<Eigen::MatrixXcd>& basis() const { return basis_; }

  Eigen::VectorXd random_element(std::mt19937_64& rng) const;
  // a² + ε u, strictly inside the cone.
  Eigen::VectorXd random_positive(std::mt19937_64& rng) const;
  // Positive with unit trace.
  Eigen::VectorXd random_state(std::mt19937_64& rng) const;

 private:
  JordanSystem(JordanKind kind, int n);
  JordanKind kind_;
  int n_;
  int dim_;
  double trace_scale_ = 1.0;
  std::vector<Eigen::MatrixXcd> basis_;
};

struct Spectral {
  std::vector<Eigen::VectorXd> frame;
  std::vector<double> eigenvalues;
};

// a = Σ t_i e_i over a Jordan frame, eigenvalues ascending.
Spectral spectral_decompose(const JordanSystem& sys, const Eigen::VectorXd& a,
                            double tol = 1e-10);

Eigen::VectorXd apply_spectral(const JordanSystem& sys, const Eigen::VectorXd& a,
                               double (*f)(double));
double min_eigenvalue(const JordanSystem& sys, const Eigen::VectorXd& a);

// P(c)x = 2c∘(c∘x) - c²∘x as a dim x dim matrix.
Eigen::MatrixXd quadratic_representation(const JordanSystem& sys, const Eigen::VectorXd& c);

struct HomogeneityWitness {
  Eigen::MatrixXd g;
  double residual = 0;
  bool cone_preserved = true;
};

// g = P(b^½) P(a^-½), with g(a) = b checked and sampled cone elements
// checked to stay in the cone. Throws NotInterior.
HomogeneityWitness homogeneity_witness(const JordanSystem& sys, const Eigen::VectorXd& a,
                                       const Eigen::VectorXd& b, std::uint64_t seed = 1,
                                       int samples = 100, double tol = 1e-9);

// Both inclusions of self-duality under the form <x, y>_G = xᵀ G y
// (G = identity gives the trace form), on sampled squares plus a fixed
// frame.
bool self_duality_check(const JordanSystem& sys, int samples, std::uint64_t seed = 1,
                        const std::optional<Eigen::MatrixXd>& form = std::nullopt,
                        double tol = 1e-9);

// The skewed form I - 2(p0 p1ᵀ + p1 p0ᵀ) for two orthogonal idempotents
// of the standard frame.
Eigen::MatrixXd skewed_form(const JordanSystem& sys);

struct Purification {
  Eigen::VectorXcd psi;
  std::vector<double> lambdas;
  std::vector<Eigen::VectorXcd> eigenvectors;
  // Reduced state on the first factor.
  Eigen::MatrixXcd marginal;
  // corr(i, j) = probability of (x_i, x̄_j).
  Eigen::MatrixXd correlations;
  double marginal_residual = 0;
};

Purification purify(const Eigen::MatrixXcd& w);

Eigen::MatrixXcd partial_trace_second(const Eigen::MatrixXcd& rho, int n, int m);
Eigen::MatrixXcd partial_trace_first(const Eigen::MatrixXcd& rho, int n, int m);

struct TomographyDims {
  long long dim_a = 0, dim_b = 0, dim_ab = 0, product = 0;
  bool locally_tomographic = false;
};

// Real and complex kinds only; other kinds throw UnsupportedSize.
TomographyDims local_tomography_dimensions(JordanKind kind, int m, int n);

struct JordanModelReport {
  int rank = 0;
  bool uniform = true;
  bool sharp = true;
  bool primitive = true;
  double max_residual = 0;
};

// Samples frames from spectral decompositions of random elements.
JordanModelReport jordan_model_checks(const JordanSystem& sys, int frames,
                                      std::uint64_t seed = 1, double tol = 1e-9);

struct FactorizationReport {
  double trace_form_residual = 0;
  double hanche_olsen_residual = 0;
  double primitive_residual = 0;
  bool holds = false;
};

// On ComplexHerm(n) ⊗ ComplexHerm(m) = ComplexHerm(nm).
FactorizationReport trace_form_factorization_check(int n, int m, int samples,
                                                   std::uint64_t seed = 1, double tol = 1e-9);

// η(x, x̄) for the maximally entangled state over a random frame; returns
// the largest deviation from 1/n.
double conjugate_correlator_deviation(int n, std::uint64_t seed = 1);

// Coordinates W_ij = Tr(ρ (e_i ⊗ e_j)) of a bipartite operator over
// ComplexHerm(n) ⊗ ComplexHerm(n). States and effects share this form.
Eigen::MatrixXd bipartite_coords(const JordanSystem& sys, const Eigen::MatrixXcd& op);

Eigen::MatrixXcd max_entangled_projector(int n);

// Two-qubit CHSH with ±1 observables along Bloch directions.
Eigen::MatrixXcd singlet();
double quantum_chsh(const Eigen::MatrixXcd& rho, const Eigen::Vector3d& a0,
                    const Eigen::Vector3d& a1, const Eigen::Vector3d& b0,
                    const Eigen::Vector3d& b1);
// Largest eigenvalue of the CHSH operator: the best state for these
// measurements.
double chsh_operator_max(const Eigen::Vector3d& a0, const Eigen::Vector3d& a1,
                         const Eigen::Vector3d& b0, const Eigen::Vector3d& b1);

struct QuantumChshOptimum {
  double value = 0;
  // Measurement angles in the x-z plane.
  double a0 = 0, a1 = 0, b0 = 0, b1 = 0;
};

// Cyclic golden-section search over the four angles.
QuantumChshOptimum optimize_quantum_chsh(int sweeps = 40);

struct JordanSuiteReport {
  JordanKind kind = JordanKind::kRealSym;
  int n = 0;
  int samples = 0;
  double commutativity = 0;
  double jordan_identity = 0;
  double trace_associativity = 0;
  double spectral_reconstruction = 0;
  double frame_orthogonality = 0;
  double homogeneity = 0;
  double quadratic_positivity = 0;
  bool self_dual = false;
  // Complex kinds only.
  std::optional<double> purification;
  std::optional<double> hanche_olsen;
  double max_residual() const;
};

JordanSuiteReport jordan_suite(const JordanSystem& sys, int samples, std::uint64_t seed = 1);

// Hermitian matrices as JSON arrays of rows; entries are reals or [re, im].
Eigen::MatrixXcd parse_hermitian_json(const std::string& text, double tol = 1e-9);
std::string matrix_to_json(const Eigen::MatrixXcd& m);

}  // namespace gptkit
