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

// Measurement and mixing entropies, measurement-based mutual information
// over product tests, strong subadditivity, the Holevo quantity, data
// processing and the information-causality game. Entropies are in bits.

#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "gptkit/composite.hpp"
#include "gptkit/ordspace.hpp"
#include "gptkit/testspace.hpp"

namespace gptkit {

double shannon_bits(const std::vector<double>& p);
double shannon_bits(const QVec& p);

struct EntropyReport {
  double value_bits = 0;
  std::string method;
  // Measurement entropy: the minimizing test.
  std::optional<std::size_t> test;
  // Mixing entropy: the minimizing decomposition.
  std::optional<Decomposition> decomposition;
};

// min over tests of H(α|E); ties go to the lowest test index.
EntropyReport measurement_entropy(const TestSpace& ts, const Weight& alpha);
// min over decompositions into affinely independent pure states.
EntropyReport mixing_entropy(const LinearHull& hull, const Weight& alpha,
                             std::size_t max_vertices = 16);

// Joint probabilities of N parties over their product tests, stored
// row-major over the product of the outcome sets.
class MultiTable {
 public:
  // Validates normalization on every product test and non-signaling.
  MultiTable(std::vector<TestSpace> parties, QVec probs);
  static MultiTable from_composite(const CompositeState& omega);
  static MultiTable product(const std::vector<TestSpace>& parties,
                            const std::vector<Weight>& states);

  std::size_t parties() const { return parties_.size(); }
  const std::vector<TestSpace>& test_spaces() const { return parties_; }
  const QVec& probs() const { return probs_; }
  const Q& at(const std::vector<std::size_t>& outcomes) const;

  // Marginal on the listed parties, in the given order.
  MultiTable marginal(const std::vector<std::size_t>& keep) const;
  // Product-test measurement entropy.
  double entropy() const;
  // Entropy of the marginal on the listed parties.
  double entropy(const std::vector<std::size_t>& keep) const;

 private:
  std::size_t index(const std::vector<std::size_t>& outcomes) const;
  std::vector<TestSpace> parties_;
  QVec probs_;
};

struct JointEntropies {
  double h_a = 0, h_b = 0, h_ab = 0;
  double h_a_given_b = 0, h_b_given_a = 0;
  double mutual = 0;
};

JointEntropies joint_entropies(const CompositeState& omega);
JointEntropies joint_entropies(const MultiTable& ab);

struct SsaReport {
  double h_a = 0, h_b = 0, h_c = 0, h_ab = 0, h_bc = 0, h_ac = 0, h_abc = 0;
  // (a) I(A:BC) - I(A:B), (b) H(A|B) - H(A|BC),
  // (c) H(AB) + H(BC) - H(B) - H(ABC), (d) I(A:C|B).
  double a = 0, b = 0, c = 0, d = 0;
  // I(A:B|C), the same form with B and C exchanged.
  double d_literal = 0;
  bool holds = true;
  bool consistent = true;
};

SsaReport ssa_check(const MultiTable& abc, double tol = 1e-12);

struct HolevoReport {
  double chi = 0;
  double h_rho = 0;
  // Classical I(E:F) for the supplied observable, when given.
  std::optional<double> mutual_ef;
  bool bound_holds = true;
};

// Ensemble {p_x, β_x} on B. The observable F is a list of effects of B
// summing to the unit.
HolevoReport holevo(const LinearHull& b, const QVec& p, const std::vector<Weight>& states,
                    const std::vector<QVec>& observable = {});

struct ClassicalRecordIdentity {
  double h_ab = 0;
  double rhs = 0;
  bool holds = false;
};

// H(AB) against H(A) + Σ p_x H(β_x) for ω = Σ p_x δ_x ⊗ β_x.
ClassicalRecordIdentity classical_record_identity(const LinearHull& b, const QVec& p,
                                                  const std::vector<Weight>& states,
                                                  double tol = 1e-12);

struct DpiReport {
  double before = 0;
  double after = 0;
  bool holds = true;
};

// Applies id ⊗ E where E : B → C is given in the Heisenberg picture by a
// positive unital matrix m : E(C) → E(B).
DpiReport dpi_check(const CompositeState& omega, const LinearHull& c, const QMatrix& m,
                    double tol = 1e-12);
// Discarding B from A ⊗ B ⊗ C: I(A:C) against I(A:BC).
DpiReport dpi_marginalization(const MultiTable& abc, double tol = 1e-12);

enum class IcResource { kClassical, kPrBox, kQuantum };
const char* to_string(IcResource r);
IcResource parse_ic_resource(const std::string& s);

struct IcRun {
  std::size_t n = 0;
  std::size_t m = 0;
  IcResource resource = IcResource::kClassical;
  // Joint distribution of (e_k, b_k) given G = k, as p[e][b].
  std::vector<std::array<std::array<double, 2>, 2>> tables;
  // Exact tables when the resource has rational statistics.
  std::vector<QMatrix> exact_tables;
  std::vector<double> per_k;
  double lhs = 0;
  bool violated = false;
};

// N in {2, 4} and m = 1, else UnsupportedSize. The classical run is the
// best deterministic one-bit strategy, found exhaustively. The quantum run
// uses boxes with the Tsirelson bias cos²(π/8).
IcRun run_information_causality(std::size_t n, std::size_t m, IcResource resource);

struct MonoentropicReport {
  std::size_t states_checked = 0;
  double max_discrepancy = 0;
  std::optional<Weight> witness;
  double witness_h = 0;
  double witness_s = 0;
  bool monoentropic = true;
};

// Compares H and S on every pure state and on the grid of mixtures of pure
// states with weights in multiples of 1/steps.
MonoentropicReport monoentropic_check(const LinearHull& hull, std::size_t steps = 4,
                                      double tol = 1e-9);

}  // namespace gptkit
