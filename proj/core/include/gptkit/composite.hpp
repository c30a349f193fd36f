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

// Bipartite states and effects over two linear hulls.
//
// A bipartite state is stored by a d_A x d_B coordinate matrix W, meaning
// sum_ij W_ij b_i ⊗ b'_j over the basis states of the two hulls. Its joint
// probability table is X̂_A W X̂_Bᵀ and its value on a product effect a ⊗ b
// is aᵀ W b. A bipartite effect F pairs with a product state α ⊗ β as
// c_αᵀ F c_β.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gptkit/ordspace.hpp"
#include "gptkit/rational.hpp"

namespace gptkit {

class CompositeState {
 public:
  // Validates product-test normalization, non-signaling and conditionals.
  // Throws SignalingState naming the offending test pair.
  static CompositeState from_table(const LinearHull& a, const LinearHull& b, QMatrix table);
  static CompositeState from_coords(const LinearHull& a, const LinearHull& b, QMatrix w);
  static CompositeState product(const LinearHull& a, const LinearHull& b,
                                const Weight& alpha, const Weight& beta);

  const LinearHull& a() const { return a_; }
  const LinearHull& b() const { return b_; }
  const QMatrix& table() const { return table_; }
  const QMatrix& coords() const { return w_; }

  Weight marginal_a() const;
  Weight marginal_b() const;
  QVec marginal_a_coords() const;
  QVec marginal_b_coords() const;
  // Undefined (nullopt) when the conditioning outcome has probability 0.
  std::optional<Weight> conditional_b(std::size_t x) const;
  std::optional<Weight> conditional_a(std::size_t y) const;

  Q eval(const QVec& ea, const QVec& eb) const;

 private:
  CompositeState(LinearHull a, LinearHull b) : a_(std::move(a)), b_(std::move(b)) {}
  LinearHull a_;
  LinearHull b_;
  QMatrix table_;
  QMatrix w_;
};

// The positive map E(A) → V(B), a ↦ ω(a, ·), as a d_B x d_A matrix.
struct ConditioningMap {
  QMatrix matrix;
  QVec apply(const QVec& effect) const { return matrix.apply(effect); }
  // E(B) → V(A), b ↦ ω(·, b).
  QMatrix adjoint() const { return matrix.transpose(); }
};

ConditioningMap bilinearize(const CompositeState& omega);
ConditioningMap bilinearize(const LinearHull& a, const LinearHull& b, const QMatrix& table);

// kMax: every non-signaling state (state cone cut out by products of
// outcome functionals). kMin: separable states only (state cone generated
// by products of pure states).
enum class TensorKind { kMin, kMax };
const char* to_string(TensorKind k);

class TensorSpace {
 public:
  TensorSpace(LinearHull a, LinearHull b, TensorKind kind);

  const LinearHull& a() const { return a_; }
  const LinearHull& b() const { return b_; }
  TensorKind kind() const { return kind_; }
  std::size_t dim() const { return a_.dim() * b_.dim(); }
  // Cones on row-major flattened coordinate matrices.
  const PolyhedralCone& state_cone() const { return state_cone_; }
  PolyhedralCone effect_cone() const { return state_cone_.dual(); }
  QVec unit() const { return kron(a_.unit(), b_.unit()); }

  // Normalized extreme states as coordinate matrices, in cone order.
  std::vector<QMatrix> vertex_coords() const;
  std::vector<CompositeState> vertex_states() const;

 private:
  LinearHull a_;
  LinearHull b_;
  TensorKind kind_;
  PolyhedralCone state_cone_;
};

TensorSpace min_max_tensor(const LinearHull& a, const LinearHull& b, TensorKind kind);

QVec flatten(const QMatrix& m);

struct ProductTerm {
  Q weight;
  std::size_t a_vertex;
  std::size_t b_vertex;
};

struct Separability {
  bool separable = false;
  std::vector<ProductTerm> decomposition;
  // Functional on flattened coordinates, >= 0 on every product state and
  // negative on the tested state.
  QVec witness;
  Q witness_value = 0;
};

Separability is_separable(const CompositeState& omega);
Separability is_separable(const CompositeState& omega, const TensorSpace& tensor);

// Two-setting CHSH value with ±1 observables A_i = 2a_i - u, B_j = 2b_j - u:
// S = <A0B0> + <A0B1> + <A1B0> - <A1B1>. Effects must lie in [0, u].
Q chsh(const CompositeState& omega, const QVec& a0, const QVec& a1, const QVec& b0,
       const QVec& b1);

// Vertices of the effect interval [0, u] of a hull.
std::vector<QVec> effect_vertices(const LinearHull& hull);

struct ChshOptimum {
  Q value = 0;
  std::size_t state_index = 0;
  QMatrix state;
  QVec a0, a1, b0, b1;
};

// Exact maximum over vertex states of the tensor and vertex effects.
ChshOptimum chsh_max(const TensorSpace& tensor);

struct TotalProbability {
  bool holds = true;
  QVec residual;
};

// Checks ω₂ = Σ_a ω₁(a) ω_{2|a} for effects a summing to u_A.
TotalProbability law_of_total_probability_check(const CompositeState& omega,
                                                 const std::vector<QVec>& observable);

struct IsomorphismCheck {
  bool isomorphism = false;
  // Inverse of the conditioning map, V(B) → E(A).
  std::optional<QMatrix> inverse;
};

IsomorphismCheck is_isomorphism_state(const CompositeState& omega);

// JSON table keyed by "x|y" outcome-label pairs with rational strings.
std::string composite_to_json(const CompositeState& omega);
CompositeState parse_composite_json(const LinearHull& a, const LinearHull& b,
                                    const std::string& text);

}  // namespace gptkit
