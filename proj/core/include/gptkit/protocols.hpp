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

// Cloning and broadcasting, remote evaluation, teleportation, entanglement
// swapping, compact closure and steering.
//
// A bipartite effect f on A ⊗ B is a d_A x d_B matrix F with
// f(α ⊗ β) = c_αᵀ F c_β. Its map f̂ : V(A) → E(B) is Fᵀ, so the remote
// evaluation map of (f, ω) is τ = ω̂ ∘ f̂ = Wᵀ Fᵀ : V(A_o) → V(B).

#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "gptkit/composite.hpp"
#include "gptkit/ordspace.hpp"

namespace gptkit {

// Effects a_i >= 0 with Σ a_i = u and α_j(a_i) = δ_ij, or nullopt.
std::optional<std::vector<QVec>> find_distinguishing_observable(
    const LinearHull& hull, const std::vector<Weight>& states);

// φ(β) = Σ_i β(a_i) α_i ⊗ α_i, as a d² x d matrix on row-major flattened
// bipartite coordinates.
struct CloningMap {
  QMatrix matrix;
  std::vector<QVec> observable;
  std::vector<Weight> states;
  QMatrix apply(const QVec& state_coords, std::size_t d) const;
};

std::optional<CloningMap> build_cloning_map(const LinearHull& hull,
                                            const std::vector<Weight>& states);

struct Broadcast {
  bool feasible = false;
  // A broadcasting map V(A) → V(A ⊗max A), d² x d.
  std::optional<QMatrix> map;
  // Present when the states are also jointly distinguishable.
  std::optional<CloningMap> cloning;
  // Farkas multipliers of the infeasible system.
  QVec certificate;
};

// Exact feasibility of a positive, normalized φ : V(A) → V(A ⊗max A) whose
// two marginals return ρ for every given ρ. Refuses more than max_unknowns
// unknown matrix entries.
Broadcast broadcastable(const LinearHull& hull, const std::vector<Weight>& states,
                        std::size_t max_unknowns = 4096);
Broadcast broadcastable(const LinearHull& hull, const std::vector<Weight>& states,
                        const TensorSpace& composite, std::size_t max_unknowns = 4096);

// Density matrices are co-broadcastable iff they commute pairwise.
bool quantum_broadcastable(const std::vector<Eigen::MatrixXcd>& densities,
                           double tol = 1e-9);

// Checks 0 <= f <= u ⊗ u on products of pure states.
bool is_bipartite_effect(const LinearHull& a, const LinearHull& b, const QMatrix& f);

struct RemoteEvaluation {
  QVec tau_alpha;
  Weight unnormalized;
  Q success_probability;
  bool identity_verified = false;
};

// Throws DimensionMismatch when f does not act on A_o ⊗ A_1.
RemoteEvaluation remote_evaluate(const LinearHull& ao, const Weight& alpha,
                                 const CompositeState& omega, const QMatrix& f);

QMatrix teleportation_map(const CompositeState& omega, const QMatrix& f);

struct TeleportationProtocol {
  LinearHull ao;
  QMatrix f;
  CompositeState omega;
};

enum class TeleportKind { kFail, kConclusive, kStrong };
const char* to_string(TeleportKind k);

struct TeleportationReport {
  TeleportKind kind = TeleportKind::kFail;
  QMatrix tau;
  // max over pure β of u(τ⁻¹ β): the constant making τ⁻¹ / c_raw trace
  // non-increasing.
  std::optional<Q> c_raw;
  // Success probability u(τ α), when it is the same for every pure α.
  std::optional<Q> success_probability;
  // Reversibility constant of τ / p when the success probability p is
  // constant, else c_raw.
  std::optional<Q> c;
};

TeleportationReport verify_teleportation(const TeleportationProtocol& p);

struct DeterministicTeleportation {
  bool deterministic = false;
  std::vector<Q> c;
  // Largest entry of Σ_i (τ_i⁻¹ / c_i) τ_i α - α over pure α.
  Q residual = 0;
};

// Verifies that correcting each outcome of {f_i} recovers the input:
// Σ_i (1/c_i) τ_i⁻¹ τ_i α = α with c_i the raw constant of τ_i.
DeterministicTeleportation verify_deterministic_teleportation(
    const LinearHull& ao, const CompositeState& omega, const std::vector<QMatrix>& fs);

struct SwapResult {
  // Un-normalized state on B_2 ⊗ B_1, W_μ F W_ω.
  QMatrix state;
  Q probability;
  std::optional<CompositeState> normalized;
  bool identity_verified = false;
};

// μ on B_2 ⊗ A_0, ω on A_1 ⊗ B_1 and f on A_0 ⊗ A_1.
SwapResult entanglement_swap(const CompositeState& mu, const CompositeState& omega,
                             const QMatrix& f);

struct CompactClosure {
  bool holds = false;
  // s when both snake composites equal s · id.
  std::optional<Q> scalar;
  Q residual = 0;
};

// η as a coordinate matrix W, ε as an effect matrix F. The two snake
// composites are Wᵀ Fᵀ and W F acting on coordinates.
CompactClosure check_compact_closure_pair(const QMatrix& eta, const QMatrix& epsilon);

struct CompactClosureReal {
  bool holds = false;
  double residual = 0;
};

CompactClosureReal check_compact_closure_pair(const Eigen::MatrixXd& eta,
                                              const Eigen::MatrixXd& epsilon,
                                              double tol = 1e-9);

// Effects a_i on A with Σ a_i = u and ω̂(a_i) = β_i, or nullopt. The β_i
// are un-normalized coordinates summing to the B marginal.
std::optional<std::vector<QVec>> steering_check(const CompositeState& omega,
                                                const std::vector<QVec>& ensemble);

struct SteeringReport {
  bool steering = true;
  std::size_t ensembles_checked = 0;
  std::optional<std::vector<QVec>> failing_ensemble;
};

// Runs steering_check on every decomposition of ω₂ into affinely
// independent pure states.
SteeringReport steering_report(const CompositeState& omega, std::size_t max_vertices = 16);

// ω̂(E(A)_+) equals the face of V(B)_+ generated by ω₂.
bool conditioning_image_is_face(const CompositeState& omega);

// An isomorphism state of A ⊗max A whose B marginal is ρ, found by trying
// every matching of extreme effects to pure states.
std::optional<CompositeState> isomorphism_state_with_marginal(const LinearHull& hull,
                                                              const Weight& rho,
                                                              std::size_t max_rays = 8);

}  // namespace gptkit
