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

// Ordered linear spaces: polyhedral cones, order units, the linear hull of
// a model and positive maps between hulls.
//
// Coordinates. A hull fixes a basis b_1..b_d of span(Ω) made of the
// lexicographically first independent pure states. A state is stored by
// its coefficients in that basis, an effect a by its values (a(b_i))_i, so
// the pairing is the dot product and the unit is the all-ones vector.

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gptkit/rational.hpp"
#include "gptkit/testspace.hpp"

namespace gptkit {

class PolyhedralCone {
 public:
  // Generators must span R^dim and the cone must be pointed.
  static PolyhedralCone from_generators(std::size_t dim, std::vector<QVec> generators);
  // Facet functionals must span R^dim and cut out a full-dimensional cone.
  static PolyhedralCone from_facets(std::size_t dim, std::vector<QVec> facets);

  std::size_t dim() const;
  // Extreme rays and facet normals as primitive integer vectors, sorted.
  // Each side is derived from the other once, on first use.
  const std::vector<QVec>& generators() const;
  const std::vector<QVec>& facets() const;

  bool contains(const QVec& v) const;
  bool interior(const QVec& v) const;
  PolyhedralCone dual() const;
  bool same_as(const PolyhedralCone& other) const;

 private:
  struct State;
  std::shared_ptr<State> s_;
};

PolyhedralCone dual_cone(const PolyhedralCone& cone);

struct OrderUnitSpace {
  OrderUnitSpace(PolyhedralCone cone, QVec unit);
  PolyhedralCone cone;
  QVec unit;
  std::size_t dim() const { return cone.dim(); }
};

class LinearHull {
 public:
  const Model& model() const;
  const TestSpace& test_space() const { return model().test_space(); }
  std::size_t dim() const;
  const std::vector<Weight>& vertices() const;
  const std::vector<std::size_t>& basis() const;
  // Rows are the outcome functionals x̂.
  const QMatrix& outcome_matrix() const;
  QVec outcome(std::size_t x) const;
  const QVec& unit() const;
  const OrderUnitSpace& E() const;
  const OrderUnitSpace& V() const;
  const std::vector<QVec>& vertex_coords() const;

  // Coordinates of a weight lying in span(Ω); throws ValidationError if it
  // does not.
  QVec state_coords(const Weight& w) const;
  std::optional<QVec> try_state_coords(const Weight& w) const;
  // Outcome values of a V-vector.
  Weight weight_of(const QVec& coords) const;
  // Effect coordinates of a combination sum_x c_x x̂.
  QVec effect_of(const QVec& outcome_coeffs) const;
  bool is_effect(const QVec& a) const;

 private:
  friend LinearHull linear_hull(const Model& model);
  struct Data;
  std::shared_ptr<const Data> d_;
};

LinearHull linear_hull(const Model& model);

struct Decomposition {
  std::vector<std::size_t> vertices;
  QVec weights;
};

// Every way of writing a state (in V-coordinates) as a convex combination
// of affinely independent pure states with positive weights. Throws
// SizeGuardExceeded when there are more than max_vertices pure states.
std::vector<Decomposition> extreme_decompositions(const LinearHull& hull, const QVec& coords,
                                                  std::size_t max_vertices = 16);

struct StateCompleteness {
  bool complete = true;
  // A normalized positive functional on E that is not a state of the model.
  std::optional<Weight> witness;
};

StateCompleteness check_state_completeness(const Model& model);

// Direct sum A ⊕ B: outcomes "A.x" and "B.y", tests E ⊔ F.
LinearHull direct_sum(const LinearHull& a, const LinearHull& b);

struct DirectSumParts {
  Q t;
  std::optional<Weight> alpha;
  std::optional<Weight> beta;
};
// Splits a state of A ⊕ B as t·α ⊕ (1-t)·β.
DirectSumParts split_direct_sum(const LinearHull& a, const LinearHull& b, const Weight& w);

bool is_positive_map(const PolyhedralCone& source, const PolyhedralCone& target,
                     const QMatrix& m);

// A positive, sub-unital linear map between effect spaces, stored as a
// matrix acting on E-coordinates. The state-space action is the transpose.
class Process {
 public:
  Process(OrderUnitSpace source, OrderUnitSpace target, QMatrix matrix);

  // Map sending each outcome x̂ to perm[x]^. Throws ValidationError if the
  // permutation does not induce a linear map.
  static Process from_outcome_permutation(const LinearHull& hull,
                                          const std::vector<std::size_t>& perm);

  const OrderUnitSpace& source() const { return source_; }
  const OrderUnitSpace& target() const { return target_; }
  const QMatrix& matrix() const { return m_; }
  QMatrix state_action() const { return m_.transpose(); }

  bool reversible = false;
  std::optional<Q> reversibility_constant;

 private:
  OrderUnitSpace source_;
  OrderUnitSpace target_;
  QMatrix m_;
};

struct ProbReversible {
  // (1/c) times the inverse map, itself a process.
  Process inverse;
  Q c;
  bool reversible;
};

// Throws Singular if the matrix is not invertible.
std::optional<ProbReversible> check_prob_reversible(const Process& p);

std::string cone_to_json(const PolyhedralCone& cone);
std::string hull_to_json(const LinearHull& hull);

}  // namespace gptkit
