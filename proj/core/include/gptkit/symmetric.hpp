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

// Test spaces built from a finite permutation group G, a subgroup H acting
// on a reference test E, and a subgroup K with K ∩ H = H_{x_o}.

#pragma once

#include <vector>

#include "gptkit/testspace.hpp"

namespace gptkit {

using Perm = std::vector<std::size_t>;

// (a * b)(i) = a(b(i)).
Perm compose(const Perm& a, const Perm& b);
Perm identity_perm(std::size_t degree);

struct PermGroup {
  std::size_t degree = 0;
  std::vector<Perm> generators;

  // All elements, sorted; closure by breadth-first multiplication.
  std::vector<Perm> elements() const;
};

// Full symmetric group on the given points, identity elsewhere.
PermGroup symmetric_group_on(const std::vector<std::size_t>& points, std::size_t degree);
// Elements of g fixing every listed point.
PermGroup pointwise_stabilizer(const PermGroup& g, const std::vector<std::size_t>& points);
// Elements of g mapping the set to itself.
PermGroup setwise_stabilizer(const PermGroup& g, const std::vector<std::size_t>& set);
PermGroup join(const PermGroup& a, const PermGroup& b);

struct SymmetricTestSpace {
  TestSpace test_space;
  // Induced action of each generator of G on the outcomes G/K.
  std::vector<Perm> outcome_action;
};

// E is a set of domain points that H permutes transitively; x_o = min(E).
SymmetricTestSpace build_symmetric_testspace(const PermGroup& g, const PermGroup& h,
                                             const PermGroup& k,
                                             const std::vector<std::size_t>& e);

}  // namespace gptkit
