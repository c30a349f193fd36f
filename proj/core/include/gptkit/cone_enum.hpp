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

// Double description method over exact rationals.

#pragma once

#include <vector>

#include "gptkit/rational.hpp"

namespace gptkit {

// Extreme rays of {z : a z >= 0 for every row a}. The rows must span R^dim
// (pointed cone). Rays come back as primitive integer vectors in
// lexicographic order. Constraints are inserted in index order.
std::vector<QVec> extreme_rays(const std::vector<QVec>& rows, std::size_t dim);

// Vertices of the bounded polyhedron {x : eq x = beq, ineq x >= bineq}, in
// lexicographic order. Empty polyhedra give an empty list; unbounded ones
// throw ValidationError.
std::vector<QVec> polytope_vertices(const std::vector<QVec>& eq, const QVec& beq,
                                    const std::vector<QVec>& ineq,
                                    const QVec& bineq, std::size_t dim);

}  // namespace gptkit
