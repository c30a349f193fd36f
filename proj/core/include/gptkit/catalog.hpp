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

// Built-in example models.

#pragma once

#include <string>

#include "gptkit/testspace.hpp"

namespace gptkit::catalog {

// Outcomes x, x', y, y'; tests {x, x'} and {y, y'}.
TestSpace square_bit();
// Outcomes a, x, b, y, c, z; tests {a,x,b}, {b,y,c}, {c,z,a}.
TestSpace firefly();
// One n-outcome test.
TestSpace classical(std::size_t n);
// Rows and columns of the n x n array; outcome "i,j" has index i*n + j.
TestSpace grid(std::size_t n);
// Graphs of permutations of {0..n-1} inside the n x n array.
TestSpace graph(std::size_t n);
// Two 3-outcome tests and three 2-outcome tests with no weights at all.
TestSpace stateless();

// Polygon state space with k rational vertices on the unit circle. Each edge
// contributes a test {f_i, f_i'}, f_i vanishing on the edge.
Model ngon(std::size_t k);

// builtin:squarebit, firefly, grid3, graph3, grid:n, graph:n, ngon:k,
// classical:n, stateless. The "builtin:" prefix is optional.
Model builtin(const std::string& spec);

}  // namespace gptkit::catalog
