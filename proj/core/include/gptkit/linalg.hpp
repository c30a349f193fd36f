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

// Exact dense linear algebra over Q.

#pragma once

#include <optional>
#include <vector>

#include "gptkit/rational.hpp"

namespace gptkit {

struct Rref {
  QMatrix reduced;
  std::vector<std::size_t> pivots;
};

Rref rref(QMatrix m);
std::size_t rank(const QMatrix& m);
std::size_t rank(const std::vector<QVec>& rows, std::size_t dim);

// Basis of {x : m x = 0}, one vector per free column.
std::vector<QVec> nullspace(const QMatrix& m);

std::optional<QVec> solve(const QMatrix& a, const QVec& b);
std::optional<QMatrix> inverse(const QMatrix& m);

// Indices of the greedily chosen (first-come) linearly independent rows.
std::vector<std::size_t> independent_rows(const std::vector<QVec>& rows,
                                          std::size_t dim);

// L with L a = I, for a of full column rank.
QMatrix left_inverse(const QMatrix& a);

}  // namespace gptkit
