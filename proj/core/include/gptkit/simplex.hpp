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

// Exact two-phase simplex with Bland's rule.

#pragma once

#include <utility>
#include <vector>

#include "gptkit/rational.hpp"

namespace gptkit {

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct LpResult {
  LpStatus status = LpStatus::kInfeasible;
  QVec x;
  Q value = 0;
  // On infeasibility: y with y^T A >= 0 and y^T b < 0.
  QVec farkas;
};

// min c^T x subject to a x = b, x >= 0.
LpResult lp_minimize(const QMatrix& a, const QVec& b, const QVec& c);
LpResult lp_feasible(const QMatrix& a, const QVec& b);

// Convenience front end with free variables and inequality rows.
class LinearProgram {
 public:
  using Terms = std::vector<std::pair<std::size_t, Q>>;

  std::size_t add_var(bool free = false);
  std::size_t add_vars(std::size_t n, bool free = false);
  std::size_t num_vars() const { return free_.size(); }

  void add_eq(const Terms& terms, const Q& rhs);
  void add_ge(const Terms& terms, const Q& rhs);
  void add_le(const Terms& terms, const Q& rhs);

  struct Result {
    bool feasible = false;
    bool bounded = true;
    QVec x;
    Q value = 0;
    // One multiplier per constraint row, in insertion order. Combining the
    // rows with these weights gives 0 >= (negative number) or similar.
    QVec certificate;
  };

  Result feasibility() const;
  Result minimize(const Terms& objective) const;

 private:
  enum class Sense { kEq, kGe, kLe };
  struct Row {
    Terms terms;
    Q rhs;
    Sense sense;
  };
  std::vector<bool> free_;
  std::vector<Row> rows_;
};

}  // namespace gptkit
