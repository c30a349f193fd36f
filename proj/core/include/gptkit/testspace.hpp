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

// Finite test spaces, probability weights and their state polytopes.

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gptkit/rational.hpp"

namespace gptkit {

using Weight = QVec;
using Test = std::vector<std::size_t>;

class TestSpace {
 public:
  TestSpace() = default;
  // Tests are stored sorted; they must be non-empty, distinct and cover
  // every outcome.
  TestSpace(std::vector<std::string> outcomes, std::vector<Test> tests);

  std::size_t size() const { return outcomes_.size(); }
  const std::vector<std::string>& outcomes() const { return outcomes_; }
  const std::vector<Test>& tests() const { return tests_; }
  const std::string& label(std::size_t i) const { return outcomes_[i]; }
  std::optional<std::size_t> index_of(const std::string& label) const;
  std::optional<std::size_t> test_index(Test t) const;

  friend bool operator==(const TestSpace& a, const TestSpace& b) {
    return a.outcomes_ == b.outcomes_ && a.tests_ == b.tests_;
  }

 private:
  std::vector<std::string> outcomes_;
  std::vector<Test> tests_;
};

bool is_weight(const TestSpace& ts, const Weight& w);
void validate_weight(const TestSpace& ts, const Weight& w);

class Model {
 public:
  static Model full(TestSpace ts);
  // Drops generators that are convex combinations of the others.
  static Model generated(TestSpace ts, std::vector<Weight> generators);

  const TestSpace& test_space() const { return ts_; }
  bool is_full() const { return full_; }
  const std::vector<Weight>& generators() const { return generators_; }

  // Extreme points of the state set, lexicographically sorted and computed
  // once. Throws EmptyStateSpace.
  const std::vector<Weight>& pure_states() const;

 private:
  Model() = default;
  struct Cache;
  TestSpace ts_;
  bool full_ = true;
  std::vector<Weight> generators_;
  std::shared_ptr<Cache> cache_;
};

std::vector<Weight> enumerate_pure_states(const Model& model);

// Exact membership in the state set.
bool contains_state(const Model& model, const Weight& w);

struct StatePredicates {
  bool unital = false;
  bool sharp = false;
  bool separating = false;
  std::vector<Weight> dispersion_free;
};

StatePredicates state_predicates(const Model& model);

enum class Classicality { kClassical, kPartition, kNeither };
const char* to_string(Classicality c);
Classicality classify_classicality(const Model& model);

struct Distinction {
  std::size_t test;
  // outcomes[i] is the outcome that state i is certain to produce.
  std::vector<std::size_t> outcomes;
};

std::optional<Distinction> distinguishability(const Model& model,
                                              const std::vector<Weight>& states);

// Disjointification: outcomes (x, E) for x in E.
struct ContextualLift {
  TestSpace lifted;
  // forget[i] is the original outcome of lifted outcome i.
  std::vector<std::size_t> forget;
  Weight pullback(const Weight& w) const;
};

ContextualLift lift_contextual(const TestSpace& ts);

struct AutomorphismGroup {
  std::vector<std::vector<std::size_t>> generators;
  Z order;
};

AutomorphismGroup automorphism_group(const TestSpace& ts, std::size_t guard = 24);

// Applies an outcome permutation to a test space's test family.
bool is_symmetry(const TestSpace& ts, const std::vector<std::size_t>& perm);

}  // namespace gptkit
