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

#include "gptkit/testspace.hpp"

#include <algorithm>
#include <mutex>
#include <set>

#include "gptkit/cone_enum.hpp"
#include "gptkit/error.hpp"
#include "gptkit/simplex.hpp"

namespace gptkit {

TestSpace::TestSpace(std::vector<std::string> outcomes, std::vector<Test> tests)
    : outcomes_(std::move(outcomes)), tests_(std::move(tests)) {
  std::set<std::string> labels(outcomes_.begin(), outcomes_.end());
  if (labels.size() != outcomes_.size()) throw ValidationError("duplicate outcome label");
  std::vector<bool> covered(outcomes_.size(), false);
  std::set<Test> seen;
  for (auto& t : tests_) {
    if (t.empty()) throw ValidationError("empty test");
    std::sort(t.begin(), t.end());
    if (std::adjacent_find(t.begin(), t.end()) != t.end()) {
      throw ValidationError("test repeats an outcome");
    }
    for (auto x : t) {
      if (x >= outcomes_.size()) throw ValidationError("test refers to unknown outcome");
      covered[x] = true;
    }
    if (!seen.insert(t).second) throw ValidationError("duplicate test");
  }
  for (std::size_t i = 0; i < covered.size(); ++i) {
    if (!covered[i]) throw ValidationError("outcome '" + outcomes_[i] + "' lies in no test");
  }
}

std::optional<std::size_t> TestSpace::index_of(const std::string& label) const {
  auto it = std::find(outcomes_.begin(), outcomes_.end(), label);
  if (it == outcomes_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - outcomes_.begin());
}

std::optional<std::size_t> TestSpace::test_index(Test t) const {
  std::sort(t.begin(), t.end());
  auto it = std::find(tests_.begin(), tests_.end(), t);
  if (it == tests_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - tests_.begin());
}

bool is_weight(const TestSpace& ts, const Weight& w) {
  if (w.size() != ts.size()) return false;
  for (const auto& v : w) {
    if (v < 0 || v > 1) return false;
  }
  for (const auto& t : ts.tests()) {
    Q s = 0;
    for (auto x : t) s += w[x];
    if (s != 1) return false;
  }
  return true;
}

void validate_weight(const TestSpace& ts, const Weight& w) {
  if (w.size() != ts.size()) {
    throw ValidationError("weight has " + std::to_string(w.size()) + " entries, expected " +
                          std::to_string(ts.size()));
  }
  if (!is_weight(ts, w)) throw ValidationError("not a probability weight");
}

namespace {

std::vector<Weight> full_polytope_vertices(const TestSpace& ts) {
  const std::size_t n = ts.size();
  std::vector<QVec> eq;
  QVec beq;
  for (const auto& t : ts.tests()) {
    QVec row(n);
    for (auto x : t) row[x] = 1;
    eq.push_back(std::move(row));
    beq.push_back(1);
  }
  std::vector<QVec> ineq;
  for (std::size_t i = 0; i < n; ++i) ineq.push_back(unit_vector(n, i));
  return polytope_vertices(eq, beq, ineq, QVec(n), n);
}

// True if target is a convex combination of pts.
bool in_hull(const std::vector<Weight>& pts, const Weight& target) {
  if (pts.empty()) return false;
  LinearProgram lp;
  std::size_t first = lp.add_vars(pts.size());
  for (std::size_t j = 0; j < target.size(); ++j) {
    LinearProgram::Terms row;
    for (std::size_t k = 0; k < pts.size(); ++k) {
      if (!is_zero(pts[k][j])) row.push_back({first + k, pts[k][j]});
    }
    lp.add_eq(row, target[j]);
  }
  LinearProgram::Terms norm;
  for (std::size_t k = 0; k < pts.size(); ++k) norm.push_back({first + k, 1});
  lp.add_eq(norm, 1);
  return lp.feasibility().feasible;
}

}  // namespace

struct Model::Cache {
  std::once_flag once;
  std::vector<Weight> vertices;
  bool empty = false;
};

Model Model::full(TestSpace ts) {
  Model m;
  m.ts_ = std::move(ts);
  m.full_ = true;
  m.cache_ = std::make_shared<Cache>();
  return m;
}

Model Model::generated(TestSpace ts, std::vector<Weight> generators) {
  for (const auto& g : generators) validate_weight(ts, g);
  std::sort(generators.begin(), generators.end());
  generators.erase(std::unique(generators.begin(), generators.end()), generators.end());
  std::vector<Weight> kept;
  for (std::size_t i = 0; i < generators.size(); ++i) {
    std::vector<Weight> others;
    for (std::size_t j = 0; j < generators.size(); ++j) {
      if (j != i) others.push_back(generators[j]);
    }
    if (!in_hull(others, generators[i])) kept.push_back(generators[i]);
  }
  Model m;
  m.ts_ = std::move(ts);
  m.full_ = false;
  m.generators_ = std::move(kept);
  m.cache_ = std::make_shared<Cache>();
  return m;
}

const std::vector<Weight>& Model::pure_states() const {
  std::call_once(cache_->once, [this] {
    cache_->vertices = full_ ? full_polytope_vertices(ts_) : generators_;
    cache_->empty = cache_->vertices.empty();
  });
  if (cache_->empty) throw EmptyStateSpace();
  return cache_->vertices;
}

std::vector<Weight> enumerate_pure_states(const Model& model) { return model.pure_states(); }

bool contains_state(const Model& model, const Weight& w) {
  if (!is_weight(model.test_space(), w)) return false;
  if (model.is_full()) return true;
  return in_hull(model.pure_states(), w);
}

StatePredicates state_predicates(const Model& model) {
  const auto& verts = model.pure_states();
  const std::size_t n = model.test_space().size();
  StatePredicates p;
  for (const auto& v : verts) {
    bool df = std::all_of(v.begin(), v.end(), [](const Q& q) { return q == 0 || q == 1; });
    if (df) p.dispersion_free.push_back(v);
  }
  p.unital = true;
  p.sharp = true;
  for (std::size_t x = 0; x < n; ++x) {
    std::size_t certain = 0;
    for (const auto& v : verts) {
      if (v[x] == 1) ++certain;
    }
    if (certain == 0) p.unital = false;
    if (certain != 1) p.sharp = false;
  }
  p.separating = true;
  for (std::size_t x = 0; x < n && p.separating; ++x) {
    for (std::size_t y = x + 1; y < n && p.separating; ++y) {
      bool split = std::any_of(verts.begin(), verts.end(),
                               [&](const Weight& v) { return v[x] != v[y]; });
      if (!split) p.separating = false;
    }
  }
  return p;
}

const char* to_string(Classicality c) {
  switch (c) {
    case Classicality::kClassical: return "classical";
    case Classicality::kPartition: return "partition";
    case Classicality::kNeither: return "neither";
  }
  return "?";
}

Classicality classify_classicality(const Model& model) {
  StatePredicates p = state_predicates(model);
  const auto& df = p.dispersion_free;
  const std::size_t n = model.test_space().size();
  bool unital = true;
  for (std::size_t x = 0; x < n && unital; ++x) {
    unital = std::any_of(df.begin(), df.end(), [&](const Weight& v) { return v[x] == 1; });
  }
  bool separating = true;
  for (std::size_t x = 0; x < n && separating; ++x) {
    for (std::size_t y = x + 1; y < n && separating; ++y) {
      separating = std::any_of(df.begin(), df.end(),
                               [&](const Weight& v) { return v[x] != v[y]; });
    }
  }
  if (!unital || !separating) return Classicality::kNeither;
  return p.sharp ? Classicality::kClassical : Classicality::kPartition;
}

std::optional<Distinction> distinguishability(const Model& model,
                                              const std::vector<Weight>& states) {
  const TestSpace& ts = model.test_space();
  for (const auto& s : states) validate_weight(ts, s);
  if (states.empty()) return std::nullopt;
  for (std::size_t t = 0; t < ts.tests().size(); ++t) {
    const Test& test = ts.tests()[t];
    Distinction d{t, {}};
    for (std::size_t i = 0; i < states.size(); ++i) {
      std::optional<std::size_t> pick;
      for (auto x : test) {
        bool ok = states[i][x] == 1;
        for (std::size_t j = 0; j < states.size() && ok; ++j) {
          if (j != i && states[j][x] != 0) ok = false;
        }
        if (ok) {
          pick = x;
          break;
        }
      }
      if (!pick) break;
      d.outcomes.push_back(*pick);
    }
    if (d.outcomes.size() == states.size()) return d;
  }
  return std::nullopt;
}

Weight ContextualLift::pullback(const Weight& w) const {
  Weight out(forget.size());
  for (std::size_t i = 0; i < forget.size(); ++i) out[i] = w[forget[i]];
  return out;
}

ContextualLift lift_contextual(const TestSpace& ts) {
  std::vector<std::string> labels;
  std::vector<Test> tests;
  std::vector<std::size_t> forget;
  for (std::size_t t = 0; t < ts.tests().size(); ++t) {
    Test lifted;
    for (auto x : ts.tests()[t]) {
      lifted.push_back(labels.size());
      labels.push_back(ts.label(x) + "@" + std::to_string(t));
      forget.push_back(x);
    }
    tests.push_back(std::move(lifted));
  }
  return ContextualLift{TestSpace(std::move(labels), std::move(tests)), std::move(forget)};
}

bool is_symmetry(const TestSpace& ts, const std::vector<std::size_t>& perm) {
  std::set<Test> family(ts.tests().begin(), ts.tests().end());
  for (const auto& t : ts.tests()) {
    Test img;
    for (auto x : t) img.push_back(perm[x]);
    std::sort(img.begin(), img.end());
    if (!family.count(img)) return false;
  }
  return true;
}

}  // namespace gptkit
