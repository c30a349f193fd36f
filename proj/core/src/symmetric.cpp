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

#include "gptkit/symmetric.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "gptkit/error.hpp"

namespace gptkit {

Perm compose(const Perm& a, const Perm& b) {
  Perm c(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) c[i] = a[b[i]];
  return c;
}

Perm identity_perm(std::size_t degree) {
  Perm p(degree);
  for (std::size_t i = 0; i < degree; ++i) p[i] = i;
  return p;
}

std::vector<Perm> PermGroup::elements() const {
  std::set<Perm> seen{identity_perm(degree)};
  std::vector<Perm> frontier{identity_perm(degree)};
  while (!frontier.empty()) {
    std::vector<Perm> next;
    for (const auto& e : frontier) {
      for (const auto& g : generators) {
        Perm p = compose(g, e);
        if (seen.insert(p).second) next.push_back(std::move(p));
      }
    }
    frontier = std::move(next);
  }
  return std::vector<Perm>(seen.begin(), seen.end());
}

PermGroup symmetric_group_on(const std::vector<std::size_t>& points, std::size_t degree) {
  PermGroup g{degree, {}};
  if (points.size() < 2) return g;
  Perm swap = identity_perm(degree);
  std::swap(swap[points[0]], swap[points[1]]);
  g.generators.push_back(swap);
  if (points.size() > 2) {
    Perm cycle = identity_perm(degree);
    for (std::size_t i = 0; i < points.size(); ++i) {
      cycle[points[i]] = points[(i + 1) % points.size()];
    }
    g.generators.push_back(cycle);
  }
  return g;
}

PermGroup pointwise_stabilizer(const PermGroup& g, const std::vector<std::size_t>& points) {
  PermGroup s{g.degree, {}};
  for (const auto& e : g.elements()) {
    bool fixes = std::all_of(points.begin(), points.end(),
                             [&](std::size_t p) { return e[p] == p; });
    if (fixes) s.generators.push_back(e);
  }
  return s;
}

PermGroup setwise_stabilizer(const PermGroup& g, const std::vector<std::size_t>& set) {
  std::set<std::size_t> target(set.begin(), set.end());
  PermGroup s{g.degree, {}};
  for (const auto& e : g.elements()) {
    bool keeps = std::all_of(set.begin(), set.end(),
                             [&](std::size_t p) { return target.count(e[p]) > 0; });
    if (keeps) s.generators.push_back(e);
  }
  return s;
}

PermGroup join(const PermGroup& a, const PermGroup& b) {
  PermGroup j{a.degree, a.generators};
  j.generators.insert(j.generators.end(), b.generators.begin(), b.generators.end());
  return j;
}

SymmetricTestSpace build_symmetric_testspace(const PermGroup& g, const PermGroup& h,
                                             const PermGroup& k,
                                             const std::vector<std::size_t>& e) {
  if (e.empty()) throw ValidationError("reference test is empty");
  if (h.degree != g.degree || k.degree != g.degree) {
    throw ValidationError("groups act on different domains");
  }
  std::vector<Perm> gel = g.elements();
  std::set<Perm> gset(gel.begin(), gel.end());
  std::vector<Perm> hel = h.elements();
  std::vector<Perm> kel = k.elements();
  for (const auto& x : hel) {
    if (!gset.count(x)) throw ValidationError("H is not a subgroup of G");
  }
  for (const auto& x : kel) {
    if (!gset.count(x)) throw ValidationError("K is not a subgroup of G");
  }

  std::set<std::size_t> eset(e.begin(), e.end());
  const std::size_t xo = *eset.begin();
  // Transversal: for each x in E some h in H with h(x_o) = x.
  std::map<std::size_t, Perm> carrier;
  std::set<Perm> h_stab;
  for (const auto& x : hel) {
    for (auto p : eset) {
      if (!eset.count(x[p])) throw ValidationError("E is not H-invariant");
    }
    carrier.emplace(x[xo], x);
    if (x[xo] == xo) h_stab.insert(x);
  }
  if (carrier.size() != eset.size()) throw ValidationError("H is not transitive on E");

  std::set<Perm> kset(kel.begin(), kel.end());
  std::set<Perm> hk;
  for (const auto& x : hel) {
    if (kset.count(x)) hk.insert(x);
  }
  if (hk != h_stab) throw StabilizerMismatch("K ∩ H differs from the stabilizer of x_o in H");

  // Cosets gK, keyed by their smallest element.
  std::map<Perm, std::size_t> coset_of;
  std::vector<Perm> reps;
  for (const auto& x : gel) {
    Perm key = x;
    for (const auto& y : kel) key = std::min(key, compose(x, y));
    auto it = coset_of.find(key);
    if (it == coset_of.end()) {
      std::size_t id = reps.size();
      coset_of.emplace(key, id);
      reps.push_back(key);
    }
  }
  // Re-index by element (rep order is already sorted since gel is sorted
  // and keys are coset minima encountered in increasing order).
  auto coset = [&](const Perm& x) {
    Perm key = x;
    for (const auto& y : kel) key = std::min(key, compose(x, y));
    return coset_of.at(key);
  };

  std::set<Test> tests;
  std::vector<Test> ordered;
  for (const auto& x : gel) {
    Test t;
    for (const auto& [pt, hx] : carrier) t.push_back(coset(compose(x, hx)));
    std::sort(t.begin(), t.end());
    if (tests.insert(t).second) ordered.push_back(t);
  }
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < reps.size(); ++i) labels.push_back("c" + std::to_string(i));

  SymmetricTestSpace out{TestSpace(std::move(labels), std::move(ordered)), {}};
  for (const auto& gen : g.generators) {
    Perm action(reps.size());
    for (std::size_t i = 0; i < reps.size(); ++i) action[i] = coset(compose(gen, reps[i]));
    out.outcome_action.push_back(std::move(action));
  }
  return out;
}

}  // namespace gptkit
