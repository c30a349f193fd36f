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

#include <algorithm>
#include <set>

#include "gptkit/error.hpp"
#include "gptkit/testspace.hpp"

namespace gptkit {
namespace {

using Perm = std::vector<std::size_t>;
constexpr std::size_t kUnset = static_cast<std::size_t>(-1);

class AutSearch {
 public:
  explicit AutSearch(const TestSpace& ts) : ts_(ts), n_(ts.size()) {
    co_.assign(n_, std::vector<std::size_t>(n_, 0));
    sig_.assign(n_, {});
    member_.assign(n_, {});
    for (std::size_t t = 0; t < ts.tests().size(); ++t) {
      const Test& test = ts.tests()[t];
      for (auto x : test) {
        sig_[x].push_back(test.size());
        member_[x].push_back(t);
        for (auto y : test) ++co_[x][y];
      }
    }
    for (auto& s : sig_) std::sort(s.begin(), s.end());
    family_ = std::set<Test>(ts.tests().begin(), ts.tests().end());
  }

  bool compatible(std::size_t x, std::size_t y) const { return sig_[x] == sig_[y]; }

  // Finds an automorphism fixing 0..level-1 and sending level to target.
  std::optional<Perm> extend(std::size_t level, std::size_t target) {
    img_.assign(n_, kUnset);
    used_.assign(n_, false);
    for (std::size_t j = 0; j < level; ++j) {
      if (!assign(j, j)) return std::nullopt;
    }
    if (!assign(level, target)) return std::nullopt;
    if (backtrack(level + 1)) return img_;
    return std::nullopt;
  }

 private:
  bool assign(std::size_t x, std::size_t y) {
    if (used_[y] || !compatible(x, y)) return false;
    for (std::size_t z = 0; z < n_; ++z) {
      if (img_[z] != kUnset && co_[x][z] != co_[y][img_[z]]) return false;
    }
    if (co_[x][x] != co_[y][y]) return false;
    img_[x] = y;
    used_[y] = true;
    for (auto t : member_[x]) {
      const Test& test = ts_.tests()[t];
      Test image;
      bool complete = true;
      for (auto z : test) {
        if (img_[z] == kUnset) {
          complete = false;
          break;
        }
        image.push_back(img_[z]);
      }
      if (!complete) continue;
      std::sort(image.begin(), image.end());
      if (!family_.count(image)) {
        unassign(x);
        return false;
      }
    }
    return true;
  }

  void unassign(std::size_t x) {
    used_[img_[x]] = false;
    img_[x] = kUnset;
  }

  bool backtrack(std::size_t x) {
    while (x < n_ && img_[x] != kUnset) ++x;
    if (x == n_) return true;
    for (std::size_t y = 0; y < n_; ++y) {
      if (!assign(x, y)) continue;
      if (backtrack(x + 1)) return true;
      unassign(x);
    }
    return false;
  }

  const TestSpace& ts_;
  std::size_t n_;
  std::vector<std::vector<std::size_t>> co_;
  std::vector<std::vector<std::size_t>> sig_;
  std::vector<std::vector<std::size_t>> member_;
  std::set<Test> family_;
  Perm img_;
  std::vector<bool> used_;
};

std::vector<std::size_t> orbit(std::size_t point, const std::vector<Perm>& gens) {
  std::vector<std::size_t> orb{point};
  std::set<std::size_t> seen{point};
  for (std::size_t k = 0; k < orb.size(); ++k) {
    for (const auto& g : gens) {
      std::size_t y = g[orb[k]];
      if (seen.insert(y).second) orb.push_back(y);
    }
  }
  return orb;
}

}  // namespace

AutomorphismGroup automorphism_group(const TestSpace& ts, std::size_t guard) {
  const std::size_t n = ts.size();
  if (n > guard) throw SizeGuardExceeded("automorphism search", n, guard);
  AutSearch search(ts);
  AutomorphismGroup group;
  group.order = 1;
  // Stabilizer chain along base 0, 1, ..., n-1, deepest level first, so the
  // generators known at level i already generate the deeper stabilizers.
  for (std::size_t level = n; level-- > 0;) {
    auto orb = orbit(level, group.generators);
    std::set<std::size_t> in_orbit(orb.begin(), orb.end());
    for (std::size_t target = level + 1; target < n; ++target) {
      if (in_orbit.count(target) || !search.compatible(level, target)) continue;
      auto perm = search.extend(level, target);
      if (!perm) continue;
      group.generators.push_back(*perm);
      orb = orbit(level, group.generators);
      in_orbit = std::set<std::size_t>(orb.begin(), orb.end());
    }
    group.order *= orb.size();
  }
  return group;
}

}  // namespace gptkit
