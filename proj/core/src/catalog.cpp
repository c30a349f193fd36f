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

#include "gptkit/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gptkit/error.hpp"

namespace gptkit::catalog {

TestSpace square_bit() { return TestSpace({"x", "x'", "y", "y'"}, {{0, 1}, {2, 3}}); }

TestSpace firefly() {
  return TestSpace({"a", "x", "b", "y", "c", "z"}, {{0, 1, 2}, {2, 3, 4}, {4, 5, 0}});
}

TestSpace classical(std::size_t n) {
  if (n == 0) throw ValidationError("classical model needs at least one outcome");
  std::vector<std::string> labels;
  Test t;
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back("e" + std::to_string(i));
    t.push_back(i);
  }
  return TestSpace(std::move(labels), {t});
}

namespace {

std::vector<std::string> cell_labels(std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      labels.push_back(std::to_string(i) + "," + std::to_string(j));
    }
  }
  return labels;
}

}  // namespace

TestSpace grid(std::size_t n) {
  if (n < 2) throw ValidationError("grid needs n >= 2");
  std::vector<Test> tests;
  for (std::size_t i = 0; i < n; ++i) {
    Test row, col;
    for (std::size_t j = 0; j < n; ++j) {
      row.push_back(i * n + j);
      col.push_back(j * n + i);
    }
    tests.push_back(row);
    tests.push_back(col);
  }
  return TestSpace(cell_labels(n), std::move(tests));
}

TestSpace graph(std::size_t n) {
  if (n < 2 || n > 7) throw ValidationError("graph needs 2 <= n <= 7");
  std::vector<std::size_t> f(n);
  std::iota(f.begin(), f.end(), 0);
  std::vector<Test> tests;
  do {
    Test t;
    for (std::size_t i = 0; i < n; ++i) t.push_back(i * n + f[i]);
    tests.push_back(t);
  } while (std::next_permutation(f.begin(), f.end()));
  return TestSpace(cell_labels(n), std::move(tests));
}

TestSpace stateless() {
  return TestSpace({"t0", "t1", "t2", "b0", "b1", "b2"},
                   {{0, 1, 2}, {3, 4, 5}, {0, 3}, {1, 4}, {2, 5}});
}

namespace {

// Rational point on the unit circle near angle theta, via the tangent
// half-angle substitution with a small-denominator approximation of t.
std::pair<Q, Q> circle_point(std::size_t j, std::size_t k) {
  if (4 * j == 2 * k) return {Q(-1), Q(0)};
  double theta = 2.0 * M_PI * static_cast<double>(j) / static_cast<double>(k);
  double t = std::tan(theta / 2.0);
  Q tq(static_cast<long long>(std::llround(t * 1000.0)), 1000);
  Q d = 1 + tq * tq;
  return {(1 - tq * tq) / d, 2 * tq / d};
}

}  // namespace

Model ngon(std::size_t k) {
  if (k < 3 || k > 64) throw ValidationError("ngon needs 3 <= k <= 64");
  std::vector<std::pair<Q, Q>> pts;
  for (std::size_t j = 0; j < k; ++j) pts.push_back(circle_point(j, k));

  std::vector<std::string> labels;
  std::vector<Test> tests;
  // values[o][v] = probability of outcome o in vertex state v.
  std::vector<QVec> values;
  for (std::size_t i = 0; i < k; ++i) {
    auto [x1, y1] = pts[i];
    auto [x2, y2] = pts[(i + 1) % k];
    Q a = y2 - y1, b = x1 - x2;
    Q c = -(a * x1 + b * y1);
    QVec f(k);
    Q top = 0;
    for (std::size_t v = 0; v < k; ++v) {
      f[v] = a * pts[v].first + b * pts[v].second + c;
      if (abs(f[v]) > abs(top)) top = f[v];
    }
    for (auto& q : f) q /= top;
    QVec g(k);
    for (std::size_t v = 0; v < k; ++v) g[v] = 1 - f[v];
    tests.push_back({2 * i, 2 * i + 1});
    labels.push_back("f" + std::to_string(i));
    labels.push_back("f" + std::to_string(i) + "'");
    values.push_back(f);
    values.push_back(g);
  }
  std::vector<Weight> gens;
  for (std::size_t v = 0; v < k; ++v) {
    Weight w(2 * k);
    for (std::size_t o = 0; o < 2 * k; ++o) w[o] = values[o][v];
    gens.push_back(std::move(w));
  }
  return Model::generated(TestSpace(std::move(labels), std::move(tests)), std::move(gens));
}

Model builtin(const std::string& spec) {
  std::string s = spec;
  const std::string prefix = "builtin:";
  if (s.rfind(prefix, 0) == 0) s = s.substr(prefix.size());
  auto param = [&](const std::string& name) -> std::optional<std::size_t> {
    for (const std::string sep : {":", ""}) {
      std::string head = name + sep;
      if (s.rfind(head, 0) == 0 && s.size() > head.size()) {
        std::string tail = s.substr(head.size());
        if (!std::all_of(tail.begin(), tail.end(), ::isdigit)) continue;
        return static_cast<std::size_t>(std::stoul(tail));
      }
    }
    return std::nullopt;
  };
  if (s == "squarebit") return Model::full(square_bit());
  if (s == "firefly") return Model::full(firefly());
  if (s == "stateless") return Model::full(stateless());
  if (auto n = param("classical")) return Model::full(classical(*n));
  if (auto n = param("grid")) return Model::full(grid(*n));
  if (auto n = param("graph")) return Model::full(graph(*n));
  if (auto n = param("ngon")) return ngon(*n);
  throw ValidationError("unknown builtin model '" + spec + "'");
}

}  // namespace gptkit::catalog
