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

#include <cmath>
#include <numbers>

#include "gptkit/error.hpp"
#include "gptkit/infotheory.hpp"

namespace gptkit {
namespace {

// Binary tree of boxes over Alice's bits [lo, hi). Leaves are bits.
struct Node {
  std::size_t lo, hi;
  int left = -1, right = -1;
  std::size_t box = 0;
};

int build(std::vector<Node>& nodes, std::size_t lo, std::size_t hi, std::size_t& boxes) {
  int id = static_cast<int>(nodes.size());
  nodes.push_back({lo, hi});
  if (hi - lo > 1) {
    std::size_t mid = (lo + hi) / 2;
    int l = build(nodes, lo, mid, boxes);
    int r = build(nodes, mid, hi, boxes);
    nodes[id].left = l;
    nodes[id].right = r;
    nodes[id].box = boxes++;
  }
  return id;
}

struct Boxes {
  std::vector<int> a, noise, x;
};

// Alice's bit for the subtree: c = c_left ⊕ a where the box input is
// c_left ⊕ c_right.
int encode(const std::vector<Node>& nodes, int id, const std::vector<int>& e, Boxes& bx) {
  const Node& n = nodes[id];
  if (n.left < 0) return e[n.lo];
  int c0 = encode(nodes, n.left, e, bx);
  int c1 = encode(nodes, n.right, e, bx);
  bx.x[n.box] = c0 ^ c1;
  return c0 ^ bx.a[n.box];
}

// Bob walks toward bit k. Box output b = a ⊕ x·y ⊕ noise.
int decode(const std::vector<Node>& nodes, int id, std::size_t k, int value, const Boxes& bx) {
  const Node& n = nodes[id];
  if (n.left < 0) return value;
  int y = k >= nodes[n.right].lo ? 1 : 0;
  int b = bx.a[n.box] ^ (bx.x[n.box] & y) ^ bx.noise[n.box];
  return decode(nodes, y ? n.right : n.left, k, value ^ b, bx);
}

double mutual_2x2(const std::array<std::array<double, 2>, 2>& t) {
  std::vector<double> joint{t[0][0], t[0][1], t[1][0], t[1][1]};
  std::vector<double> row{t[0][0] + t[0][1], t[1][0] + t[1][1]};
  std::vector<double> col{t[0][0] + t[1][0], t[0][1] + t[1][1]};
  return shannon_bits(row) + shannon_bits(col) - shannon_bits(joint);
}

template <class T>
std::vector<std::array<std::array<T, 2>, 2>> box_protocol(std::size_t n, const T& bias) {
  std::vector<Node> nodes;
  std::size_t boxes = 0;
  build(nodes, 0, n, boxes);
  std::vector<std::array<std::array<T, 2>, 2>> tables(n);
  for (auto& t : tables) t = {{{T(0), T(0)}, {T(0), T(0)}}};
  const T half = T(1) / T(2);
  for (std::size_t bits = 0; bits < (std::size_t{1} << n); ++bits) {
    std::vector<int> e(n);
    for (std::size_t i = 0; i < n; ++i) e[i] = (bits >> i) & 1;
    for (std::size_t as = 0; as < (std::size_t{1} << boxes); ++as) {
      for (std::size_t ns = 0; ns < (std::size_t{1} << boxes); ++ns) {
        Boxes bx{std::vector<int>(boxes), std::vector<int>(boxes), std::vector<int>(boxes)};
        T p = T(1);
        for (std::size_t i = 0; i < n; ++i) p = p * half;
        for (std::size_t j = 0; j < boxes; ++j) {
          bx.a[j] = (as >> j) & 1;
          bx.noise[j] = (ns >> j) & 1;
          p = p * half * (bx.noise[j] ? T(1) - bias : bias);
        }
        if (p == T(0)) continue;
        int message = encode(nodes, 0, e, bx);
        for (std::size_t k = 0; k < n; ++k) {
          int guess = decode(nodes, 0, k, message, bx);
          tables[k][e[k]][guess] = tables[k][e[k]][guess] + p;
        }
      }
    }
  }
  return tables;
}

void finish(IcRun& run) {
  run.lhs = 0;
  for (const auto& t : run.tables) {
    run.per_k.push_back(mutual_2x2(t));
    run.lhs += run.per_k.back();
  }
  run.violated = run.lhs > static_cast<double>(run.m) + 1e-12;
}

}  // namespace

const char* to_string(IcResource r) {
  switch (r) {
    case IcResource::kClassical:
      return "classical";
    case IcResource::kPrBox:
      return "pr";
    case IcResource::kQuantum:
      return "quantum";
  }
  return "?";
}

IcResource parse_ic_resource(const std::string& s) {
  if (s == "classical") return IcResource::kClassical;
  if (s == "pr") return IcResource::kPrBox;
  if (s == "quantum") return IcResource::kQuantum;
  throw ValidationError("unknown resource '" + s + "' (classical, pr, quantum)");
}

IcRun run_information_causality(std::size_t n, std::size_t m, IcResource resource) {
  if ((n != 2 && n != 4) || m != 1) {
    throw UnsupportedSize("information causality runs support N in {2, 4} and m = 1");
  }
  IcRun run;
  run.n = n;
  run.m = m;
  run.resource = resource;
  if (resource == IcResource::kPrBox) {
    for (const auto& t : box_protocol<Q>(n, Q(1))) {
      QMatrix exact(2, 2);
      std::array<std::array<double, 2>, 2> d{};
      for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
          exact(i, j) = t[i][j];
          d[i][j] = to_double(t[i][j]);
        }
      }
      run.exact_tables.push_back(std::move(exact));
      run.tables.push_back(d);
    }
  } else if (resource == IcResource::kQuantum) {
    double c = std::cos(std::numbers::pi / 8);
    for (const auto& t : box_protocol<double>(n, c * c)) run.tables.push_back(t);
  } else {
    // Every one-bit message function of Alice's bits; Bob guesses the
    // message itself, which is optimal for Σ_k I(e_k : m).
    const std::size_t inputs = std::size_t{1} << n;
    double best = -1;
    std::size_t best_f = 0;
    for (std::size_t f = 0; f < (std::size_t{1} << inputs); ++f) {
      double lhs = 0;
      for (std::size_t k = 0; k < n; ++k) {
        std::array<std::array<double, 2>, 2> t{};
        for (std::size_t e = 0; e < inputs; ++e) {
          t[(e >> k) & 1][(f >> e) & 1] += 1.0 / static_cast<double>(inputs);
        }
        lhs += mutual_2x2(t);
      }
      if (lhs > best + 1e-15) {
        best = lhs;
        best_f = f;
      }
    }
    for (std::size_t k = 0; k < n; ++k) {
      QMatrix exact(2, 2);
      for (std::size_t e = 0; e < inputs; ++e) {
        exact((e >> k) & 1, (best_f >> e) & 1) += Q(1, static_cast<long>(inputs));
      }
      std::array<std::array<double, 2>, 2> d{};
      for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) d[i][j] = to_double(exact(i, j));
      }
      run.exact_tables.push_back(std::move(exact));
      run.tables.push_back(d);
    }
  }
  finish(run);
  return run;
}

}  // namespace gptkit
