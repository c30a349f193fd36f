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

// Acceptance gate: one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "gptkit/catalog.hpp"
#include "gptkit/composite.hpp"
#include "gptkit/infotheory.hpp"
#include "gptkit/jordan.hpp"
#include "gptkit/protocols.hpp"
#include "gptkit/testspace.hpp"
#include "oracle.hpp"

namespace {

using namespace gptkit;
using oracle::qv;

// Collects failed expectations for one criterion.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
  }
  bool ok() const { return failures_.empty(); }
  std::string summary() const {
    std::string s;
    for (const auto& f : failures_) s += (s.empty() ? "" : "; ") + f;
    return s;
  }

 private:
  std::vector<std::string> failures_;
};

LinearHull hull(const std::string& name) { return linear_hull(catalog::builtin(name)); }

bool is_vertex_of(const LinearHull& h, const Weight& w) {
  for (const auto& v : h.vertices()) {
    if (v == w) return true;
  }
  return false;
}

QVec random_mix(const std::vector<QVec>& pts, std::mt19937& rng) {
  std::uniform_int_distribution<int> w(0, 7);
  std::vector<int> ws(pts.size());
  int total = 0;
  while (total == 0) {
    total = 0;
    for (auto& x : ws) total += (x = w(rng));
  }
  QVec out(pts.front().size());
  for (std::size_t i = 0; i < pts.size(); ++i) out = add(out, scale(Q(ws[i], total), pts[i]));
  return out;
}

void firefly(Check& c) {
  Model m = Model::full(catalog::firefly());
  auto v = enumerate_pure_states(m);
  c.expect(v.size() == 5, "expected 5 pure states, got " + std::to_string(v.size()));
  const TestSpace& ts = m.test_space();
  bool found = false;
  for (const auto& w : v) {
    bool eps = true;
    for (std::size_t x = 0; x < ts.size(); ++x) {
      const std::string& l = ts.label(x);
      Q want = (l == "a" || l == "b" || l == "c") ? Q(1, 2) : Q(0);
      if (w[x] != want) eps = false;
    }
    found = found || eps;
  }
  c.expect(found, "state with 1/2 on a, b, c missing");
  c.expect(v == oracle::weight_vertices(ts), "oracle vertex mismatch");
}

void square_bit(Check& c) {
  Model m = Model::full(catalog::square_bit());
  auto v = enumerate_pure_states(m);
  std::set<std::pair<Q, Q>> corners;
  for (const auto& w : v) corners.insert({w[0], w[2]});
  std::set<std::pair<Q, Q>> square = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
  c.expect(v.size() == 4 && corners == square, "pure states are not the unit-square corners");
  LinearHull h = linear_hull(m);
  TensorSpace t(h, h, TensorKind::kMax);
  ChshOptimum opt = chsh_max(t);
  c.expect(opt.value == 4, "S_max = " + to_string(opt.value));
  CompositeState s = CompositeState::from_coords(h, h, opt.state);
  c.expect(!is_separable(s).separable, "maximizer is separable");
  for (const auto& q : s.table().data()) {
    c.expect(q == 0 || q == Q(1, 2), "maximizer is not PR-type");
  }
}

void nonsignaling_polytope(Check& c) {
  LinearHull h = hull("squarebit");
  TensorSpace t(h, h, TensorKind::kMax);
  auto states = t.vertex_states();
  std::vector<QVec> tables;
  std::size_t separable = 0, deterministic = 0;
  for (const auto& s : states) {
    tables.push_back(s.table().data());
    bool sep = is_separable(s).separable;
    bool det = std::all_of(s.table().data().begin(), s.table().data().end(),
                           [](const Q& q) { return q == 0 || q == 1; });
    separable += sep;
    if (sep && det) ++deterministic;
    if (!sep) {
      c.expect(!is_vertex_of(h, s.marginal_a()) && !is_vertex_of(h, s.marginal_b()),
               "entangled vertex with a pure marginal");
    }
    for (const auto& test : h.test_space().tests()) {
      std::vector<QVec> obs;
      for (auto x : test) obs.push_back(h.outcome(x));
      c.expect(law_of_total_probability_check(s, obs).holds, "total probability fails");
    }
  }
  std::sort(tables.begin(), tables.end());
  c.expect(states.size() == 24, "vertex count " + std::to_string(states.size()));
  c.expect(separable == 16 && deterministic == 16, "separable count " + std::to_string(separable));
  c.expect(tables == oracle::nonsignaling_vertices(h.test_space(), h.test_space()),
           "oracle vertex mismatch");
}

void grid_and_graph(Check& c) {
  auto v = enumerate_pure_states(Model::full(catalog::grid(3)));
  std::vector<std::size_t> perm = {0, 1, 2};
  std::vector<QVec> expected;
  do {
    QVec w(9);
    for (std::size_t i = 0; i < 3; ++i) w[i * 3 + perm[i]] = 1;
    expected.push_back(w);
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::sort(expected.begin(), expected.end());
  std::sort(v.begin(), v.end());
  c.expect(v == expected, "grid pure states are not the permutation matrices");
  TestSpace g = catalog::graph(3);
  auto gv = enumerate_pure_states(Model::full(g));
  c.expect(gv.size() == 6, "graph has " + std::to_string(gv.size()) + " pure states");
  c.expect(gv == oracle::weight_vertices(g), "graph oracle mismatch");
}

void namioka_phelps(Check& c) {
  const std::vector<std::string> catalog_models = {"squarebit", "firefly", "grid3", "graph3",
                                                   "ngon:3",    "ngon:5",  "ngon:6", "classical:3"};
  for (std::size_t n = 2; n <= 4; ++n) {
    LinearHull simplex = hull("classical:" + std::to_string(n));
    for (const auto& name : catalog_models) {
      TensorSpace t(simplex, hull(name), TensorKind::kMax);
      for (const auto& s : t.vertex_states()) {
        if (!is_separable(s).separable) {
          c.expect(false, "entangled vertex in classical:" + std::to_string(n) + " x " + name);
          break;
        }
      }
    }
  }
  LinearHull sq = hull("squarebit");
  std::size_t entangled = 0;
  for (const auto& s : TensorSpace(sq, sq, TensorKind::kMax).vertex_states()) {
    entangled += !is_separable(s).separable;
  }
  c.expect(entangled > 0, "square bit pair has no entangled vertex");
}

void no_broadcasting(Check& c) {
  LinearHull sq = hull("squarebit");
  Broadcast all = broadcastable(sq, sq.vertices());
  c.expect(!all.feasible, "all four vertices broadcast");
  c.expect(!all.certificate.empty() && !is_zero(all.certificate), "missing certificate");
  std::size_t pairs = 0;
  const auto& v = sq.vertices();
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      if (!find_distinguishing_observable(sq, {v[i], v[j]})) continue;
      ++pairs;
      Broadcast b = broadcastable(sq, {v[i], v[j]});
      c.expect(b.feasible && b.cloning.has_value(), "distinguishable pair not broadcast");
      if (!b.cloning) continue;
      for (const auto& w : {v[i], v[j]}) {
        QVec x = sq.state_coords(w);
        QMatrix xx(sq.dim(), sq.dim());
        for (std::size_t r = 0; r < sq.dim(); ++r) {
          for (std::size_t s = 0; s < sq.dim(); ++s) xx(r, s) = x[r] * x[s];
        }
        c.expect(b.cloning->apply(x, sq.dim()) == xx, "cloning map is not a copy");
      }
    }
  }
  c.expect(pairs > 0, "no distinguishable pair found");
}

void remote_evaluation(Check& c) {
  LinearHull sq = hull("squarebit");
  TensorSpace t(sq, sq, TensorKind::kMax);
  std::vector<QVec> flat_states;
  for (const auto& s : t.vertex_coords()) flat_states.push_back(flatten(s));
  std::vector<QVec> product_effects;
  auto ev = effect_vertices(sq);
  for (const auto& a : ev) {
    for (const auto& b : ev) product_effects.push_back(kron(a, b));
  }
  std::mt19937 rng(2026);
  std::uniform_int_distribution<std::size_t> pick(0, ev.size() - 1);
  for (int k = 0; k < 100; ++k) {
    Weight alpha = sq.weight_of(random_mix(sq.vertex_coords(), rng));
    CompositeState omega = CompositeState::from_coords(
        sq, sq, QMatrix::reshape(random_mix(flat_states, rng), sq.dim(), sq.dim()));
    QMatrix f = QMatrix::reshape(random_mix(product_effects, rng), sq.dim(), sq.dim());
    RemoteEvaluation r = remote_evaluate(sq, alpha, omega, f);
    c.expect(r.identity_verified, "remote evaluation identity fails at tuple " + std::to_string(k));
    // Direct check with an explicit effect b on B: (f ⊗ b)(α ⊗ ω) = b(τ(α)).
    const QVec& b = ev[pick(rng)];
    QVec x = sq.state_coords(alpha);
    Q lhs = 0;
    const QMatrix& w = omega.coords();
    for (std::size_t i = 0; i < sq.dim(); ++i) {
      for (std::size_t j = 0; j < sq.dim(); ++j) {
        for (std::size_t l = 0; l < sq.dim(); ++l) lhs += x[i] * f(i, j) * w(j, l) * b[l];
      }
    }
    c.expect(lhs == dot(b, r.tau_alpha),
             "b(τ(α)) mismatch at tuple " + std::to_string(k));
  }
  for (std::size_t n = 2; n <= 4; ++n) {
    CompactClosure cc = check_compact_closure_pair(Q(1, static_cast<long>(n)) * QMatrix::identity(n),
                                                   Q(static_cast<long>(n)) * QMatrix::identity(n));
    c.expect(cc.holds && is_zero(cc.residual), "classical snake equations fail");
  }
  JordanSystem q = JordanSystem::complex_herm(2);
  Eigen::MatrixXcd phi = max_entangled_projector(2);
  CompactClosureReal cq =
      check_compact_closure_pair(bipartite_coords(q, phi), bipartite_coords(q, 4.0 * phi));
  c.expect(cq.holds && cq.residual < 1e-9, "qubit snake residual " + std::to_string(cq.residual));
}

void tomography(Check& c) {
  TomographyDims cx = local_tomography_dimensions(JordanKind::kComplexHerm, 2, 2);
  c.expect(cx.dim_ab == 16 && cx.product == 16 && cx.locally_tomographic, "complex 2x2");
  TomographyDims re = local_tomography_dimensions(JordanKind::kRealSym, 2, 2);
  c.expect(re.dim_ab == 10 && re.product == 9 && !re.locally_tomographic, "real 2x2");
}

void quantum_chsh_bound(Check& c) {
  const double tsirelson = 2 * std::numbers::sqrt2;
  QuantumChshOptimum opt = optimize_quantum_chsh();
  c.expect(std::abs(opt.value - tsirelson) < 1e-6, "optimum " + std::to_string(opt.value));
  std::mt19937_64 rng(10);
  std::normal_distribution<double> g;
  auto dir = [&] {
    Eigen::Vector3d v(g(rng), g(rng), g(rng));
    return Eigen::Vector3d(v.normalized());
  };
  JordanSystem two = JordanSystem::complex_herm(4);
  Eigen::MatrixXcd rho = singlet();
  double worst = 0;
  for (int k = 0; k < 10000; ++k) {
    if (k % 2) rho = two.to_matrix(two.random_state(rng));
    Eigen::Vector3d a0 = dir(), a1 = dir(), b0 = dir(), b1 = dir();
    worst = std::max(worst, std::abs(quantum_chsh(rho, a0, a1, b0, b1)));
    worst = std::max(worst, chsh_operator_max(a0, a1, b0, b1));
  }
  c.expect(worst <= tsirelson + 1e-9, "random configuration reached " + std::to_string(worst));
}

void information_causality(Check& c) {
  for (std::size_t n : {2u, 4u}) {
    IcRun r = run_information_causality(n, 1, IcResource::kPrBox);
    bool exact = r.exact_tables.size() == n;
    for (const auto& t : r.exact_tables) {
      exact = exact && t(0, 0) == Q(1, 2) && t(1, 1) == Q(1, 2) && is_zero(t(0, 1)) &&
              is_zero(t(1, 0));
    }
    c.expect(exact && r.lhs == static_cast<double>(n), "PR lhs " + std::to_string(r.lhs));
  }
  // Every deterministic one-bit message function of two bits.
  double best = 0;
  for (unsigned f = 0; f < 16; ++f) {
    double lhs = 0;
    for (int k = 0; k < 2; ++k) {
      std::array<std::array<double, 2>, 2> t{};
      for (unsigned e = 0; e < 4; ++e) t[(e >> k) & 1][(f >> e) & 1] += 0.25;
      double h_joint = 0, h_row = 0, h_col = 0;
      for (int i = 0; i < 2; ++i) {
        double r = t[i][0] + t[i][1], col = t[0][i] + t[1][i];
        if (r > 0) h_row -= r * std::log2(r);
        if (col > 0) h_col -= col * std::log2(col);
        for (int j = 0; j < 2; ++j) {
          if (t[i][j] > 0) h_joint -= t[i][j] * std::log2(t[i][j]);
        }
      }
      lhs += h_row + h_col - h_joint;
    }
    best = std::max(best, lhs);
  }
  IcRun cl = run_information_causality(2, 1, IcResource::kClassical);
  c.expect(best <= 1 + 1e-12 && cl.lhs <= 1 + 1e-12, "classical lhs " + std::to_string(best));
  c.expect(std::abs(cl.lhs - best) < 1e-12, "library classical optimum differs from search");
}

void entropy_oracles(Check& c) {
  LinearHull sq = hull("squarebit");
  EntropyReport h = measurement_entropy(sq.test_space(), qv({"3/4", "1/4", "1/2", "1/2"}));
  c.expect(std::abs(h.value_bits - oracle::h2(0.75)) < 1e-12, "H = " + std::to_string(h.value_bits));
  EntropyReport s = mixing_entropy(sq, qv({"1/2", "1/2", "1/2", "1/2"}));
  c.expect(s.value_bits == 1.0, "S(center) = " + std::to_string(s.value_bits));
  // Grid search over all convex weights of the four corners on a 1e-3 lattice.
  const auto& v = sq.vertices();
  const int steps = 1000;
  double vx[4], vy[4];
  for (int p = 0; p < 4; ++p) {
    vx[p] = to_double(v[p][0]);
    vy[p] = to_double(v[p][2]);
  }
  double best = 1e9;
  for (int i = 0; i <= steps; ++i) {
    for (int j = 0; i + j <= steps; ++j) {
      for (int k = 0; i + j + k <= steps; ++k) {
        int l = steps - i - j - k;
        double w[4] = {i / 1000.0, j / 1000.0, k / 1000.0, l / 1000.0};
        double x = 0, y = 0;
        for (int p = 0; p < 4; ++p) {
          x += w[p] * vx[p];
          y += w[p] * vy[p];
        }
        if (std::abs(x - 0.5) > 1e-12 || std::abs(y - 0.5) > 1e-12) continue;
        best = std::min(best, shannon_bits(std::vector<double>(w, w + 4)));
      }
    }
  }
  c.expect(std::abs(best - s.value_bits) < 1e-6, "grid minimum " + std::to_string(best));
}

void jordan(Check& c) {
  for (const auto& sys : {JordanSystem::real_sym(3), JordanSystem::complex_herm(3),
                          JordanSystem::quat_herm(3), JordanSystem::spin(4)}) {
    JordanSuiteReport r = jordan_suite(sys, 1000, 1);
    std::string name = to_string(sys.kind());
    c.expect(r.max_residual() < 1e-8, name + " residual " + std::to_string(r.max_residual()));
    c.expect(r.self_dual, name + " not self-dual");
    if (sys.kind() == JordanKind::kComplexHerm) {
      c.expect(r.purification && *r.purification < 1e-8, "purification residual");
      c.expect(r.hanche_olsen && *r.hanche_olsen < 1e-8, "Hanche-Olsen residual");
    }
  }
}

struct Criterion {
  int id;
  std::string title;
  double limit_seconds;
  std::function<void(Check&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "firefly box pure states", 1, firefly},
      {2, "square bit and CHSH maximum", 5, square_bit},
      {3, "no-signaling polytope of two square bits", 0, nonsignaling_polytope},
      {4, "grid and graph test spaces", 0, grid_and_graph},
      {5, "classical factors admit no entanglement", 0, namioka_phelps},
      {6, "no-broadcasting", 0, no_broadcasting},
      {7, "remote evaluation and snake equations", 0, remote_evaluation},
      {8, "local tomography dimensions", 0, tomography},
      {9, "quantum CHSH bound", 0, quantum_chsh_bound},
      {10, "information causality", 0, information_causality},
      {11, "entropy oracles", 0, entropy_oracles},
      {12, "Jordan suite", 60, jordan},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    Check c;
    auto start = std::chrono::steady_clock::now();
    try {
      cr.run(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (cr.limit_seconds > 0) {
      c.expect(secs < cr.limit_seconds, "took " + std::to_string(secs) + " s");
    }
    char line[256];
    std::snprintf(line, sizeof line, "%s %2d  %-44s %8.3f s", c.ok() ? "PASS" : "FAIL", cr.id,
                  cr.title.c_str(), secs);
    std::cout << line;
    if (!c.ok()) std::cout << "  (" << c.summary() << ")";
    std::cout << "\n";
    failed += !c.ok();
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : "all criteria passed")
            << "\n";
  return failed ? 1 : 0;
}
