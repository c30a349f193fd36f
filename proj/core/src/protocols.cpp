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

#include "gptkit/protocols.hpp"

#include <algorithm>
#include <numeric>

#include "gptkit/error.hpp"
#include "gptkit/linalg.hpp"
#include "gptkit/simplex.hpp"

namespace gptkit {
namespace {

using Terms = LinearProgram::Terms;

Q max_abs_diff(const QMatrix& m, const QMatrix& id) {
  Q r = 0;
  for (std::size_t k = 0; k < m.data().size(); ++k) {
    Q d = abs(m.data()[k] - id.data()[k]);
    if (d > r) r = d;
  }
  return r;
}

QMatrix outer(const QVec& x, const QVec& y) {
  QMatrix m(x.size(), y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < y.size(); ++j) m(i, j) = x[i] * y[j];
  }
  return m;
}

// Adds constraints making variables [first, first + d) an element of the
// effect cone of the hull.
void add_effect_cone(LinearProgram& lp, const LinearHull& h, std::size_t first) {
  for (const auto& f : h.E().cone.facets()) {
    Terms t;
    for (std::size_t j = 0; j < h.dim(); ++j) {
      if (!is_zero(f[j])) t.push_back({first + j, f[j]});
    }
    lp.add_ge(t, 0);
  }
}

std::vector<QVec> split(const QVec& x, std::size_t n, std::size_t d) {
  std::vector<QVec> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = QVec(x.begin() + i * d, x.begin() + (i + 1) * d);
  return out;
}

}  // namespace

std::optional<std::vector<QVec>> find_distinguishing_observable(
    const LinearHull& hull, const std::vector<Weight>& states) {
  const std::size_t d = hull.dim();
  const std::size_t n = states.size();
  if (n == 0) return std::vector<QVec>{};
  std::vector<QVec> cs;
  for (const auto& s : states) cs.push_back(hull.state_coords(s));
  LinearProgram lp;
  lp.add_vars(n * d, true);
  for (std::size_t i = 0; i < n; ++i) add_effect_cone(lp, hull, i * d);
  for (std::size_t j = 0; j < d; ++j) {
    Terms t;
    for (std::size_t i = 0; i < n; ++i) t.push_back({i * d + j, 1});
    lp.add_eq(t, hull.unit()[j]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      Terms t;
      for (std::size_t j = 0; j < d; ++j) {
        if (!is_zero(cs[k][j])) t.push_back({i * d + j, cs[k][j]});
      }
      lp.add_eq(t, i == k ? 1 : 0);
    }
  }
  auto res = lp.feasibility();
  if (!res.feasible) return std::nullopt;
  return split(res.x, n, d);
}

QMatrix CloningMap::apply(const QVec& state_coords, std::size_t d) const {
  return QMatrix::reshape(matrix.apply(state_coords), d, d);
}

std::optional<CloningMap> build_cloning_map(const LinearHull& hull,
                                            const std::vector<Weight>& states) {
  auto obs = find_distinguishing_observable(hull, states);
  if (!obs) return std::nullopt;
  const std::size_t d = hull.dim();
  CloningMap m;
  m.matrix = QMatrix(d * d, d);
  for (std::size_t i = 0; i < states.size(); ++i) {
    QVec c = hull.state_coords(states[i]);
    m.matrix = m.matrix + outer(kron(c, c), (*obs)[i]);
  }
  for (const auto& s : states) {
    QVec c = hull.state_coords(s);
    if (m.matrix.apply(c) != kron(c, c)) throw NumericalFailure("cloning map does not clone");
  }
  m.observable = std::move(*obs);
  m.states = states;
  return m;
}

Broadcast broadcastable(const LinearHull& hull, const std::vector<Weight>& states,
                        std::size_t max_unknowns) {
  return broadcastable(hull, states, min_max_tensor(hull, hull, TensorKind::kMax),
                       max_unknowns);
}

Broadcast broadcastable(const LinearHull& hull, const std::vector<Weight>& states,
                        const TensorSpace& composite, std::size_t max_unknowns) {
  const std::size_t d = hull.dim();
  if (composite.a().dim() != d || composite.b().dim() != d) {
    throw DimensionMismatch("composite does not match the system");
  }
  const std::size_t unknowns = d * d * d;
  if (unknowns > max_unknowns) {
    throw SizeGuardExceeded("broadcast map unknowns", unknowns, max_unknowns);
  }
  auto var = [d](std::size_t r, std::size_t c) { return r * d + c; };
  // Terms for functional g applied to φ(v).
  auto image_terms = [&](const QVec& g, const QVec& v) {
    Terms t;
    for (std::size_t r = 0; r < d * d; ++r) {
      if (is_zero(g[r])) continue;
      for (std::size_t c = 0; c < d; ++c) {
        if (!is_zero(v[c])) t.push_back({var(r, c), g[r] * v[c]});
      }
    }
    return t;
  };
  LinearProgram lp;
  lp.add_vars(unknowns, true);
  const QVec unit = composite.unit();
  for (const auto& v : hull.vertex_coords()) {
    for (const auto& g : composite.state_cone().facets()) lp.add_ge(image_terms(g, v), 0);
    lp.add_eq(image_terms(unit, v), 1);
  }
  const QVec& u = hull.unit();
  for (const auto& s : states) {
    QVec rho = hull.state_coords(s);
    for (std::size_t i = 0; i < d; ++i) {
      QVec ga(d * d), gb(d * d);
      for (std::size_t j = 0; j < d; ++j) {
        ga[i * d + j] = u[j];
        gb[j * d + i] = u[j];
      }
      lp.add_eq(image_terms(ga, rho), rho[i]);
      lp.add_eq(image_terms(gb, rho), rho[i]);
    }
  }
  auto res = lp.feasibility();
  Broadcast out;
  if (!res.feasible) {
    out.certificate = std::move(res.certificate);
    return out;
  }
  out.feasible = true;
  out.map = QMatrix::reshape(res.x, d * d, d);
  out.cloning = build_cloning_map(hull, states);
  return out;
}

bool quantum_broadcastable(const std::vector<Eigen::MatrixXcd>& densities, double tol) {
  for (std::size_t i = 0; i < densities.size(); ++i) {
    for (std::size_t j = i + 1; j < densities.size(); ++j) {
      const auto& a = densities[i];
      const auto& b = densities[j];
      if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionMismatch("density matrices of different sizes");
      }
      if ((a * b - b * a).norm() > tol) return false;
    }
  }
  return true;
}

bool is_bipartite_effect(const LinearHull& a, const LinearHull& b, const QMatrix& f) {
  if (f.rows() != a.dim() || f.cols() != b.dim()) {
    throw DimensionMismatch("effect does not match the hulls");
  }
  for (const auto& x : a.vertex_coords()) {
    QVec fx = f.transpose().apply(x);
    for (const auto& y : b.vertex_coords()) {
      Q v = dot(fx, y);
      if (sign(v) < 0 || v > 1) return false;
    }
  }
  return true;
}

QMatrix teleportation_map(const CompositeState& omega, const QMatrix& f) {
  if (f.cols() != omega.a().dim()) throw DimensionMismatch("effect does not act on A_1");
  return omega.coords().transpose() * f.transpose();
}

RemoteEvaluation remote_evaluate(const LinearHull& ao, const Weight& alpha,
                                 const CompositeState& omega, const QMatrix& f) {
  if (f.rows() != ao.dim() || f.cols() != omega.a().dim()) {
    throw DimensionMismatch("effect does not act on A_o ⊗ A_1");
  }
  const QVec c = ao.state_coords(alpha);
  RemoteEvaluation out;
  out.tau_alpha = teleportation_map(omega, f).apply(c);
  out.unnormalized = omega.b().weight_of(out.tau_alpha);
  out.success_probability = dot(omega.b().unit(), out.tau_alpha);

  // (α ⊗ ω)(f ⊗ b) by full contraction over A_o ⊗ A_1 ⊗ B, for every basis
  // effect b of B.
  const QVec state = kron(c, flatten(omega.coords()));
  const std::size_t db = omega.b().dim();
  out.identity_verified = true;
  for (std::size_t l = 0; l < db; ++l) {
    QVec effect = kron(flatten(f), unit_vector(db, l));
    if (dot(state, effect) != out.tau_alpha[l]) out.identity_verified = false;
  }
  return out;
}

const char* to_string(TeleportKind k) {
  switch (k) {
    case TeleportKind::kFail:
      return "fail";
    case TeleportKind::kConclusive:
      return "conclusive";
    case TeleportKind::kStrong:
      return "strong";
  }
  return "?";
}

namespace {

// c_raw of an invertible τ with positive inverse, or nullopt.
std::optional<Q> raw_constant(const QMatrix& inv, const LinearHull& src, const LinearHull& tgt) {
  if (!is_positive_map(tgt.V().cone, src.V().cone, inv)) return std::nullopt;
  Q c = 0;
  bool first = true;
  for (const auto& beta : tgt.vertex_coords()) {
    Q v = dot(src.unit(), inv.apply(beta));
    if (first || v > c) c = v;
    first = false;
  }
  return c;
}

}  // namespace

TeleportationReport verify_teleportation(const TeleportationProtocol& p) {
  TeleportationReport out;
  if (p.f.rows() != p.ao.dim()) throw DimensionMismatch("effect does not act on A_o");
  out.tau = teleportation_map(p.omega, p.f);
  const LinearHull& b = p.omega.b();
  if (out.tau.rows() != out.tau.cols()) return out;
  auto inv = inverse(out.tau);
  if (!inv) return out;
  out.c_raw = raw_constant(*inv, p.ao, b);
  if (!out.c_raw) return out;

  std::optional<Q> prob;
  bool constant = true;
  for (const auto& a : p.ao.vertex_coords()) {
    Q v = dot(b.unit(), out.tau.apply(a));
    if (!prob) prob = v;
    else if (*prob != v) constant = false;
  }
  if (constant) out.success_probability = prob;
  Q c = constant ? *prob * *out.c_raw : *out.c_raw;
  out.c = c < 1 ? Q(1) : c;
  out.kind = *out.c == 1 ? TeleportKind::kStrong : TeleportKind::kConclusive;
  return out;
}

DeterministicTeleportation verify_deterministic_teleportation(
    const LinearHull& ao, const CompositeState& omega, const std::vector<QMatrix>& fs) {
  DeterministicTeleportation out;
  if (fs.empty()) return out;
  QMatrix sum(ao.dim(), omega.a().dim());
  for (const auto& f : fs) sum = sum + f;
  bool observable = sum == outer(ao.unit(), omega.a().unit());
  std::vector<QMatrix> taus, corrections;
  for (const auto& f : fs) {
    QMatrix tau = teleportation_map(omega, f);
    if (tau.rows() != tau.cols()) return out;
    auto inv = inverse(tau);
    if (!inv) return out;
    auto c = raw_constant(*inv, ao, omega.b());
    if (!c) return out;
    out.c.push_back(*c);
    taus.push_back(std::move(tau));
    corrections.push_back((1 / *c) * *inv);
  }
  for (const auto& a : ao.vertex_coords()) {
    QVec total(ao.dim());
    for (std::size_t i = 0; i < taus.size(); ++i) {
      total = add(total, corrections[i].apply(taus[i].apply(a)));
    }
    for (std::size_t j = 0; j < total.size(); ++j) {
      Q r = abs(total[j] - a[j]);
      if (r > out.residual) out.residual = r;
    }
  }
  out.deterministic = observable && is_zero(out.residual);
  return out;
}

SwapResult entanglement_swap(const CompositeState& mu, const CompositeState& omega,
                             const QMatrix& f) {
  const std::size_t dp = mu.a().dim(), di = mu.b().dim();
  const std::size_t dk = omega.a().dim(), dl = omega.b().dim();
  if (f.rows() != di || f.cols() != dk) {
    throw DimensionMismatch("effect does not act on A_0 ⊗ A_1");
  }
  SwapResult out;
  out.state = mu.coords() * f * omega.coords();
  out.probability = dot(mu.a().unit(), out.state.apply(omega.b().unit()));

  const QVec state = kron(flatten(mu.coords()), flatten(omega.coords()));
  out.identity_verified = true;
  for (std::size_t p = 0; p < dp; ++p) {
    for (std::size_t l = 0; l < dl; ++l) {
      Q v = 0;
      for (std::size_t i = 0; i < di; ++i) {
        for (std::size_t k = 0; k < dk; ++k) {
          v += state[((p * di + i) * dk + k) * dl + l] * f(i, k);
        }
      }
      if (v != out.state(p, l)) out.identity_verified = false;
    }
  }
  if (sign(out.probability) > 0) {
    out.normalized = CompositeState::from_coords(mu.a(), omega.b(),
                                                 (1 / out.probability) * out.state);
  }
  return out;
}

CompactClosure check_compact_closure_pair(const QMatrix& eta, const QMatrix& epsilon) {
  if (eta.rows() != eta.cols() || epsilon.rows() != eta.rows() ||
      epsilon.cols() != eta.cols()) {
    throw DimensionMismatch("unit and co-unit must be square of equal size");
  }
  const QMatrix id = QMatrix::identity(eta.rows());
  const QMatrix m1 = eta.transpose() * epsilon.transpose();
  const QMatrix m2 = eta * epsilon;
  CompactClosure out;
  out.residual = std::max(max_abs_diff(m1, id), max_abs_diff(m2, id));
  out.holds = is_zero(out.residual);
  Q s = m1(0, 0);
  if (m1 == s * id && m2 == s * id && !is_zero(s)) out.scalar = s;
  return out;
}

CompactClosureReal check_compact_closure_pair(const Eigen::MatrixXd& eta,
                                              const Eigen::MatrixXd& epsilon, double tol) {
  if (eta.rows() != eta.cols() || epsilon.rows() != eta.rows() ||
      epsilon.cols() != eta.cols()) {
    throw DimensionMismatch("unit and co-unit must be square of equal size");
  }
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(eta.rows(), eta.cols());
  CompactClosureReal out;
  out.residual = std::max((eta.transpose() * epsilon.transpose() - id).cwiseAbs().maxCoeff(),
                          (eta * epsilon - id).cwiseAbs().maxCoeff());
  out.holds = out.residual < tol;
  return out;
}

std::optional<std::vector<QVec>> steering_check(const CompositeState& omega,
                                                const std::vector<QVec>& ensemble) {
  const LinearHull& a = omega.a();
  const std::size_t d = a.dim();
  const std::size_t db = omega.b().dim();
  QVec total(db);
  for (const auto& beta : ensemble) {
    if (beta.size() != db) throw DimensionMismatch("ensemble member has wrong length");
    total = add(total, beta);
  }
  if (total != omega.marginal_b_coords()) {
    throw ValidationError("ensemble does not sum to the B marginal");
  }
  const std::size_t n = ensemble.size();
  const QMatrix& w = omega.coords();
  LinearProgram lp;
  lp.add_vars(n * d, true);
  for (std::size_t i = 0; i < n; ++i) add_effect_cone(lp, a, i * d);
  for (std::size_t j = 0; j < d; ++j) {
    Terms t;
    for (std::size_t i = 0; i < n; ++i) t.push_back({i * d + j, 1});
    lp.add_eq(t, a.unit()[j]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t l = 0; l < db; ++l) {
      Terms t;
      for (std::size_t k = 0; k < d; ++k) {
        if (!is_zero(w(k, l))) t.push_back({i * d + k, w(k, l)});
      }
      lp.add_eq(t, ensemble[i][l]);
    }
  }
  auto res = lp.feasibility();
  if (!res.feasible) return std::nullopt;
  return split(res.x, n, d);
}

SteeringReport steering_report(const CompositeState& omega, std::size_t max_vertices) {
  SteeringReport out;
  const LinearHull& b = omega.b();
  for (const auto& dec : extreme_decompositions(b, omega.marginal_b_coords(), max_vertices)) {
    std::vector<QVec> ensemble;
    for (std::size_t k = 0; k < dec.vertices.size(); ++k) {
      ensemble.push_back(scale(dec.weights[k], b.vertex_coords()[dec.vertices[k]]));
    }
    ++out.ensembles_checked;
    if (!steering_check(omega, ensemble)) {
      out.steering = false;
      out.failing_ensemble = std::move(ensemble);
      return out;
    }
  }
  return out;
}

bool conditioning_image_is_face(const CompositeState& omega) {
  const LinearHull& b = omega.b();
  const QVec rho = omega.marginal_b_coords();
  std::vector<QVec> zero;
  for (const auto& f : b.V().cone.facets()) {
    if (is_zero(dot(f, rho))) zero.push_back(f);
  }
  auto in_face = [&](const QVec& v) {
    if (!b.V().cone.contains(v)) return false;
    return std::all_of(zero.begin(), zero.end(), [&](const QVec& f) { return is_zero(dot(f, v)); });
  };
  const QMatrix wt = omega.coords().transpose();
  std::vector<QVec> images;
  for (const auto& g : omega.a().E().cone.generators()) {
    QVec im = wt.apply(g);
    if (!in_face(im)) return false;
    if (!is_zero(im)) images.push_back(std::move(im));
  }
  for (const auto& v : b.V().cone.generators()) {
    if (!in_face(v)) continue;
    LinearProgram lp;
    lp.add_vars(images.size());
    for (std::size_t j = 0; j < b.dim(); ++j) {
      Terms t;
      for (std::size_t k = 0; k < images.size(); ++k) {
        if (!is_zero(images[k][j])) t.push_back({k, images[k][j]});
      }
      lp.add_eq(t, v[j]);
    }
    if (!lp.feasibility().feasible) return false;
  }
  return true;
}

std::optional<CompositeState> isomorphism_state_with_marginal(const LinearHull& hull,
                                                              const Weight& rho,
                                                              std::size_t max_rays) {
  const auto& gens = hull.E().cone.generators();
  const auto& verts = hull.V().cone.generators();
  if (gens.size() != verts.size()) return std::nullopt;
  if (gens.size() > max_rays) {
    throw SizeGuardExceeded("extreme effects for matching search", gens.size(), max_rays);
  }
  const std::size_t d = hull.dim();
  const std::size_t m = gens.size();
  const QVec r = hull.state_coords(rho);
  const QVec& u = hull.unit();
  std::vector<std::size_t> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    // Unknowns: L (d x d, free), s_k >= 1, θ free.
    LinearProgram lp;
    lp.add_vars(d * d, true);
    std::size_t s0 = lp.add_vars(m);
    std::size_t theta = lp.add_var(true);
    for (std::size_t k = 0; k < m; ++k) {
      lp.add_ge({{s0 + k, 1}}, 1);
      for (std::size_t i = 0; i < d; ++i) {
        Terms t;
        for (std::size_t j = 0; j < d; ++j) {
          if (!is_zero(gens[k][j])) t.push_back({i * d + j, gens[k][j]});
        }
        t.push_back({s0 + k, -verts[perm[k]][i]});
        lp.add_eq(t, 0);
      }
    }
    for (std::size_t i = 0; i < d; ++i) {
      Terms t;
      for (std::size_t j = 0; j < d; ++j) {
        if (!is_zero(u[j])) t.push_back({i * d + j, u[j]});
      }
      if (!is_zero(r[i])) t.push_back({theta, -r[i]});
      lp.add_eq(t, 0);
    }
    auto res = lp.feasibility();
    if (!res.feasible) continue;
    QMatrix l = QMatrix::reshape(QVec(res.x.begin(), res.x.begin() + d * d), d, d);
    Q th = res.x[theta];
    if (sign(th) <= 0) continue;
    auto omega = CompositeState::from_coords(hull, hull, (1 / th) * l.transpose());
    if (is_isomorphism_state(omega).isomorphism) return omega;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

}  // namespace gptkit
