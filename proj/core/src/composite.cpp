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

#include "gptkit/composite.hpp"

#include <algorithm>

#include "gptkit/cone_enum.hpp"
#include "gptkit/error.hpp"
#include "gptkit/linalg.hpp"
#include "gptkit/parallel.hpp"
#include "gptkit/simplex.hpp"
#include "json.hpp"

namespace gptkit {
namespace {

QMatrix outer(const QVec& x, const QVec& y) {
  QMatrix m(x.size(), y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < y.size(); ++j) m(i, j) = x[i] * y[j];
  }
  return m;
}

std::string test_name(const TestSpace& ts, std::size_t t) {
  std::string s = "{";
  for (std::size_t k = 0; k < ts.tests()[t].size(); ++k) {
    if (k) s += ",";
    s += ts.label(ts.tests()[t][k]);
  }
  return s + "}";
}

// Marginal of one side computed through each test of the other side; all
// must agree.
Weight checked_marginal(const QMatrix& t, const TestSpace& self, const TestSpace& other,
                        bool rows, const char* side) {
  Weight first;
  for (std::size_t f = 0; f < other.tests().size(); ++f) {
    Weight m(self.size());
    for (std::size_t x = 0; x < self.size(); ++x) {
      for (auto y : other.tests()[f]) m[x] += rows ? t(x, y) : t(y, x);
    }
    if (f == 0) {
      first = std::move(m);
      continue;
    }
    for (std::size_t x = 0; x < self.size(); ++x) {
      if (m[x] != first[x]) {
        throw SignalingState(std::string("marginal of ") + side + " outcome '" +
                             self.label(x) + "' differs between partner tests " +
                             test_name(other, 0) + " and " + test_name(other, f));
      }
    }
  }
  return first;
}

void check_effect(const LinearHull& h, const QVec& e, const char* name) {
  if (e.size() != h.dim()) throw DimensionMismatch(std::string(name) + " has wrong length");
  if (!h.is_effect(e)) throw EffectOutOfRange(std::string(name) + " is not in [0, u]");
}

}  // namespace

CompositeState CompositeState::from_table(const LinearHull& a, const LinearHull& b,
                                          QMatrix table) {
  const auto& ta = a.test_space();
  const auto& tb = b.test_space();
  if (table.rows() != ta.size() || table.cols() != tb.size()) {
    throw DimensionMismatch("table does not match the component outcome sets");
  }
  for (const auto& q : table.data()) {
    if (sign(q) < 0) throw ValidationError("negative joint probability");
  }
  for (const auto& e : ta.tests()) {
    for (const auto& f : tb.tests()) {
      Q s = 0;
      for (auto x : e) {
        for (auto y : f) s += table(x, y);
      }
      if (s != 1) throw ValidationError("product test does not sum to 1");
    }
  }
  checked_marginal(table, ta, tb, true, "A");
  checked_marginal(table, tb, ta, false, "B");

  CompositeState s(a, b);
  QMatrix la = left_inverse(a.outcome_matrix());
  QMatrix lb = left_inverse(b.outcome_matrix());
  s.w_ = la * table * lb.transpose();
  if (a.outcome_matrix() * s.w_ * b.outcome_matrix().transpose() != table) {
    throw ValidationError("table is not in the span of the product state spaces");
  }
  s.table_ = std::move(table);
  for (std::size_t x = 0; x < ta.size(); ++x) {
    auto c = s.conditional_b(x);
    if (c && !contains_state(b.model(), *c)) {
      throw ValidationError("conditional state of B given '" + ta.label(x) +
                            "' is not a state");
    }
  }
  for (std::size_t y = 0; y < tb.size(); ++y) {
    auto c = s.conditional_a(y);
    if (c && !contains_state(a.model(), *c)) {
      throw ValidationError("conditional state of A given '" + tb.label(y) +
                            "' is not a state");
    }
  }
  return s;
}

CompositeState CompositeState::from_coords(const LinearHull& a, const LinearHull& b,
                                           QMatrix w) {
  if (w.rows() != a.dim() || w.cols() != b.dim()) {
    throw DimensionMismatch("coordinate matrix does not match the hulls");
  }
  return from_table(a, b, a.outcome_matrix() * w * b.outcome_matrix().transpose());
}

CompositeState CompositeState::product(const LinearHull& a, const LinearHull& b,
                                       const Weight& alpha, const Weight& beta) {
  return from_coords(a, b, outer(a.state_coords(alpha), b.state_coords(beta)));
}

Weight CompositeState::marginal_a() const { return a_.weight_of(marginal_a_coords()); }
Weight CompositeState::marginal_b() const { return b_.weight_of(marginal_b_coords()); }
QVec CompositeState::marginal_a_coords() const { return w_.apply(b_.unit()); }
QVec CompositeState::marginal_b_coords() const { return w_.transpose().apply(a_.unit()); }

std::optional<Weight> CompositeState::conditional_b(std::size_t x) const {
  Weight row = table_.row(x);
  Q m = 0;
  for (auto y : b_.test_space().tests().front()) m += row[y];
  if (is_zero(m)) return std::nullopt;
  return scale(1 / m, row);
}

std::optional<Weight> CompositeState::conditional_a(std::size_t y) const {
  Weight col = table_.col(y);
  Q m = 0;
  for (auto x : a_.test_space().tests().front()) m += col[x];
  if (is_zero(m)) return std::nullopt;
  return scale(1 / m, col);
}

Q CompositeState::eval(const QVec& ea, const QVec& eb) const {
  return dot(ea, w_.apply(eb));
}

ConditioningMap bilinearize(const CompositeState& omega) {
  return ConditioningMap{omega.coords().transpose()};
}

ConditioningMap bilinearize(const LinearHull& a, const LinearHull& b, const QMatrix& table) {
  return bilinearize(CompositeState::from_table(a, b, table));
}

const char* to_string(TensorKind k) { return k == TensorKind::kMin ? "min" : "max"; }

namespace {

PolyhedralCone tensor_state_cone(const LinearHull& a, const LinearHull& b, TensorKind kind) {
  const std::size_t dim = a.dim() * b.dim();
  std::vector<QVec> vs;
  if (kind == TensorKind::kMax) {
    for (const auto& x : a.E().cone.generators()) {
      for (const auto& y : b.E().cone.generators()) vs.push_back(kron(x, y));
    }
    return PolyhedralCone::from_facets(dim, std::move(vs));
  }
  for (const auto& x : a.vertex_coords()) {
    for (const auto& y : b.vertex_coords()) vs.push_back(kron(x, y));
  }
  return PolyhedralCone::from_generators(dim, std::move(vs));
}

}  // namespace

TensorSpace::TensorSpace(LinearHull a, LinearHull b, TensorKind kind)
    : a_(std::move(a)), b_(std::move(b)), kind_(kind),
      state_cone_(tensor_state_cone(a_, b_, kind)) {}

std::vector<QMatrix> TensorSpace::vertex_coords() const {
  QVec u = unit();
  std::vector<QMatrix> out;
  for (const auto& g : state_cone_.generators()) {
    out.push_back(QMatrix::reshape(scale(1 / dot(u, g), g), a_.dim(), b_.dim()));
  }
  return out;
}

std::vector<CompositeState> TensorSpace::vertex_states() const {
  std::vector<CompositeState> out;
  for (auto& w : vertex_coords()) out.push_back(CompositeState::from_coords(a_, b_, w));
  return out;
}

TensorSpace min_max_tensor(const LinearHull& a, const LinearHull& b, TensorKind kind) {
  return TensorSpace(a, b, kind);
}

QVec flatten(const QMatrix& m) { return m.data(); }

Separability is_separable(const CompositeState& omega) {
  const auto& va = omega.a().vertex_coords();
  const auto& vb = omega.b().vertex_coords();
  const QVec target = flatten(omega.coords());
  const std::size_t dim = target.size();
  std::vector<QVec> cols;
  for (const auto& x : va) {
    for (const auto& y : vb) cols.push_back(kron(x, y));
  }
  QMatrix m(dim + 1, cols.size());
  QVec rhs(dim + 1);
  for (std::size_t c = 0; c < cols.size(); ++c) {
    for (std::size_t r = 0; r < dim; ++r) m(r, c) = cols[c][r];
    m(dim, c) = 1;
  }
  for (std::size_t r = 0; r < dim; ++r) rhs[r] = target[r];
  rhs[dim] = 1;
  LpResult lp = lp_feasible(m, rhs);
  Separability out;
  if (lp.status != LpStatus::kInfeasible) {
    out.separable = true;
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (!is_zero(lp.x[c])) out.decomposition.push_back({lp.x[c], c / vb.size(), c % vb.size()});
    }
    return out;
  }
  QVec unit = kron(omega.a().unit(), omega.b().unit());
  out.witness = QVec(lp.farkas.begin(), lp.farkas.begin() + dim);
  out.witness = add(out.witness, scale(lp.farkas[dim], unit));
  out.witness_value = dot(out.witness, target);
  return out;
}

Separability is_separable(const CompositeState& omega, const TensorSpace& tensor) {
  if (tensor.a().dim() != omega.a().dim() || tensor.b().dim() != omega.b().dim()) {
    throw DimensionMismatch("state does not live on this tensor space");
  }
  return is_separable(omega);
}

Q chsh(const CompositeState& omega, const QVec& a0, const QVec& a1, const QVec& b0,
       const QVec& b1) {
  check_effect(omega.a(), a0, "a0");
  check_effect(omega.a(), a1, "a1");
  check_effect(omega.b(), b0, "b0");
  check_effect(omega.b(), b1, "b1");
  auto obs = [](const QVec& e, const QVec& u) { return sub(scale(2, e), u); };
  QVec A0 = obs(a0, omega.a().unit()), A1 = obs(a1, omega.a().unit());
  QVec B0 = obs(b0, omega.b().unit()), B1 = obs(b1, omega.b().unit());
  return omega.eval(A0, B0) + omega.eval(A0, B1) + omega.eval(A1, B0) - omega.eval(A1, B1);
}

std::vector<QVec> effect_vertices(const LinearHull& hull) {
  std::vector<QVec> ineq;
  QVec bineq;
  for (const auto& f : hull.E().cone.facets()) {
    ineq.push_back(f);
    bineq.push_back(0);
    ineq.push_back(scale(-1, f));
    bineq.push_back(-dot(f, hull.unit()));
  }
  return polytope_vertices({}, {}, ineq, bineq, hull.dim());
}

ChshOptimum chsh_max(const TensorSpace& tensor) {
  const auto ea = effect_vertices(tensor.a());
  const auto eb = effect_vertices(tensor.b());
  const auto states = tensor.vertex_coords();
  const QVec& ua = tensor.a().unit();
  const QVec& ub = tensor.b().unit();
  std::vector<QVec> obs_b;
  for (const auto& b : eb) obs_b.push_back(sub(scale(2, b), ub));

  std::vector<ChshOptimum> best(states.size());
  parallel_for(states.size(), [&](std::size_t s) {
    const QMatrix wt = states[s].transpose();
    bool have = false;
    for (std::size_t i = 0; i < ea.size(); ++i) {
      QVec A0 = sub(scale(2, ea[i]), ua);
      for (std::size_t j = 0; j < ea.size(); ++j) {
        QVec A1 = sub(scale(2, ea[j]), ua);
        QVec p = wt.apply(add(A0, A1));
        QVec q = wt.apply(sub(A0, A1));
        std::size_t k0 = 0, k1 = 0;
        for (std::size_t k = 1; k < obs_b.size(); ++k) {
          if (dot(p, obs_b[k]) > dot(p, obs_b[k0])) k0 = k;
          if (dot(q, obs_b[k]) > dot(q, obs_b[k1])) k1 = k;
        }
        Q v = dot(p, obs_b[k0]) + dot(q, obs_b[k1]);
        if (!have || v > best[s].value) {
          have = true;
          best[s] = ChshOptimum{v, s, states[s], ea[i], ea[j], eb[k0], eb[k1]};
        }
      }
    }
  });
  ChshOptimum out = best.front();
  for (const auto& b : best) {
    if (b.value > out.value) out = b;
  }
  return out;
}

TotalProbability law_of_total_probability_check(const CompositeState& omega,
                                                 const std::vector<QVec>& observable) {
  QVec total(omega.a().dim());
  for (const auto& a : observable) {
    check_effect(omega.a(), a, "observable element");
    total = add(total, a);
  }
  if (total != omega.a().unit()) throw ValidationError("observable does not sum to the unit");
  const QMatrix wt = omega.coords().transpose();
  QVec sum(omega.b().dim());
  for (const auto& a : observable) {
    QVec unnorm = wt.apply(a);
    Q p = dot(omega.b().unit(), unnorm);
    if (is_zero(p)) continue;
    QVec conditional = scale(1 / p, unnorm);
    sum = add(sum, scale(p, conditional));
  }
  TotalProbability out;
  out.residual = sub(sum, omega.marginal_b_coords());
  out.holds = is_zero(out.residual);
  return out;
}

IsomorphismCheck is_isomorphism_state(const CompositeState& omega) {
  IsomorphismCheck out;
  if (omega.a().dim() != omega.b().dim()) return out;
  QMatrix m = omega.coords().transpose();
  auto inv = inverse(m);
  if (!inv) return out;
  if (!is_positive_map(omega.a().E().cone, omega.b().V().cone, m)) return out;
  if (!is_positive_map(omega.b().V().cone, omega.a().E().cone, *inv)) return out;
  out.isomorphism = true;
  out.inverse = std::move(*inv);
  return out;
}

std::string composite_to_json(const CompositeState& omega) {
  nlohmann::json j;
  j["a_outcomes"] = omega.a().test_space().outcomes();
  j["b_outcomes"] = omega.b().test_space().outcomes();
  nlohmann::json t = nlohmann::json::object();
  const auto& ta = omega.a().test_space();
  const auto& tb = omega.b().test_space();
  for (std::size_t x = 0; x < ta.size(); ++x) {
    for (std::size_t y = 0; y < tb.size(); ++y) {
      t[ta.label(x) + "|" + tb.label(y)] = to_string(omega.table()(x, y));
    }
  }
  j["table"] = t;
  return j.dump(2);
}

CompositeState parse_composite_json(const LinearHull& a, const LinearHull& b,
                                    const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("bad composite JSON: ") + e.what());
  }
  if (!j.contains("table") || !j["table"].is_object()) {
    throw ValidationError("composite JSON needs a \"table\" object");
  }
  const auto& ta = a.test_space();
  const auto& tb = b.test_space();
  QMatrix table(ta.size(), tb.size());
  for (const auto& [key, value] : j["table"].items()) {
    auto bar = key.find('|');
    if (bar == std::string::npos) throw ValidationError("table key without '|': " + key);
    auto x = ta.index_of(key.substr(0, bar));
    auto y = tb.index_of(key.substr(bar + 1));
    if (!x || !y) throw ValidationError("unknown outcome pair: " + key);
    if (!value.is_string()) throw ValidationError("table values must be rational strings");
    table(*x, *y) = parse_rational(value.get<std::string>());
  }
  return CompositeState::from_table(a, b, std::move(table));
}

}  // namespace gptkit
