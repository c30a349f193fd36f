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

#include "gptkit/infotheory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gptkit/catalog.hpp"
#include "gptkit/error.hpp"

namespace gptkit {

double shannon_bits(const std::vector<double>& p) {
  double h = 0;
  for (double x : p) {
    if (x > 0) h -= x * std::log2(x);
  }
  return h;
}

double shannon_bits(const QVec& p) { return shannon_bits(to_double(p)); }

namespace {

QVec restrict_to(const Weight& w, const Test& t) {
  QVec out;
  for (auto x : t) out.push_back(w[x]);
  return out;
}

}  // namespace

EntropyReport measurement_entropy(const TestSpace& ts, const Weight& alpha) {
  validate_weight(ts, alpha);
  EntropyReport r;
  r.method = "measurement";
  r.value_bits = std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < ts.tests().size(); ++t) {
    double h = shannon_bits(restrict_to(alpha, ts.tests()[t]));
    if (h < r.value_bits) {
      r.value_bits = h;
      r.test = t;
    }
  }
  return r;
}

EntropyReport mixing_entropy(const LinearHull& hull, const Weight& alpha,
                             std::size_t max_vertices) {
  if (!contains_state(hull.model(), alpha)) throw ValidationError("weight is not a state");
  EntropyReport r;
  r.method = "mixing";
  r.value_bits = std::numeric_limits<double>::infinity();
  for (auto& d : extreme_decompositions(hull, hull.state_coords(alpha), max_vertices)) {
    double h = shannon_bits(d.weights);
    if (h < r.value_bits) {
      r.value_bits = h;
      r.decomposition = std::move(d);
    }
  }
  if (!r.decomposition) throw NumericalFailure("state has no pure decomposition");
  return r;
}

MultiTable::MultiTable(std::vector<TestSpace> parties, QVec probs)
    : parties_(std::move(parties)), probs_(std::move(probs)) {
  std::size_t total = 1;
  for (const auto& p : parties_) total *= p.size();
  if (parties_.empty() || probs_.size() != total) {
    throw DimensionMismatch("table size does not match the parties");
  }
  for (const auto& q : probs_) {
    if (sign(q) < 0) throw ValidationError("negative joint probability");
  }
  // Normalization on every product test.
  std::vector<std::size_t> choice(parties_.size(), 0);
  for (;;) {
    Q sum = 0;
    std::vector<std::size_t> pos(parties_.size(), 0);
    for (;;) {
      std::vector<std::size_t> outcome(parties_.size());
      for (std::size_t i = 0; i < parties_.size(); ++i) {
        outcome[i] = parties_[i].tests()[choice[i]][pos[i]];
      }
      sum += probs_[index(outcome)];
      std::size_t i = 0;
      while (i < parties_.size() && ++pos[i] == parties_[i].tests()[choice[i]].size()) pos[i++] = 0;
      if (i == parties_.size()) break;
    }
    if (sum != 1) throw ValidationError("product test does not sum to 1");
    std::size_t i = 0;
    while (i < parties_.size() && ++choice[i] == parties_[i].tests().size()) choice[i++] = 0;
    if (i == parties_.size()) break;
  }
  // Non-signaling: dropping a party gives the same table through each of its
  // tests.
  for (std::size_t p = 0; p < parties_.size() && parties_.size() > 1; ++p) {
    std::vector<QVec> margins;
    for (const auto& t : parties_[p].tests()) {
      std::vector<bool> in(parties_[p].size(), false);
      for (auto x : t) in[x] = true;
      QVec m(total / parties_[p].size());
      std::size_t stride = 1;
      for (std::size_t q = p + 1; q < parties_.size(); ++q) stride *= parties_[q].size();
      for (std::size_t k = 0; k < total; ++k) {
        std::size_t x = (k / stride) % parties_[p].size();
        if (!in[x]) continue;
        std::size_t hi = k / (stride * parties_[p].size());
        m[hi * stride + k % stride] += probs_[k];
      }
      margins.push_back(std::move(m));
    }
    for (std::size_t t = 1; t < margins.size(); ++t) {
      if (margins[t] != margins[0]) {
        throw SignalingState("party " + std::to_string(p) +
                             " signals: other parties' marginal depends on its test");
      }
    }
  }
}

std::size_t MultiTable::index(const std::vector<std::size_t>& outcomes) const {
  std::size_t k = 0;
  for (std::size_t i = 0; i < parties_.size(); ++i) k = k * parties_[i].size() + outcomes[i];
  return k;
}

const Q& MultiTable::at(const std::vector<std::size_t>& outcomes) const {
  if (outcomes.size() != parties_.size()) throw DimensionMismatch("wrong number of outcomes");
  return probs_[index(outcomes)];
}

MultiTable MultiTable::from_composite(const CompositeState& omega) {
  return MultiTable({omega.a().test_space(), omega.b().test_space()}, omega.table().data());
}

MultiTable MultiTable::product(const std::vector<TestSpace>& parties,
                               const std::vector<Weight>& states) {
  if (parties.size() != states.size()) throw DimensionMismatch("one state per party");
  QVec probs{Q(1)};
  for (std::size_t i = 0; i < parties.size(); ++i) {
    validate_weight(parties[i], states[i]);
    probs = kron(probs, states[i]);
  }
  return MultiTable(parties, std::move(probs));
}

MultiTable MultiTable::marginal(const std::vector<std::size_t>& keep) const {
  std::vector<bool> kept(parties_.size(), false);
  std::vector<TestSpace> out_parties;
  for (auto p : keep) {
    if (p >= parties_.size() || kept[p]) throw ValidationError("bad marginal party list");
    kept[p] = true;
    out_parties.push_back(parties_[p]);
  }
  std::vector<std::vector<bool>> first(parties_.size());
  for (std::size_t p = 0; p < parties_.size(); ++p) {
    first[p].assign(parties_[p].size(), false);
    for (auto x : parties_[p].tests().front()) first[p][x] = true;
  }
  std::size_t out_size = 1;
  for (const auto& t : out_parties) out_size *= t.size();
  QVec out(out_size);
  std::vector<std::size_t> outcome(parties_.size(), 0);
  for (std::size_t k = 0; k < probs_.size(); ++k) {
    std::size_t r = k;
    for (std::size_t p = parties_.size(); p-- > 0;) {
      outcome[p] = r % parties_[p].size();
      r /= parties_[p].size();
    }
    bool use = true;
    for (std::size_t p = 0; p < parties_.size() && use; ++p) {
      if (!kept[p] && !first[p][outcome[p]]) use = false;
    }
    if (!use) continue;
    std::size_t j = 0;
    for (auto p : keep) j = j * parties_[p].size() + outcome[p];
    out[j] += probs_[k];
  }
  return MultiTable(std::move(out_parties), std::move(out));
}

double MultiTable::entropy() const {
  double best = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> choice(parties_.size(), 0);
  for (;;) {
    std::vector<double> dist;
    std::vector<std::size_t> pos(parties_.size(), 0);
    for (;;) {
      std::vector<std::size_t> outcome(parties_.size());
      for (std::size_t i = 0; i < parties_.size(); ++i) {
        outcome[i] = parties_[i].tests()[choice[i]][pos[i]];
      }
      dist.push_back(to_double(probs_[index(outcome)]));
      std::size_t i = 0;
      while (i < parties_.size() && ++pos[i] == parties_[i].tests()[choice[i]].size()) pos[i++] = 0;
      if (i == parties_.size()) break;
    }
    best = std::min(best, shannon_bits(dist));
    std::size_t i = 0;
    while (i < parties_.size() && ++choice[i] == parties_[i].tests().size()) choice[i++] = 0;
    if (i == parties_.size()) break;
  }
  return best;
}

double MultiTable::entropy(const std::vector<std::size_t>& keep) const {
  return marginal(keep).entropy();
}

JointEntropies joint_entropies(const MultiTable& ab) {
  if (ab.parties() != 2) throw DimensionMismatch("joint entropies need two parties");
  JointEntropies j;
  j.h_a = ab.entropy({0});
  j.h_b = ab.entropy({1});
  j.h_ab = ab.entropy();
  j.h_a_given_b = j.h_ab - j.h_b;
  j.h_b_given_a = j.h_ab - j.h_a;
  j.mutual = j.h_a + j.h_b - j.h_ab;
  return j;
}

JointEntropies joint_entropies(const CompositeState& omega) {
  return joint_entropies(MultiTable::from_composite(omega));
}

SsaReport ssa_check(const MultiTable& abc, double tol) {
  if (abc.parties() != 3) throw DimensionMismatch("SSA needs three parties");
  SsaReport r;
  r.h_a = abc.entropy({0});
  r.h_b = abc.entropy({1});
  r.h_c = abc.entropy({2});
  r.h_ab = abc.entropy({0, 1});
  r.h_bc = abc.entropy({1, 2});
  r.h_ac = abc.entropy({0, 2});
  r.h_abc = abc.entropy();
  double i_a_bc = r.h_a + r.h_bc - r.h_abc;
  double i_a_b = r.h_a + r.h_b - r.h_ab;
  r.a = i_a_bc - i_a_b;
  r.b = (r.h_ab - r.h_b) - (r.h_abc - r.h_bc);
  r.c = r.h_ab + r.h_bc - r.h_b - r.h_abc;
  // I(A:C|B) = H(A|B) + H(C|B) - H(AC|B).
  r.d = (r.h_ab - r.h_b) + (r.h_bc - r.h_b) - (r.h_abc - r.h_b);
  r.d_literal = (r.h_ac - r.h_c) + (r.h_bc - r.h_c) - (r.h_abc - r.h_c);
  bool sa = r.a >= -tol, sb = r.b >= -tol, sc = r.c >= -tol, sd = r.d >= -tol;
  r.holds = sa && sb && sc && sd;
  r.consistent = sa == sb && sb == sc && sc == sd;
  return r;
}

HolevoReport holevo(const LinearHull& b, const QVec& p, const std::vector<Weight>& states,
                    const std::vector<QVec>& observable) {
  if (p.size() != states.size()) throw DimensionMismatch("one probability per state");
  Q total = 0;
  for (const auto& q : p) {
    if (sign(q) < 0) throw ValidationError("negative ensemble probability");
    total += q;
  }
  if (total != 1) throw ValidationError("ensemble probabilities do not sum to 1");
  const TestSpace& ts = b.test_space();
  Weight rho(ts.size());
  double avg = 0;
  for (std::size_t x = 0; x < states.size(); ++x) {
    rho = add(rho, scale(p[x], states[x]));
    avg += to_double(p[x]) * measurement_entropy(ts, states[x]).value_bits;
  }
  HolevoReport r;
  r.h_rho = measurement_entropy(ts, rho).value_bits;
  r.chi = r.h_rho - avg;
  if (!observable.empty()) {
    QVec sum(b.dim());
    for (const auto& f : observable) {
      if (!b.is_effect(f)) throw EffectOutOfRange("observable element is not in [0, u]");
      sum = add(sum, f);
    }
    if (sum != b.unit()) throw ValidationError("observable does not sum to the unit");
    std::vector<double> joint, px, pf(observable.size(), 0.0);
    for (std::size_t x = 0; x < states.size(); ++x) {
      QVec c = b.state_coords(states[x]);
      px.push_back(to_double(p[x]));
      for (std::size_t j = 0; j < observable.size(); ++j) {
        double v = to_double(p[x] * dot(observable[j], c));
        joint.push_back(v);
        pf[j] += v;
      }
    }
    r.mutual_ef = shannon_bits(px) + shannon_bits(pf) - shannon_bits(joint);
    r.bound_holds = *r.mutual_ef <= r.chi + 1e-12;
  }
  return r;
}

ClassicalRecordIdentity classical_record_identity(const LinearHull& b, const QVec& p,
                                                  const std::vector<Weight>& states,
                                                  double tol) {
  if (p.size() != states.size()) throw DimensionMismatch("one probability per state");
  const TestSpace& ts = b.test_space();
  QVec probs;
  double rhs = shannon_bits(p);
  for (std::size_t x = 0; x < states.size(); ++x) {
    validate_weight(ts, states[x]);
    for (const auto& v : states[x]) probs.push_back(p[x] * v);
    rhs += to_double(p[x]) * measurement_entropy(ts, states[x]).value_bits;
  }
  MultiTable t({catalog::classical(states.size()), ts}, std::move(probs));
  ClassicalRecordIdentity r;
  r.h_ab = t.entropy();
  r.rhs = rhs;
  r.holds = std::abs(r.h_ab - r.rhs) <= tol;
  return r;
}

DpiReport dpi_check(const CompositeState& omega, const LinearHull& c, const QMatrix& m,
                    double tol) {
  const LinearHull& b = omega.b();
  if (m.rows() != b.dim() || m.cols() != c.dim()) {
    throw DimensionMismatch("process does not map E(C) to E(B)");
  }
  Process proc(c.E(), b.E(), m);
  if (m.apply(c.unit()) != b.unit()) throw ValidationError("process is not unital");
  CompositeState after = CompositeState::from_coords(omega.a(), c, omega.coords() * m);
  DpiReport r;
  r.before = joint_entropies(omega).mutual;
  r.after = joint_entropies(after).mutual;
  r.holds = r.after <= r.before + tol;
  return r;
}

DpiReport dpi_marginalization(const MultiTable& abc, double tol) {
  if (abc.parties() != 3) throw DimensionMismatch("marginalization needs three parties");
  DpiReport r;
  double ha = abc.entropy({0});
  r.before = ha + abc.entropy({1, 2}) - abc.entropy();
  r.after = ha + abc.entropy({2}) - abc.entropy({0, 2});
  r.holds = r.after <= r.before + tol;
  return r;
}

namespace {

Weight grid_point(const std::vector<Weight>& verts, const std::vector<std::size_t>& parts,
                  std::size_t steps) {
  Weight w(verts.front().size());
  for (std::size_t i = 0; i < verts.size(); ++i) {
    if (parts[i]) w = add(w, scale(Q(static_cast<long>(parts[i]), static_cast<long>(steps)), verts[i]));
  }
  return w;
}

void compositions(std::size_t total, std::size_t n, std::vector<std::size_t>& cur,
                  std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() + 1 == n) {
    cur.push_back(total);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (std::size_t k = 0; k <= total; ++k) {
    cur.push_back(k);
    compositions(total - k, n, cur, out);
    cur.pop_back();
  }
}

}  // namespace

MonoentropicReport monoentropic_check(const LinearHull& hull, std::size_t steps, double tol) {
  const auto& verts = hull.vertices();
  std::vector<Weight> states(verts.begin(), verts.end());
  if (steps > 1) {
    std::vector<std::vector<std::size_t>> parts;
    std::vector<std::size_t> cur;
    compositions(steps, verts.size(), cur, parts);
    for (const auto& p : parts) {
      if (std::count_if(p.begin(), p.end(), [](std::size_t k) { return k > 0; }) > 1) {
        states.push_back(grid_point(verts, p, steps));
      }
    }
  }
  MonoentropicReport r;
  for (const auto& s : states) {
    double h = measurement_entropy(hull.test_space(), s).value_bits;
    double m = mixing_entropy(hull, s).value_bits;
    ++r.states_checked;
    double gap = std::abs(h - m);
    if (gap > r.max_discrepancy) {
      r.max_discrepancy = gap;
      r.witness = s;
      r.witness_h = h;
      r.witness_s = m;
    }
  }
  r.monoentropic = r.max_discrepancy <= tol;
  return r;
}

}  // namespace gptkit
