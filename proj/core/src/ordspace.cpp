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

#include "gptkit/ordspace.hpp"

#include <algorithm>
#include <mutex>

#include "gptkit/cone_enum.hpp"
#include "gptkit/error.hpp"
#include "gptkit/linalg.hpp"
#include "gptkit/simplex.hpp"
#include "json.hpp"

namespace gptkit {

struct PolyhedralCone::State {
  std::size_t dim = 0;
  std::vector<QVec> generators;
  std::vector<QVec> facets;
  // Set when only facets were given; generators are derived on first use.
  bool lazy = false;
  std::once_flag once;
};

namespace {

std::vector<QVec> canonical(std::vector<QVec> vs) {
  std::vector<QVec> out;
  for (auto& v : vs) {
    if (!is_zero(v)) out.push_back(primitive(v));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void check_lengths(const std::vector<QVec>& vs, std::size_t dim) {
  for (const auto& v : vs) {
    if (v.size() != dim) throw DimensionMismatch("cone vector has wrong length");
  }
}

// Is there a nonzero nonnegative combination of vs equal to zero?
bool has_positive_dependence(const std::vector<QVec>& vs, std::size_t dim) {
  LinearProgram lp;
  std::size_t t = lp.add_vars(vs.size());
  for (std::size_t j = 0; j < dim; ++j) {
    LinearProgram::Terms row;
    for (std::size_t i = 0; i < vs.size(); ++i) {
      if (!is_zero(vs[i][j])) row.push_back({t + i, vs[i][j]});
    }
    lp.add_eq(row, 0);
  }
  LinearProgram::Terms sum;
  for (std::size_t i = 0; i < vs.size(); ++i) sum.push_back({t + i, 1});
  lp.add_eq(sum, 1);
  return lp.feasibility().feasible;
}

// Elements of vs that are tight on a (dim-1)-dimensional set of the other
// description, i.e. the irredundant ones.
std::vector<QVec> irredundant(const std::vector<QVec>& vs, const std::vector<QVec>& other,
                              std::size_t dim) {
  std::vector<QVec> out;
  for (const auto& v : vs) {
    std::vector<QVec> tight;
    for (const auto& w : other) {
      if (is_zero(dot(v, w))) tight.push_back(w);
    }
    if (dim == 1 || rank(tight, dim) + 1 == dim) out.push_back(v);
  }
  return out;
}

}  // namespace

PolyhedralCone PolyhedralCone::from_generators(std::size_t dim,
                                               std::vector<QVec> generators) {
  check_lengths(generators, dim);
  auto gens = canonical(std::move(generators));
  if (rank(gens, dim) < dim) throw ValidationError("cone is not generating");
  if (has_positive_dependence(gens, dim)) throw ValidationError("cone is not pointed");
  PolyhedralCone c;
  c.s_ = std::make_shared<State>();
  c.s_->dim = dim;
  auto facets = canonical(extreme_rays(gens, dim));
  c.s_->generators = irredundant(gens, facets, dim);
  c.s_->facets = std::move(facets);
  return c;
}

PolyhedralCone PolyhedralCone::from_facets(std::size_t dim, std::vector<QVec> facets) {
  check_lengths(facets, dim);
  auto fs = canonical(std::move(facets));
  if (rank(fs, dim) < dim) throw ValidationError("cone is not pointed");
  if (has_positive_dependence(fs, dim)) throw ValidationError("cone is not generating");
  PolyhedralCone c;
  c.s_ = std::make_shared<State>();
  c.s_->dim = dim;
  c.s_->facets = std::move(fs);
  c.s_->lazy = true;
  return c;
}

std::size_t PolyhedralCone::dim() const { return s_->dim; }

const std::vector<QVec>& PolyhedralCone::generators() const {
  if (!s_->lazy) return s_->generators;
  std::call_once(s_->once, [this] {
    s_->generators = canonical(extreme_rays(s_->facets, s_->dim));
    s_->facets = irredundant(s_->facets, s_->generators, s_->dim);
  });
  return s_->generators;
}

const std::vector<QVec>& PolyhedralCone::facets() const {
  // Facets are always known once the generators have been resolved.
  generators();
  return s_->facets;
}

bool PolyhedralCone::contains(const QVec& v) const {
  if (v.size() != dim()) throw DimensionMismatch("vector has wrong length");
  for (const auto& f : facets()) {
    if (sign(dot(f, v)) < 0) return false;
  }
  return true;
}

bool PolyhedralCone::interior(const QVec& v) const {
  if (v.size() != dim()) throw DimensionMismatch("vector has wrong length");
  for (const auto& f : facets()) {
    if (sign(dot(f, v)) <= 0) return false;
  }
  return true;
}

PolyhedralCone PolyhedralCone::dual() const {
  PolyhedralCone c;
  c.s_ = std::make_shared<State>();
  c.s_->dim = dim();
  c.s_->generators = facets();
  c.s_->facets = generators();
  return c;
}

bool PolyhedralCone::same_as(const PolyhedralCone& other) const {
  return dim() == other.dim() && generators() == other.generators();
}

PolyhedralCone dual_cone(const PolyhedralCone& cone) { return cone.dual(); }

OrderUnitSpace::OrderUnitSpace(PolyhedralCone c, QVec u)
    : cone(std::move(c)), unit(std::move(u)) {
  if (!cone.interior(unit)) throw ValidationError("order unit is not interior");
}

struct LinearHull::Data {
  explicit Data(Model m) : model(std::move(m)) {}
  Model model;
  std::vector<std::size_t> basis;
  QMatrix xhat;
  QMatrix basis_matrix;  // |X| x d, columns are the basis states
  QMatrix left_inv;
  QVec unit;
  std::vector<QVec> vertex_coords;
  std::optional<OrderUnitSpace> e;
  std::optional<OrderUnitSpace> v;
};

LinearHull linear_hull(const Model& model) {
  const auto& verts = model.pure_states();
  const std::size_t n = model.test_space().size();
  auto data = std::make_shared<LinearHull::Data>(model);
  data->basis = independent_rows(verts, n);
  const std::size_t d = data->basis.size();
  std::vector<QVec> cols;
  for (auto i : data->basis) cols.push_back(verts[i]);
  data->basis_matrix = QMatrix::from_cols(cols, n);
  data->xhat = data->basis_matrix;
  data->left_inv = left_inverse(data->basis_matrix);

  data->unit = QVec(d, Q(1));
  for (const auto& t : model.test_space().tests()) {
    QVec s(d);
    for (auto x : t) s = add(s, data->xhat.row(x));
    if (s != data->unit) throw InconsistentUnit("tests do not sum to a common unit");
  }
  for (const auto& w : verts) {
    QVec c = data->left_inv.apply(w);
    if (data->basis_matrix.apply(c) != w) throw NumericalFailure("vertex outside span");
    data->vertex_coords.push_back(std::move(c));
  }
  std::vector<QVec> outs;
  for (std::size_t x = 0; x < n; ++x) outs.push_back(data->xhat.row(x));
  data->e.emplace(PolyhedralCone::from_generators(d, outs), data->unit);
  QVec bary(d);
  for (const auto& c : data->vertex_coords) bary = add(bary, c);
  bary = scale(Q(1) / Q(static_cast<long>(verts.size())), bary);
  data->v.emplace(PolyhedralCone::from_generators(d, data->vertex_coords), bary);
  LinearHull h;
  h.d_ = std::move(data);
  return h;
}

const Model& LinearHull::model() const { return d_->model; }
std::size_t LinearHull::dim() const { return d_->basis.size(); }
const std::vector<Weight>& LinearHull::vertices() const { return d_->model.pure_states(); }
const std::vector<std::size_t>& LinearHull::basis() const { return d_->basis; }
const QMatrix& LinearHull::outcome_matrix() const { return d_->xhat; }
QVec LinearHull::outcome(std::size_t x) const { return d_->xhat.row(x); }
const QVec& LinearHull::unit() const { return d_->unit; }
const OrderUnitSpace& LinearHull::E() const { return *d_->e; }
const OrderUnitSpace& LinearHull::V() const { return *d_->v; }
const std::vector<QVec>& LinearHull::vertex_coords() const { return d_->vertex_coords; }

std::optional<QVec> LinearHull::try_state_coords(const Weight& w) const {
  if (w.size() != test_space().size()) throw DimensionMismatch("weight has wrong length");
  QVec c = d_->left_inv.apply(w);
  if (d_->basis_matrix.apply(c) != w) return std::nullopt;
  return c;
}

QVec LinearHull::state_coords(const Weight& w) const {
  auto c = try_state_coords(w);
  if (!c) throw ValidationError("weight is not in the span of the state space");
  return *c;
}

Weight LinearHull::weight_of(const QVec& coords) const {
  if (coords.size() != dim()) throw DimensionMismatch("coordinates have wrong length");
  return d_->basis_matrix.apply(coords);
}

QVec LinearHull::effect_of(const QVec& outcome_coeffs) const {
  if (outcome_coeffs.size() != test_space().size()) {
    throw DimensionMismatch("outcome coefficients have wrong length");
  }
  return d_->xhat.transpose().apply(outcome_coeffs);
}

bool LinearHull::is_effect(const QVec& a) const {
  return E().cone.contains(a) && E().cone.contains(sub(unit(), a));
}

std::vector<Decomposition> extreme_decompositions(const LinearHull& hull, const QVec& coords,
                                                  std::size_t max_vertices) {
  const auto& vs = hull.vertex_coords();
  if (vs.size() > max_vertices) {
    throw SizeGuardExceeded("pure states for decomposition search", vs.size(), max_vertices);
  }
  if (coords.size() != hull.dim()) throw DimensionMismatch("state has wrong length");
  std::vector<Decomposition> out;
  std::vector<std::size_t> subset;
  std::vector<QVec> cols;
  auto visit = [&](auto&& self, std::size_t start) -> void {
    if (!subset.empty()) {
      auto c = solve(QMatrix::from_cols(cols, hull.dim()), coords);
      if (c && std::all_of(c->begin(), c->end(), [](const Q& q) { return sign(q) > 0; })) {
        out.push_back({subset, *c});
      }
    }
    if (subset.size() == hull.dim()) return;
    for (std::size_t i = start; i < vs.size(); ++i) {
      cols.push_back(vs[i]);
      if (rank(cols, hull.dim()) == cols.size()) {
        subset.push_back(i);
        self(self, i + 1);
        subset.pop_back();
      }
      cols.pop_back();
    }
  };
  visit(visit, 0);
  return out;
}

StateCompleteness check_state_completeness(const Model& model) {
  LinearHull h = linear_hull(model);
  StateCompleteness out;
  for (const auto& f : h.E().cone.facets()) {
    Q norm = dot(f, h.unit());
    QVec c = scale(1 / norm, f);
    Weight w = h.weight_of(c);
    if (!contains_state(model, w)) {
      out.complete = false;
      out.witness = std::move(w);
      return out;
    }
  }
  return out;
}

LinearHull direct_sum(const LinearHull& a, const LinearHull& b) {
  const auto& ta = a.test_space();
  const auto& tb = b.test_space();
  const std::size_t na = ta.size();
  std::vector<std::string> labels;
  for (const auto& l : ta.outcomes()) labels.push_back("A." + l);
  for (const auto& l : tb.outcomes()) labels.push_back("B." + l);
  std::vector<Test> tests;
  for (const auto& e : ta.tests()) {
    for (const auto& f : tb.tests()) {
      Test t = e;
      for (auto y : f) t.push_back(na + y);
      tests.push_back(std::move(t));
    }
  }
  std::vector<Weight> gens;
  for (const auto& v : a.vertices()) {
    Weight w(na + tb.size());
    std::copy(v.begin(), v.end(), w.begin());
    gens.push_back(std::move(w));
  }
  for (const auto& v : b.vertices()) {
    Weight w(na + tb.size());
    std::copy(v.begin(), v.end(), w.begin() + na);
    gens.push_back(std::move(w));
  }
  return linear_hull(
      Model::generated(TestSpace(std::move(labels), std::move(tests)), std::move(gens)));
}

DirectSumParts split_direct_sum(const LinearHull& a, const LinearHull& b, const Weight& w) {
  const std::size_t na = a.test_space().size();
  if (w.size() != na + b.test_space().size()) {
    throw DimensionMismatch("weight does not match the direct sum");
  }
  DirectSumParts out;
  Weight wa(w.begin(), w.begin() + na);
  Weight wb(w.begin() + na, w.end());
  out.t = 0;
  for (auto x : a.test_space().tests().front()) out.t += wa[x];
  if (sign(out.t) > 0) out.alpha = scale(1 / out.t, wa);
  Q rest = 1 - out.t;
  if (sign(rest) > 0) out.beta = scale(1 / rest, wb);
  return out;
}

bool is_positive_map(const PolyhedralCone& source, const PolyhedralCone& target,
                     const QMatrix& m) {
  for (const auto& g : source.generators()) {
    if (!target.contains(m.apply(g))) return false;
  }
  return true;
}

Process::Process(OrderUnitSpace source, OrderUnitSpace target, QMatrix matrix)
    : source_(std::move(source)), target_(std::move(target)), m_(std::move(matrix)) {
  if (m_.rows() != target_.dim() || m_.cols() != source_.dim()) {
    throw DimensionMismatch("process matrix does not match its spaces");
  }
  if (!is_positive_map(source_.cone, target_.cone, m_)) {
    throw ValidationError("process is not positive");
  }
  if (!target_.cone.contains(sub(target_.unit, m_.apply(source_.unit)))) {
    throw ValidationError("process is not sub-unital");
  }
}

Process Process::from_outcome_permutation(const LinearHull& hull,
                                          const std::vector<std::size_t>& perm) {
  const std::size_t n = hull.test_space().size();
  if (perm.size() != n) throw DimensionMismatch("permutation has wrong length");
  const QMatrix& xh = hull.outcome_matrix();
  QMatrix p(hull.dim(), n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t i = 0; i < hull.dim(); ++i) p(i, x) = xh(perm[x], i);
  }
  QMatrix m = p * left_inverse(xh).transpose();
  if (m * xh.transpose() != p) {
    throw ValidationError("permutation does not act linearly on effects");
  }
  Process out(hull.E(), hull.E(), std::move(m));
  std::vector<std::size_t> inv(n);
  for (std::size_t x = 0; x < n; ++x) inv[perm[x]] = x;
  QMatrix q(hull.dim(), n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t i = 0; i < hull.dim(); ++i) q(i, x) = xh(inv[x], i);
  }
  QMatrix back = q * left_inverse(xh).transpose();
  out.reversible = back * out.matrix() == QMatrix::identity(hull.dim()) &&
                   is_positive_map(hull.E().cone, hull.E().cone, back);
  if (out.reversible) out.reversibility_constant = Q(1);
  return out;
}

std::optional<ProbReversible> check_prob_reversible(const Process& p) {
  auto inv = inverse(p.matrix());
  if (!inv) throw Singular();
  if (!is_positive_map(p.target().cone, p.source().cone, *inv)) return std::nullopt;
  QVec img = inv->apply(p.target().unit);
  Q c = 1;
  for (const auto& f : p.source().cone.facets()) {
    Q r = dot(f, img) / dot(f, p.source().unit);
    if (r > c) c = r;
  }
  Process back(p.target(), p.source(), (1 / c) * *inv);
  back.reversible = true;
  back.reversibility_constant = c;
  return ProbReversible{std::move(back), c, c == 1};
}

namespace {

nlohmann::json vecs_json(const std::vector<QVec>& vs) {
  auto arr = nlohmann::json::array();
  for (const auto& v : vs) {
    auto row = nlohmann::json::array();
    for (const auto& q : v) row.push_back(to_string(q));
    arr.push_back(row);
  }
  return arr;
}

}  // namespace

std::string cone_to_json(const PolyhedralCone& cone) {
  nlohmann::json j;
  j["dim"] = cone.dim();
  j["generators"] = vecs_json(cone.generators());
  j["facets"] = vecs_json(cone.facets());
  return j.dump(2);
}

std::string hull_to_json(const LinearHull& hull) {
  nlohmann::json j;
  j["dim"] = hull.dim();
  j["basis"] = hull.basis();
  j["outcomes"] = hull.test_space().outcomes();
  j["outcome_functionals"] = vecs_json(hull.outcome_matrix().row_list());
  j["unit"] = vecs_json({hull.unit()})[0];
  j["vertex_coords"] = vecs_json(hull.vertex_coords());
  return j.dump(2);
}

}  // namespace gptkit
