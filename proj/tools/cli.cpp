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

#include "cli.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "gptkit/composite.hpp"
#include "gptkit/error.hpp"
#include "gptkit/infotheory.hpp"
#include "gptkit/jordan.hpp"
#include "gptkit/linalg.hpp"
#include "gptkit/model_io.hpp"
#include "gptkit/ordspace.hpp"
#include "gptkit/protocols.hpp"
#include "gptkit/testspace.hpp"
#include "json.hpp"

namespace gptkit::cli {
namespace {

using Json = nlohmann::ordered_json;

const std::vector<std::pair<std::string, std::string>> kCommands = {
    {"pure-states", "enumerate the pure states of --model"},
    {"classify", "classical / partition / neither, with state predicates"},
    {"tensor", "vertices of --a ⊗ --b (--tensor min|max), entangled count"},
    {"chsh", "maximum CHSH value over --a ⊗ --b"},
    {"separable", "separability of the composite state in --state"},
    {"clone", "cloning map for the pure states listed in --states"},
    {"broadcast", "joint broadcastability of --states"},
    {"teleport", "conclusive teleportation through an isomorphism state"},
    {"steer", "steering check for a composite state"},
    {"entropy", "measurement and mixing entropy of --state"},
    {"ic", "information causality run (--n, --m, --resource)"},
    {"jordan", "Jordan algebra property suite (--kind, --n, --samples)"},
    {"greechie", "Greechie diagram of --model in DOT"},
};

struct Options {
  std::string model;
  std::string a;
  std::string b;
  std::string tensor = "max";
  bool json = false;
  std::size_t max_outcomes = 24;
  std::size_t max_vertices = 64;
  std::size_t n = 2;
  std::size_t m = 1;
  std::string resource = "pr";
  std::string kind = "complex";
  int samples = 1000;
  std::uint64_t seed = 1;
  std::string state;
  std::string states;
  std::string effect;
};

Json q_json(const Q& q) { return to_string(q); }

Json qvec_json(const QVec& v) {
  Json j = Json::array();
  for (const auto& q : v) j.push_back(to_string(q));
  return j;
}

Json qmatrix_json(const QMatrix& m) {
  Json j = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) j.push_back(qvec_json(m.row(i)));
  return j;
}

std::string weight_text(const TestSpace& ts, const Weight& w) {
  std::string s = "(";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ", ";
    s += ts.label(i) + ": " + pretty(w[i]);
  }
  return s + ")";
}

std::string vec_text(const QVec& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += pretty(v[i]);
  }
  return s + "]";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

TensorKind parse_tensor(const std::string& s) {
  if (s == "max") return TensorKind::kMax;
  if (s == "min") return TensorKind::kMin;
  throw ValidationError("--tensor must be min or max");
}

Model load(const std::string& spec, const Options& o, const char* flag) {
  if (spec.empty()) throw ValidationError(std::string("missing ") + flag);
  Model m = load_model(spec);
  if (m.test_space().size() > o.max_outcomes) {
    throw SizeGuardExceeded("outcomes", m.test_space().size(), o.max_outcomes);
  }
  if (m.pure_states().size() > o.max_vertices) {
    throw SizeGuardExceeded("pure states", m.pure_states().size(), o.max_vertices);
  }
  return m;
}

std::vector<std::size_t> parse_indices(const std::string& s, std::size_t bound) {
  std::vector<std::size_t> out;
  std::stringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    if (tok.empty() || !std::all_of(tok.begin(), tok.end(), ::isdigit)) {
      throw ValidationError("bad state index '" + tok + "'");
    }
    std::size_t k = std::stoul(tok);
    if (k >= bound) throw ValidationError("state index " + tok + " out of range");
    out.push_back(k);
  }
  return out;
}

std::vector<Weight> pick_states(const Model& model, const std::string& list) {
  const auto& pure = model.pure_states();
  if (list.empty()) return pure;
  std::vector<Weight> out;
  for (auto k : parse_indices(list, pure.size())) out.push_back(pure[k]);
  return out;
}

Weight parse_weight(const Model& model, const std::string& text) {
  const auto& pure = model.pure_states();
  if (text.rfind("pure:", 0) == 0) return pure[parse_indices(text.substr(5), pure.size()).at(0)];
  QVec w;
  std::stringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ',')) w.push_back(parse_rational(tok));
  validate_weight(model.test_space(), w);
  if (!contains_state(model, w)) throw ValidationError("--state is not a state of the model");
  return w;
}

Weight barycenter(const Model& model) {
  const auto& pure = model.pure_states();
  Weight w(pure.front().size());
  for (const auto& p : pure) w = add(w, p);
  return scale(Q(1) / Q(static_cast<long>(pure.size())), w);
}

int cmd_pure_states(const Options& o, std::ostream& out) {
  Model model = load(o.model, o, "--model");
  const auto& ts = model.test_space();
  const auto& pure = model.pure_states();
  if (o.json) {
    Json j;
    j["outcomes"] = ts.outcomes();
    j["count"] = pure.size();
    j["pure_states"] = Json::array();
    for (const auto& w : pure) j["pure_states"].push_back(qvec_json(w));
    out << j.dump(2) << "\n";
    return kOk;
  }
  out << pure.size() << " pure states\n";
  for (std::size_t k = 0; k < pure.size(); ++k) {
    out << "  [" << k << "] " << weight_text(ts, pure[k]) << "\n";
  }
  return kOk;
}

int cmd_classify(const Options& o, std::ostream& out) {
  Model model = load(o.model, o, "--model");
  Classicality c = classify_classicality(model);
  StatePredicates p = state_predicates(model);
  if (o.json) {
    Json j;
    j["classification"] = to_string(c);
    j["unital"] = p.unital;
    j["sharp"] = p.sharp;
    j["separating"] = p.separating;
    j["dispersion_free_states"] = Json::array();
    for (const auto& w : p.dispersion_free) j["dispersion_free_states"].push_back(qvec_json(w));
    out << j.dump(2) << "\n";
    return kOk;
  }
  out << "classification: " << to_string(c) << "\n"
      << "unital: " << std::boolalpha << p.unital << "\n"
      << "sharp: " << p.sharp << "\n"
      << "separating: " << p.separating << "\n"
      << "dispersion-free states: " << p.dispersion_free.size() << "\n";
  for (const auto& w : p.dispersion_free) out << "  " << weight_text(model.test_space(), w) << "\n";
  return kOk;
}

struct Pair {
  Model ma, mb;
  LinearHull a, b;
};

Pair load_pair(const Options& o) {
  std::string sa = o.a.empty() ? o.model : o.a;
  std::string sb = o.b.empty() ? sa : o.b;
  Model ma = load(sa, o, "--a");
  Model mb = load(sb, o, "--b");
  LinearHull a = linear_hull(ma);
  LinearHull b = linear_hull(mb);
  return {ma, mb, a, b};
}

int cmd_tensor(const Options& o, std::ostream& out) {
  Pair p = load_pair(o);
  TensorSpace ts(p.a, p.b, parse_tensor(o.tensor));
  std::vector<CompositeState> verts = ts.vertex_states();
  if (verts.size() > o.max_vertices * o.max_vertices) {
    throw SizeGuardExceeded("composite vertices", verts.size(), o.max_vertices * o.max_vertices);
  }
  std::size_t separable = 0;
  std::vector<bool> sep(verts.size());
  for (std::size_t k = 0; k < verts.size(); ++k) {
    sep[k] = is_separable(verts[k]).separable;
    separable += sep[k];
  }
  if (o.json) {
    Json j;
    j["tensor"] = to_string(ts.kind());
    j["dim"] = ts.dim();
    j["vertices"] = verts.size();
    j["separable"] = separable;
    j["entangled"] = verts.size() - separable;
    j["states"] = Json::array();
    for (std::size_t k = 0; k < verts.size(); ++k) {
      Json s = Json::parse(composite_to_json(verts[k]));
      s["separable"] = static_cast<bool>(sep[k]);
      j["states"].push_back(s);
    }
    out << j.dump(2) << "\n";
    return kOk;
  }
  out << "tensor: " << to_string(ts.kind()) << "\n"
      << "dim: " << ts.dim() << "\n"
      << "vertices: " << verts.size() << " (" << separable << " separable, "
      << verts.size() - separable << " entangled)\n";
  return kOk;
}

void print_table(const CompositeState& s, std::ostream& out) {
  const auto& ta = s.a().test_space();
  const auto& tb = s.b().test_space();
  out << "     ";
  for (std::size_t y = 0; y < tb.size(); ++y) out << "\t" << tb.label(y);
  out << "\n";
  for (std::size_t x = 0; x < ta.size(); ++x) {
    out << "  " << ta.label(x);
    for (std::size_t y = 0; y < tb.size(); ++y) out << "\t" << to_string(s.table()(x, y));
    out << "\n";
  }
}

int cmd_chsh(const Options& o, std::ostream& out) {
  Pair p = load_pair(o);
  TensorSpace ts(p.a, p.b, parse_tensor(o.tensor));
  ChshOptimum best = chsh_max(ts);
  CompositeState s = CompositeState::from_coords(p.a, p.b, best.state);
  if (o.json) {
    Json j;
    j["tensor"] = to_string(ts.kind());
    j["s_max"] = to_string(best.value);
    j["s_max_decimal"] = to_double(best.value);
    j["vertex"] = best.state_index;
    j["state"] = Json::parse(composite_to_json(s));
    j["effects"] = {{"a0", qvec_json(best.a0)}, {"a1", qvec_json(best.a1)},
                    {"b0", qvec_json(best.b0)}, {"b1", qvec_json(best.b1)}};
    out << j.dump(2) << "\n";
    return kOk;
  }
  out << "S_max = " << pretty(best.value) << "\n"
      << "attained at vertex " << best.state_index << " of the " << to_string(ts.kind())
      << " tensor product\n";
  print_table(s, out);
  return kOk;
}

int cmd_separable(const Options& o, std::ostream& out) {
  Pair p = load_pair(o);
  if (o.state.empty()) throw ValidationError("missing --state (composite JSON file)");
  CompositeState s = parse_composite_json(p.a, p.b, read_file(o.state));
  Separability r = is_separable(s);
  if (o.json) {
    Json j;
    j["separable"] = r.separable;
    if (r.separable) {
      j["decomposition"] = Json::array();
      for (const auto& t : r.decomposition) {
        j["decomposition"].push_back(
            {{"weight", q_json(t.weight)}, {"a_vertex", t.a_vertex}, {"b_vertex", t.b_vertex}});
      }
    } else {
      j["witness"] = qvec_json(r.witness);
      j["witness_value"] = q_json(r.witness_value);
    }
    out << j.dump(2) << "\n";
    return kOk;
  }
  if (r.separable) {
    out << "separable\n";
    for (const auto& t : r.decomposition) {
      out << "  " << pretty(t.weight) << " · α" << t.a_vertex << " ⊗ β" << t.b_vertex << "\n";
    }
  } else {
    out << "entangled\nwitness: " << vec_text(r.witness) << "\nwitness value: "
        << pretty(r.witness_value) << "\n";
  }
  return kOk;
}

Json cloning_json(const CloningMap& c) {
  Json j;
  j["matrix"] = qmatrix_json(c.matrix);
  j["observable"] = Json::array();
  for (const auto& e : c.observable) j["observable"].push_back(qvec_json(e));
  return j;
}

int cmd_clone(const Options& o, std::ostream& out) {
  Model model = load(o.model, o, "--model");
  LinearHull h = linear_hull(model);
  auto states = pick_states(model, o.states);
  auto c = build_cloning_map(h, states);
  if (o.json) {
    Json j;
    j["clonable"] = c.has_value();
    if (c) j["cloning_map"] = cloning_json(*c);
    out << j.dump(2) << "\n";
    return kOk;
  }
  if (!c) {
    out << "not clonable: the states are not sharply distinguishable\n";
    return kOk;
  }
  out << "clonable: φ(α_i) = α_i ⊗ α_i verified for " << states.size() << " states\n"
      << "distinguishing observable:\n";
  for (const auto& e : c->observable) out << "  " << vec_text(e) << "\n";
  return kOk;
}

int cmd_broadcast(const Options& o, std::ostream& out) {
  Model model = load(o.model, o, "--model");
  LinearHull h = linear_hull(model);
  auto states = pick_states(model, o.states);
  TensorSpace ts(h, h, parse_tensor(o.tensor));
  Broadcast r = broadcastable(h, states, ts);
  if (o.json) {
    Json j;
    j["feasible"] = r.feasible;
    if (r.map) j["map"] = qmatrix_json(*r.map);
    if (r.cloning) j["cloning_map"] = cloning_json(*r.cloning);
    if (!r.feasible) j["certificate"] = qvec_json(r.certificate);
    out << j.dump(2) << "\n";
    return kOk;
  }
  if (r.feasible) {
    out << "broadcastable: " << states.size() << " states";
    if (r.cloning) out << " (explicit cloning map)";
    out << "\n";
  } else {
    out << "not broadcastable: infeasible, certificate with " << r.certificate.size()
        << " multipliers\n";
  }
  return kOk;
}

int cmd_teleport(const Options& o, std::ostream& out) {
  Model model = load(o.model, o, "--model");
  LinearHull h = linear_hull(model);
  std::optional<CompositeState> omega;
  QMatrix f;
  if (!o.state.empty()) {
    if (o.effect.empty()) throw ValidationError("--state needs --effect");
    omega = parse_composite_json(h, h, read_file(o.state));
    Json e = Json::parse(read_file(o.effect));
    f = QMatrix(h.dim(), h.dim());
    if (!e.is_array() || e.size() != h.dim()) throw ValidationError("effect matrix has wrong size");
    for (std::size_t i = 0; i < h.dim(); ++i) {
      if (!e[i].is_array() || e[i].size() != h.dim()) {
        throw ValidationError("effect matrix has wrong size");
      }
      for (std::size_t k = 0; k < h.dim(); ++k) f(i, k) = parse_rational(e[i][k].get<std::string>());
    }
  } else {
    omega = isomorphism_state_with_marginal(h, barycenter(model), o.max_vertices);
    if (omega) {
      auto inv = inverse(omega->coords());
      if (!inv) throw Singular();
      f = *inv;
      Q top = 0;
      for (const auto& x : h.vertex_coords()) {
        for (const auto& y : h.vertex_coords()) top = std::max(top, dot(x, f.apply(y)));
      }
      if (sign(top) > 0) f = Q(1) / top * f;
    }
  }
  Json j;
  if (!omega || !is_bipartite_effect(h, h, f)) {
    if (o.json) {
      j["kind"] = to_string(TeleportKind::kFail);
      out << j.dump(2) << "\n";
    } else {
      out << "teleportation: " << to_string(TeleportKind::kFail)
          << " (no isomorphism state with a matching effect)\n";
    }
    return kOk;
  }
  TeleportationReport r = verify_teleportation({h, f, *omega});
  if (o.json) {
    j["kind"] = to_string(r.kind);
    j["tau"] = qmatrix_json(r.tau);
    if (r.success_probability) j["success_probability"] = q_json(*r.success_probability);
    if (r.c) j["c"] = q_json(*r.c);
    j["state"] = Json::parse(composite_to_json(*omega));
    j["effect"] = qmatrix_json(f);
    out << j.dump(2) << "\n";
    return kOk;
  }
  out << "teleportation: " << to_string(r.kind) << "\n";
  if (r.success_probability) out << "success probability: " << pretty(*r.success_probability) << "\n";
  if (r.c) out << "correction constant c = " << pretty(*r.c) << "\n";
  return kOk;
}

int cmd_steer(const Options& o, std::ostream& out) {
  std::optional<CompositeState> omega;
  std::optional<Pair> p;
  if (!o.state.empty()) {
    p = load_pair(o);
    omega = parse_composite_json(p->a, p->b, read_file(o.state));
  } else {
    Model model = load(o.model, o, "--model");
    LinearHull h = linear_hull(model);
    omega = isomorphism_state_with_marginal(h, barycenter(model), o.max_vertices);
    if (!omega) throw ValidationError("no isomorphism state with uniform marginal; pass --state");
  }
  SteeringReport r = steering_report(*omega, o.max_vertices);
  bool face = conditioning_image_is_face(*omega);
  if (o.json) {
    Json j;
    j["steering"] = r.steering;
    j["ensembles_checked"] = r.ensembles_checked;
    j["conditioning_image_is_face"] = face;
    if (r.failing_ensemble) {
      j["failing_ensemble"] = Json::array();
      for (const auto& b : *r.failing_ensemble) j["failing_ensemble"].push_back(qvec_json(b));
    }
    out << j.dump(2) << "\n";
    return kOk;
  }
  out << "steering: " << (r.steering ? "yes" : "no") << " (" << r.ensembles_checked
      << " ensembles checked)\n"
      << "conditioning image is a face: " << std::boolalpha << face << "\n";
  return kOk;
}

int cmd_entropy(const Options& o, std::ostream& out) {
  Model model = load(o.model, o, "--model");
  LinearHull h = linear_hull(model);
  if (o.state.empty()) throw ValidationError("missing --state (rationals or pure:k)");
  Weight w = parse_weight(model, o.state);
  EntropyReport hm = measurement_entropy(model.test_space(), w);
  EntropyReport sm = mixing_entropy(h, w, o.max_vertices);
  const auto& ts = model.test_space();
  if (o.json) {
    Json j;
    Json mj;
    mj["value_bits"] = hm.value_bits;
    Json labels = Json::array();
    if (hm.test) {
      for (auto x : ts.tests()[*hm.test]) labels.push_back(ts.label(x));
    }
    mj["witness"] = {{"test", labels}};
    Json sj;
    sj["value_bits"] = sm.value_bits;
    Json wit = Json::object();
    if (sm.decomposition) {
      Json verts = Json::array();
      for (auto v : sm.decomposition->vertices) verts.push_back(qvec_json(h.vertices()[v]));
      wit["pure_states"] = verts;
      wit["weights"] = qvec_json(sm.decomposition->weights);
    }
    sj["witness"] = wit;
    j["measurement"] = mj;
    j["mixing"] = sj;
    out << j.dump(2) << "\n";
    return kOk;
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", hm.value_bits);
  out << "measurement entropy H = " << buf << " bits";
  if (hm.test) {
    out << " (test {";
    const auto& t = ts.tests()[*hm.test];
    for (std::size_t k = 0; k < t.size(); ++k) out << (k ? ", " : "") << ts.label(t[k]);
    out << "})";
  }
  std::snprintf(buf, sizeof buf, "%.12g", sm.value_bits);
  out << "\nmixing entropy S = " << buf << " bits";
  if (sm.decomposition) {
    out << " (";
    for (std::size_t k = 0; k < sm.decomposition->vertices.size(); ++k) {
      out << (k ? " + " : "") << pretty(sm.decomposition->weights[k]) << " · α"
          << sm.decomposition->vertices[k];
    }
    out << ")";
  }
  out << "\n";
  return kOk;
}

int cmd_ic(const Options& o, std::ostream& out) {
  IcRun r = run_information_causality(o.n, o.m, parse_ic_resource(o.resource));
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", r.lhs);
  if (o.json) {
    Json j;
    j["n"] = r.n;
    j["m"] = r.m;
    j["resource"] = to_string(r.resource);
    j["lhs"] = r.lhs;
    j["violated"] = r.violated;
    j["per_k"] = Json::array();
    for (std::size_t k = 0; k < r.per_k.size(); ++k) {
      Json t = Json::array();
      for (const auto& row : r.tables[k]) t.push_back({row[0], row[1]});
      j["per_k"].push_back({{"k", k}, {"mutual_information", r.per_k[k]}, {"table", t}});
    }
    out << j.dump(2) << "\n";
    return kOk;
  }
  for (std::size_t k = 0; k < r.per_k.size(); ++k) {
    char b2[64];
    std::snprintf(b2, sizeof b2, "%.12g", r.per_k[k]);
    out << "k = " << k << ": I(a_k : b | G = k) = " << b2 << "\n";
  }
  out << "lhs = " << buf << (r.violated ? " > " : " <= ") << "m = " << r.m << ": IC "
      << (r.violated ? "violated" : "respected") << "\n";
  return kOk;
}

int cmd_jordan(const Options& o, std::ostream& out) {
  JordanSystem sys = JordanSystem::make(parse_jordan_kind(o.kind), static_cast<int>(o.n));
  JordanSuiteReport r = jordan_suite(sys, o.samples, o.seed);
  JordanModelReport mr = jordan_model_checks(sys, std::min(o.samples, 100), o.seed);
  std::vector<std::pair<std::string, double>> rows = {
      {"commutativity", r.commutativity},
      {"jordan_identity", r.jordan_identity},
      {"trace_associativity", r.trace_associativity},
      {"spectral_reconstruction", r.spectral_reconstruction},
      {"frame_orthogonality", r.frame_orthogonality},
      {"homogeneity", r.homogeneity},
      {"quadratic_positivity", r.quadratic_positivity}};
  if (r.purification) rows.push_back({"purification", *r.purification});
  if (r.hanche_olsen) rows.push_back({"hanche_olsen", *r.hanche_olsen});
  if (o.json) {
    Json j;
    j["kind"] = to_string(sys.kind());
    j["n"] = sys.n();
    j["dim"] = sys.dim();
    j["rank"] = mr.rank;
    j["samples"] = r.samples;
    Json res = Json::object();
    for (const auto& [k, v] : rows) res[k] = v;
    j["residuals"] = res;
    j["self_dual"] = r.self_dual;
    j["uniform"] = mr.uniform;
    j["sharp"] = mr.sharp;
    j["max_residual"] = r.max_residual();
    out << j.dump(2) << "\n";
    return kOk;
  }
  out << to_string(sys.kind()) << "(" << sys.n() << "): dim " << sys.dim() << ", rank "
      << mr.rank << ", " << r.samples << " samples\n";
  for (const auto& [k, v] : rows) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    out << "  " << k << ": " << buf << "\n";
  }
  out << "  self-dual: " << std::boolalpha << r.self_dual << "\n"
      << "  uniform: " << mr.uniform << ", sharp: " << mr.sharp << "\n";
  return kOk;
}

int cmd_greechie(const Options& o, std::ostream& out) {
  if (o.model.empty()) throw ValidationError("missing --model");
  Model model = load_model(o.model);
  if (model.test_space().size() > o.max_outcomes) {
    throw SizeGuardExceeded("outcomes", model.test_space().size(), o.max_outcomes);
  }
  out << greechie_dot(model.test_space());
  return kOk;
}

}  // namespace

std::string usage() {
  std::ostringstream s;
  s << "usage: gptkit <subcommand> [options]\n\nsubcommands:\n";
  for (const auto& [name, help] : kCommands) {
    s << "  " << name << std::string(14 - name.size(), ' ') << help << "\n";
  }
  s << "\nmodels: a JSON file or builtin:squarebit|firefly|grid3|graph3|ngon:k|classical:n\n"
       "run 'gptkit <subcommand> --help' for options\n";
  return s.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  if (!args.empty() && (args[0] == "--help" || args[0] == "-h")) {
    out << usage();
    return kOk;
  }
  auto known = std::find_if(kCommands.begin(), kCommands.end(), [&](const auto& c) {
    return !args.empty() && c.first == args[0];
  });
  if (known == kCommands.end()) {
    if (!args.empty()) err << "unknown subcommand '" << args[0] << "'\n";
    err << usage();
    return kUsage;
  }
  const std::string& cmd = args[0];

  Options o;
  CLI::App app(known->second, "gptkit " + cmd);
  app.add_option("--model", o.model, "model file or builtin:name");
  app.add_option("--a", o.a, "first factor");
  app.add_option("--b", o.b, "second factor");
  app.add_option("--tensor", o.tensor, "min or max")->capture_default_str();
  app.add_flag("--json", o.json, "machine-readable output");
  app.add_option("--max-outcomes", o.max_outcomes, "refuse larger models")->capture_default_str();
  app.add_option("--max-vertices", o.max_vertices, "refuse models with more pure states")
      ->capture_default_str();
  app.add_option("--n", o.n, "IC bits or Jordan size")->capture_default_str();
  app.add_option("--m", o.m, "IC message bits")->capture_default_str();
  app.add_option("--resource", o.resource, "classical, pr or quantum")->capture_default_str();
  app.add_option("--kind", o.kind, "real, complex, quaternion or spin")->capture_default_str();
  app.add_option("--samples", o.samples, "random samples")->capture_default_str();
  app.add_option("--seed", o.seed, "random seed")->capture_default_str();
  app.add_option("--state", o.state, "state: file, rationals or pure:k");
  app.add_option("--states", o.states, "comma-separated pure-state indices");
  app.add_option("--effect", o.effect, "bipartite effect matrix file");

  std::vector<std::string> rest(args.rbegin(), args.rend() - 1);
  try {
    app.parse(rest);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "gptkit " << cmd << ": " << e.what() << "\n";
    return kInvalid;
  }

  static const std::map<std::string, int (*)(const Options&, std::ostream&)> kHandlers = {
      {"pure-states", cmd_pure_states}, {"classify", cmd_classify},
      {"tensor", cmd_tensor},           {"chsh", cmd_chsh},
      {"separable", cmd_separable},     {"clone", cmd_clone},
      {"broadcast", cmd_broadcast},     {"teleport", cmd_teleport},
      {"steer", cmd_steer},             {"entropy", cmd_entropy},
      {"ic", cmd_ic},                   {"jordan", cmd_jordan},
      {"greechie", cmd_greechie}};
  try {
    return kHandlers.at(cmd)(o, out);
  } catch (const SizeGuardExceeded& e) {
    err << "gptkit " << cmd << ": refused: " << e.what() << "\n";
    return kGuard;
  } catch (const UnsupportedSize& e) {
    err << "gptkit " << cmd << ": refused: " << e.what() << "\n";
    return kGuard;
  } catch (const Error& e) {
    err << "gptkit " << cmd << ": " << e.what() << "\n";
    return kInvalid;
  } catch (const nlohmann::json::exception& e) {
    err << "gptkit " << cmd << ": bad JSON: " << e.what() << "\n";
    return kInvalid;
  }
}

}  // namespace gptkit::cli
