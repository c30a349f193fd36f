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

#include "gptkit/model_io.hpp"

#include <fstream>
#include <sstream>

#include "gptkit/catalog.hpp"
#include "gptkit/error.hpp"
#include "json.hpp"

namespace gptkit {

using nlohmann::json;

Model parse_model_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
  try {
    auto outcomes = doc.at("outcomes").get<std::vector<std::string>>();
    auto tests = doc.at("tests").get<std::vector<std::vector<std::size_t>>>();
    TestSpace ts(std::move(outcomes), std::move(tests));
    const json& states = doc.contains("states") ? doc.at("states") : json("full");
    if (states.is_string()) {
      if (states.get<std::string>() != "full") {
        throw ValidationError("\"states\" must be \"full\" or a list of weights");
      }
      return Model::full(std::move(ts));
    }
    std::vector<Weight> gens;
    for (const auto& row : states) {
      Weight w;
      for (const auto& v : row) {
        if (v.is_string()) w.push_back(parse_rational(v.get<std::string>()));
        else if (v.is_number_integer()) w.push_back(Q(v.get<long long>()));
        else throw ValidationError("state entries must be rational strings");
      }
      gens.push_back(std::move(w));
    }
    return Model::generated(std::move(ts), std::move(gens));
  } catch (const json::exception& e) {
    throw ValidationError(std::string("bad model file: ") + e.what());
  }
}

std::string weight_to_json(const Weight& w) {
  json row = json::array();
  for (const auto& q : w) row.push_back(to_string(q));
  return row.dump();
}

std::string model_to_json(const Model& model) {
  const TestSpace& ts = model.test_space();
  json doc;
  doc["outcomes"] = ts.outcomes();
  doc["tests"] = ts.tests();
  if (model.is_full()) {
    doc["states"] = "full";
  } else {
    json rows = json::array();
    for (const auto& w : model.generators()) rows.push_back(json::parse(weight_to_json(w)));
    doc["states"] = rows;
  }
  return doc.dump(2);
}

Model load_model(const std::string& path_or_spec) {
  if (path_or_spec.rfind("builtin:", 0) == 0) return catalog::builtin(path_or_spec);
  std::ifstream in(path_or_spec);
  if (!in) throw ValidationError("cannot open model file '" + path_or_spec + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_model_json(buf.str());
}

std::string greechie_dot(const TestSpace& ts) {
  static const char* kColors[] = {"red",    "blue",   "darkgreen", "orange",
                                  "purple", "brown",  "magenta",   "cyan4",
                                  "gold3",  "gray40", "navy",      "olivedrab"};
  std::ostringstream out;
  out << "graph greechie {\n  node [shape=circle, width=0.3, fontsize=10];\n";
  for (std::size_t i = 0; i < ts.size(); ++i) {
    out << "  n" << i << " [label=\"" << ts.label(i) << "\"];\n";
  }
  for (std::size_t t = 0; t < ts.tests().size(); ++t) {
    const Test& test = ts.tests()[t];
    const char* color = kColors[t % (sizeof kColors / sizeof *kColors)];
    if (test.size() == 1) {
      out << "  n" << test[0] << " [color=" << color << "];\n";
      continue;
    }
    out << "  ";
    for (std::size_t k = 0; k < test.size(); ++k) {
      out << (k ? " -- " : "") << "n" << test[k];
    }
    out << " [color=" << color << ", penwidth=2, label=\"T" << t << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace gptkit
