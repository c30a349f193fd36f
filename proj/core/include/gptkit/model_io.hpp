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

// Model files and Greechie diagram export.
//
// Model JSON: {"outcomes": [...], "tests": [[0,1,2], ...],
//              "states": "full" | [["1/2", "0", ...], ...]}

#pragma once

#include <string>

#include "gptkit/testspace.hpp"

namespace gptkit {

Model parse_model_json(const std::string& text);
std::string model_to_json(const Model& model);

// Reads a model file, or resolves a "builtin:" spec.
Model load_model(const std::string& path_or_spec);

std::string weight_to_json(const Weight& w);

// Graphviz DOT, one node per outcome and one colored path per test.
std::string greechie_dot(const TestSpace& ts);

}  // namespace gptkit
