// Copyright 2026 The walkref Authors
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

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "walkref/graph.hpp"

namespace walkref {

// {"n": int, "edges": [[i, j, "label"], ...], "vertex_labels": [...]}.
// Indices are 0-based, edges are directed, the label is optional and omitted
// pairs become non-edges. The result is normalized.
LabelledGraph parse_json_graph(std::string_view text);

// Undirected unlabelled graph in graph6 encoding (optional ">>graph6<<"
// header, trailing newline allowed), with uniform vertex labels.
LabelledGraph parse_graph6(std::string_view text);

// Adjacency matrix of a graph6 string, row-major n*n.
std::vector<bool> decode_graph6(std::string_view text, std::size_t* n_out);
std::string encode_graph6(std::size_t n, const std::vector<bool>& adjacency);

// Dispatches on content: a leading '{' selects JSON, anything else graph6.
LabelledGraph load_graph_file(const std::filesystem::path& path);

}  // namespace walkref
