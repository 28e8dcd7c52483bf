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

#include "walkref/graph_io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "walkref/errors.hpp"

namespace walkref {
namespace {

using nlohmann::json;

std::size_t checked_index(const json& v, std::size_t n, const char* what) {
  if (!v.is_number_integer()) throw InputError(std::string(what) + " must be an integer");
  const auto x = v.get<long long>();
  if (x < 0 || static_cast<std::size_t>(x) >= n) {
    throw InputError(std::string(what) + " " + std::to_string(x) + " out of range for n=" +
                     std::to_string(n));
  }
  return static_cast<std::size_t>(x);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r' || s.front() == '\n')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' || s.back() == '\n')) s.remove_suffix(1);
  return s;
}

}  // namespace

LabelledGraph parse_json_graph(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("n")) throw InputError("graph JSON needs an object with \"n\"");
  if (!doc["n"].is_number_integer() || doc["n"].get<long long>() <= 0) {
    throw InputError("\"n\" must be a positive integer");
  }
  const auto n = static_cast<std::size_t>(doc["n"].get<long long>());

  std::vector<std::string> vertex_labels(n);
  if (doc.contains("vertex_labels")) {
    const auto& vl = doc["vertex_labels"];
    if (!vl.is_array() || vl.size() != n) throw InputError("\"vertex_labels\" must list n strings");
    for (std::size_t i = 0; i < n; ++i) {
      if (!vl[i].is_string()) throw InputError("vertex labels must be strings");
      vertex_labels[i] = vl[i].get<std::string>();
    }
  }

  // (i,j) -> edge label; absent means non-edge.
  std::map<std::pair<std::size_t, std::size_t>, std::string> edges;
  if (doc.contains("edges")) {
    if (!doc["edges"].is_array()) throw InputError("\"edges\" must be an array");
    for (const auto& e : doc["edges"]) {
      if (!e.is_array() || e.size() < 2 || e.size() > 3) {
        throw InputError("each edge must be [i, j] or [i, j, \"label\"]");
      }
      const auto i = checked_index(e[0], n, "edge endpoint");
      const auto j = checked_index(e[1], n, "edge endpoint");
      std::string label;
      if (e.size() == 3) {
        if (!e[2].is_string()) throw InputError("edge labels must be strings");
        label = e[2].get<std::string>();
      }
      edges[{i, j}] = std::move(label);
    }
  }

  std::vector<std::string> keys;
  keys.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      KeyWriter w;
      w.str(vertex_labels[i]).str(vertex_labels[j]).u8(i == j ? 1 : 0);
      auto it = edges.find({i, j});
      if (it == edges.end()) {
        w.u8(0);
      } else {
        w.u8(1).str(it->second);
      }
      keys.push_back(w.take());
    }
  }
  return normalize(make_graph(Labelling::from_keys(n, std::move(keys))));
}

std::vector<bool> decode_graph6(std::string_view text, std::size_t* n_out) {
  text = trim(text);
  constexpr std::string_view kHeader = ">>graph6<<";
  if (text.substr(0, kHeader.size()) == kHeader) text.remove_prefix(kHeader.size());
  for (char c : text) {
    if (c < 63 || c > 126) throw InputError("graph6: byte outside 63..126");
  }
  std::size_t pos = 0;
  auto take = [&]() -> unsigned {
    if (pos >= text.size()) throw InputError("graph6: truncated input");
    return static_cast<unsigned>(text[pos++] - 63);
  };
  std::size_t n = 0;
  const unsigned first = take();
  if (first < 63) {
    n = first;
  } else {
    const unsigned second = take();
    if (second < 63) {
      const unsigned middle = take();
      const unsigned low = take();
      n = (std::size_t{second} << 12) | (std::size_t{middle} << 6) | low;
    } else {
      for (int k = 0; k < 6; ++k) n = (n << 6) | take();
    }
  }
  if (n == 0) throw InputError("graph6: graphs with zero vertices are not supported");
  std::vector<bool> adj(n * n, false);
  const std::size_t bits = n * (n - 1) / 2;
  const std::size_t need = (bits + 5) / 6;
  if (text.size() - pos != need) {
    throw InputError("graph6: expected " + std::to_string(need) + " data bytes, got " +
                     std::to_string(text.size() - pos));
  }
  std::size_t bit = 0;
  unsigned chunk = 0;
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i, ++bit) {
      if (bit % 6 == 0) chunk = take();
      if ((chunk >> (5 - bit % 6)) & 1U) {
        adj[i * n + j] = true;
        adj[j * n + i] = true;
      }
    }
  }
  *n_out = n;
  return adj;
}

std::string encode_graph6(std::size_t n, const std::vector<bool>& adjacency) {
  std::string out;
  if (n < 63) {
    out.push_back(static_cast<char>(n + 63));
  } else if (n < 258048) {
    out.push_back(126);
    for (int shift = 12; shift >= 0; shift -= 6) out.push_back(static_cast<char>(((n >> shift) & 63) + 63));
  } else {
    out.push_back(126);
    out.push_back(126);
    for (int shift = 30; shift >= 0; shift -= 6) out.push_back(static_cast<char>(((n >> shift) & 63) + 63));
  }
  unsigned chunk = 0;
  int filled = 0;
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      chunk = (chunk << 1) | (adjacency[i * n + j] ? 1U : 0U);
      if (++filled == 6) {
        out.push_back(static_cast<char>(chunk + 63));
        chunk = 0;
        filled = 0;
      }
    }
  }
  if (filled > 0) out.push_back(static_cast<char>((chunk << (6 - filled)) + 63));
  return out;
}

LabelledGraph parse_graph6(std::string_view text) {
  std::size_t n = 0;
  const auto adj = decode_graph6(text, &n);
  const std::vector<std::string> uniform(n);
  return from_vertex_labels(n, uniform, [&](std::size_t i, std::size_t j) { return adj[i * n + j]; });
}

LabelledGraph load_graph_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open graph file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const auto body = trim(text);
  if (body.empty()) throw InputError("empty graph file: " + path.string());
  if (body.front() == '{') return parse_json_graph(body);
  return parse_graph6(body);
}

}  // namespace walkref
