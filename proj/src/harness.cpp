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

#include "walkref/harness.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <map>
#include <random>

#include "walkref/errors.hpp"

namespace walkref {
namespace {

// Cayley graph of Z4 x Z4 with connection set {±(1,0), ±(0,1), ±(1,1)};
// vertex 4a + b is (a, b).
constexpr std::array<std::array<int, 6>, 16> kShrikhande = {{
    {1, 3, 4, 5, 12, 15}, {0, 2, 5, 6, 12, 13}, {1, 3, 6, 7, 13, 14}, {0, 2, 4, 7, 14, 15},
    {0, 3, 5, 7, 8, 9},   {0, 1, 4, 6, 9, 10},  {1, 2, 5, 7, 10, 11}, {2, 3, 4, 6, 8, 11},
    {4, 7, 9, 11, 12, 13}, {4, 5, 8, 10, 13, 14}, {5, 6, 9, 11, 14, 15}, {6, 7, 8, 10, 12, 15},
    {0, 1, 8, 11, 13, 15}, {1, 2, 8, 9, 12, 14}, {2, 3, 9, 10, 13, 15}, {0, 3, 10, 11, 12, 14},
}};

// 4x4 rook's graph: cells sharing a row or a column.
constexpr std::array<std::array<int, 6>, 16> kRook4x4 = {{
    {1, 2, 3, 4, 8, 12},   {0, 2, 3, 5, 9, 13},   {0, 1, 3, 6, 10, 14},  {0, 1, 2, 7, 11, 15},
    {0, 5, 6, 7, 8, 12},   {1, 4, 6, 7, 9, 13},   {2, 4, 5, 7, 10, 14},  {3, 4, 5, 6, 11, 15},
    {0, 4, 9, 10, 11, 12}, {1, 5, 8, 10, 11, 13}, {2, 6, 8, 9, 11, 14},  {3, 7, 8, 9, 10, 15},
    {0, 4, 8, 13, 14, 15}, {1, 5, 9, 12, 14, 15}, {2, 6, 10, 12, 13, 15}, {3, 7, 11, 12, 13, 14},
}};

constexpr std::array<std::array<int, 3>, 10> kPetersen = {{
    {1, 4, 5}, {0, 2, 6}, {1, 3, 7}, {2, 4, 8}, {0, 3, 9},
    {0, 7, 8}, {1, 8, 9}, {2, 5, 9}, {3, 5, 6}, {4, 6, 7},
}};

template <std::size_t N, std::size_t K>
std::vector<bool> from_lists(const std::array<std::array<int, K>, N>& lists) {
  std::vector<bool> adj(N * N, false);
  for (std::size_t v = 0; v < N; ++v) {
    for (int w : lists[v]) adj[v * N + static_cast<std::size_t>(w)] = true;
  }
  return adj;
}

bool parse_suffix(std::string_view name, std::string_view prefix, std::size_t* value) {
  if (name.substr(0, prefix.size()) != prefix || name.size() == prefix.size()) return false;
  const auto digits = name.substr(prefix.size());
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), *value);
  return ec == std::errc() && ptr == digits.data() + digits.size() && *value > 0;
}

// Literal multiset of one pair's walk label tuples.
using Tuple = std::vector<int>;

void collect_walks(const std::vector<std::vector<int>>& colour, std::size_t from, std::size_t to,
                   int remaining, Tuple& prefix, std::vector<Tuple>& out) {
  const std::size_t n = colour.size();
  if (remaining == 1) {
    prefix.push_back(colour[from][to]);
    out.push_back(prefix);
    prefix.pop_back();
    return;
  }
  for (std::size_t mid = 0; mid < n; ++mid) {
    prefix.push_back(colour[from][mid]);
    collect_walks(colour, mid, to, remaining - 1, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

LabelledGraph gen_random_labelled(std::size_t n, std::size_t alphabet_size, std::uint64_t seed) {
  if (n < 1 || alphabet_size < 1) throw std::invalid_argument("random graph needs n >= 1 and alphabet >= 1");
  std::mt19937_64 rng(seed);
  std::vector<std::string> keys;
  keys.reserve(n * n);
  for (std::size_t c = 0; c < n * n; ++c) {
    keys.push_back("x" + std::to_string(rng() % alphabet_size));
  }
  return normalize(make_graph(Labelling::from_keys(n, std::move(keys))));
}

std::vector<bool> named_adjacency(std::string_view name, std::size_t* n_out) {
  std::size_t k = 0;
  if (name == "shrikhande" || name == "rook4x4") {
    auto adj = from_lists(name == "shrikhande" ? kShrikhande : kRook4x4);
    if (!is_strongly_regular(16, adj, 6, 2, 2)) {
      throw std::logic_error(std::string(name) + " adjacency failed the SRG(16,6,2,2) check");
    }
    *n_out = 16;
    return adj;
  }
  if (name == "petersen") {
    auto adj = from_lists(kPetersen);
    if (!is_strongly_regular(10, adj, 3, 0, 1)) throw std::logic_error("petersen adjacency failed the SRG check");
    *n_out = 10;
    return adj;
  }
  if (name == "C3+C3") {
    std::vector<bool> adj(36, false);
    for (std::size_t base : {0, 3}) {
      for (std::size_t a = 0; a < 3; ++a) {
        for (std::size_t b = 0; b < 3; ++b) {
          if (a != b) adj[(base + a) * 6 + base + b] = true;
        }
      }
    }
    *n_out = 6;
    return adj;
  }
  if (parse_suffix(name, "path", &k)) {
    std::vector<bool> adj(k * k, false);
    for (std::size_t v = 0; v + 1 < k; ++v) adj[v * k + v + 1] = adj[(v + 1) * k + v] = true;
    *n_out = k;
    return adj;
  }
  if (parse_suffix(name, "C", &k)) {
    if (k < 3) throw InputError("cycles need at least 3 vertices");
    std::vector<bool> adj(k * k, false);
    for (std::size_t v = 0; v < k; ++v) {
      const std::size_t w = (v + 1) % k;
      adj[v * k + w] = adj[w * k + v] = true;
    }
    *n_out = k;
    return adj;
  }
  if (parse_suffix(name, "K", &k)) {
    std::vector<bool> adj(k * k, true);
    for (std::size_t v = 0; v < k; ++v) adj[v * k + v] = false;
    *n_out = k;
    return adj;
  }
  throw InputError("unknown graph name: " + std::string(name));
}

LabelledGraph gen_named(std::string_view name) {
  std::size_t n = 0;
  const auto adj = named_adjacency(name, &n);
  const std::vector<std::string> uniform(n);
  return from_vertex_labels(n, uniform, [&](std::size_t i, std::size_t j) { return adj[i * n + j]; });
}

std::vector<std::string> corpus_named_graphs() {
  return {"C6", "C3+C3", "K4", "path5", "path6", "petersen", "shrikhande", "rook4x4"};
}

GraphFamily random_corpus_member(std::size_t k, std::uint64_t base_seed) {
  return GraphFamily{"random", 3 + k % 4, base_seed + k, 1 + (k / 4) % 3};
}

LabelledGraph build(const GraphFamily& family) {
  if (family.name == "random") return gen_random_labelled(family.n, family.alphabet_size, family.seed);
  return gen_named(family.name);
}

PairPartition pair_partition(const Labelling& l) {
  std::map<LabelId, std::set<std::pair<std::size_t, std::size_t>>> blocks;
  for (std::size_t i = 0; i < l.n(); ++i) {
    for (std::size_t j = 0; j < l.n(); ++j) blocks[l.at(i, j)].insert({i, j});
  }
  PairPartition out;
  for (auto& [id, block] : blocks) out.insert(std::move(block));
  return out;
}

PairPartition brute_force_partition(const LabelledGraph& g, const Procedure& proc, std::size_t t) {
  const std::size_t n = g.n();
  std::vector<std::vector<int>> colour(n, std::vector<int>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) colour[i][j] = static_cast<int>(g.labels.at(i, j));
  }
  const int ell = proc.kind == ProcedureKind::kWl2 ? 2 : proc.ell;
  for (std::size_t round = 0; round < t; ++round) {
    // Signature: (own colour or -1, sorted list of walk tuples).
    using Signature = std::pair<int, std::vector<Tuple>>;
    std::vector<std::vector<Signature>> sig(n, std::vector<Signature>(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        std::vector<Tuple> walks;
        Tuple prefix;
        collect_walks(colour, i, j, ell, prefix, walks);
        std::sort(walks.begin(), walks.end());
        const int own = proc.kind == ProcedureKind::kWl2 ? colour[i][j] : -1;
        sig[i][j] = {own, std::move(walks)};
      }
    }
    std::map<Signature, int> palette;
    for (auto& row : sig) {
      for (auto& s : row) palette.emplace(s, 0);
    }
    int next = 0;
    for (auto& [s, c] : palette) c = next++;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) colour[i][j] = palette.at(sig[i][j]);
    }
  }
  std::map<int, std::set<std::pair<std::size_t, std::size_t>>> blocks;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) blocks[colour[i][j]].insert({i, j});
  }
  PairPartition out;
  for (auto& [c, block] : blocks) out.insert(std::move(block));
  return out;
}

bool is_strongly_regular(std::size_t n, const std::vector<bool>& adj, std::size_t k,
                         std::size_t lambda, std::size_t mu) {
  for (std::size_t v = 0; v < n; ++v) {
    if (adj[v * n + v]) return false;
    std::size_t degree = 0;
    for (std::size_t w = 0; w < n; ++w) {
      if (adj[v * n + w] != adj[w * n + v]) return false;
      degree += adj[v * n + w] ? 1 : 0;
    }
    if (degree != k) return false;
  }
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t w = v + 1; w < n; ++w) {
      std::size_t common = 0;
      for (std::size_t x = 0; x < n; ++x) common += (adj[v * n + x] && adj[w * n + x]) ? 1 : 0;
      if (common != (adj[v * n + w] ? lambda : mu)) return false;
    }
  }
  return true;
}

}  // namespace walkref
