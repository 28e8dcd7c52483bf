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

#include "walkref/graph.hpp"

#include <cstdio>
#include <limits>

#include "walkref/errors.hpp"

namespace walkref {
namespace {

constexpr std::uint8_t kLoopMarker = 0;
constexpr std::uint8_t kEdgeMarker = 1;
constexpr std::uint8_t kNonEdgeMarker = 2;

void require_same_n(const Labelling& a, const Labelling& b) {
  if (a.n() != b.n()) {
    throw DimensionError("labellings over different vertex counts: " + std::to_string(a.n()) +
                         " vs " + std::to_string(b.n()));
  }
}

}  // namespace

Labelling Labelling::from_keys(std::size_t n, std::vector<std::string> cell_keys) {
  if (cell_keys.size() != n * n) {
    throw DimensionError("expected " + std::to_string(n * n) + " cell keys, got " +
                         std::to_string(cell_keys.size()));
  }
  Labelling l;
  l.n_ = n;
  l.cells_.resize(cell_keys.size());
  for (std::size_t c = 0; c < cell_keys.size(); ++c) l.cells_[c] = l.interner_.intern(cell_keys[c]);
  const auto remap = l.interner_.sort_by_key();
  for (auto& id : l.cells_) id = remap[id];
  return l;
}

std::vector<LabelId> Labelling::first_occurrence_matrix() const {
  constexpr LabelId kUnset = std::numeric_limits<LabelId>::max();
  std::vector<LabelId> seen(class_count(), kUnset);
  std::vector<LabelId> out(cells_.size());
  LabelId next = 0;
  for (std::size_t c = 0; c < cells_.size(); ++c) {
    auto& slot = seen[cells_[c]];
    if (slot == kUnset) slot = next++;
    out[c] = slot;
  }
  return out;
}

bool is_loop_distinct(const Labelling& l) {
  const std::size_t n = l.n();
  std::vector<char> is_loop_label(l.class_count(), 0);
  for (std::size_t i = 0; i < n; ++i) is_loop_label[l.at(i, i)] = 1;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && is_loop_label[l.at(i, j)]) return false;
    }
  }
  return true;
}

bool is_transpose_respecting(const Labelling& l) {
  constexpr LabelId kUnset = std::numeric_limits<LabelId>::max();
  std::vector<LabelId> transpose_of(l.class_count(), kUnset);
  for (std::size_t i = 0; i < l.n(); ++i) {
    for (std::size_t j = 0; j < l.n(); ++j) {
      auto& slot = transpose_of[l.at(i, j)];
      if (slot == kUnset) {
        slot = l.at(j, i);
      } else if (slot != l.at(j, i)) {
        return false;
      }
    }
  }
  return true;
}

LabelledGraph make_graph(Labelling labels) {
  LabelledGraph g;
  g.loop_distinct = is_loop_distinct(labels);
  g.transpose_respecting = is_transpose_respecting(labels);
  g.labels = std::move(labels);
  return g;
}

LabelledGraph from_vertex_labels(std::size_t n, std::span<const std::string> vertex_labels,
                                 const std::function<bool(std::size_t, std::size_t)>& edge) {
  if (vertex_labels.size() != n) {
    throw DimensionError("vertex_labels has " + std::to_string(vertex_labels.size()) +
                         " entries for " + std::to_string(n) + " vertices");
  }
  std::vector<std::string> keys;
  keys.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::uint8_t marker =
          i == j ? kLoopMarker : (edge(i, j) ? kEdgeMarker : kNonEdgeMarker);
      keys.push_back(KeyWriter().str(vertex_labels[i]).str(vertex_labels[j]).u8(marker).take());
    }
  }
  return normalize(make_graph(Labelling::from_keys(n, std::move(keys))));
}

LabelledGraph normalize(const LabelledGraph& g) {
  const std::size_t n = g.n();
  const Labelling& l = g.labels;
  std::vector<std::string> keys;
  keys.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      keys.push_back(
          KeyWriter().str(l.key_of(i, j)).str(l.key_of(j, i)).u8(i == j ? 1 : 0).take());
    }
  }
  return make_graph(Labelling::from_keys(n, std::move(keys)));
}

bool refines(const Labelling& a, const Labelling& b) {
  require_same_n(a, b);
  constexpr LabelId kUnset = std::numeric_limits<LabelId>::max();
  std::vector<LabelId> image(a.class_count(), kUnset);
  const auto ac = a.cells();
  const auto bc = b.cells();
  for (std::size_t c = 0; c < ac.size(); ++c) {
    auto& slot = image[ac[c]];
    if (slot == kUnset) {
      slot = bc[c];
    } else if (slot != bc[c]) {
      return false;
    }
  }
  return true;
}

bool equivalent(const Labelling& a, const Labelling& b) {
  return a.class_count() == b.class_count() && refines(a, b) && refines(b, a);
}

std::string Fingerprint::digest() const {
  KeyWriter w;
  w.u64(entries.size());
  for (const auto& [key, count] : entries) w.str(key).u64(count);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(w.view())));
  return buf;
}

Fingerprint readout_multiset(const Labelling& l) {
  std::vector<std::size_t> counts(l.class_count(), 0);
  for (LabelId id : l.cells()) ++counts[id];
  Fingerprint fp;
  fp.entries.reserve(counts.size());
  // Ids are key ranks, so id order is key order.
  for (LabelId id = 0; id < counts.size(); ++id) fp.entries.emplace_back(l.interner().key(id), counts[id]);
  return fp;
}

Labelling permute_vertices(const Labelling& l, std::span<const std::size_t> perm) {
  const std::size_t n = l.n();
  if (perm.size() != n) throw DimensionError("permutation size does not match vertex count");
  std::vector<std::string> keys(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) keys[perm[i] * n + perm[j]] = l.key_of(i, j);
  }
  return Labelling::from_keys(n, std::move(keys));
}

LabelledGraph permute_vertices(const LabelledGraph& g, std::span<const std::size_t> perm) {
  return make_graph(permute_vertices(g.labels, perm));
}

}  // namespace walkref
