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

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "walkref/labels.hpp"

namespace walkref {

// A labelling of all n*n ordered vertex pairs, stored row-major as dense ids.
// Ids are ranks of the canonical keys in lexicographic order, so two
// labellings built from the same key multiset agree id-for-id.
class Labelling {
 public:
  Labelling() = default;

  // cell_keys is row-major with n*n entries.
  static Labelling from_keys(std::size_t n, std::vector<std::string> cell_keys);

  std::size_t n() const { return n_; }
  LabelId at(std::size_t i, std::size_t j) const { return cells_[i * n_ + j]; }
  std::span<const LabelId> cells() const { return cells_; }
  const LabelInterner& interner() const { return interner_; }
  const std::string& key_of(std::size_t i, std::size_t j) const {
    return interner_.key(at(i, j));
  }
  std::size_t class_count() const { return interner_.size(); }

  // Ids renumbered by first occurrence in row-major order. Two labellings of
  // the same n are equivalent iff these matrices are equal.
  std::vector<LabelId> first_occurrence_matrix() const;

 private:
  std::size_t n_ = 0;
  std::vector<LabelId> cells_;
  LabelInterner interner_;
};

struct LabelledGraph {
  Labelling labels;
  bool loop_distinct = false;
  bool transpose_respecting = false;
  bool complete = true;

  std::size_t n() const { return labels.n(); }
};

bool is_loop_distinct(const Labelling& l);
bool is_transpose_respecting(const Labelling& l);

// Wraps a labelling and records which normalization properties it has.
LabelledGraph make_graph(Labelling labels);

// Edge-labels a vertex-labelled graph with (label(i), label(j), marker) where
// the marker separates loops, edges and non-edges, then normalizes.
LabelledGraph from_vertex_labels(std::size_t n,
                                 std::span<const std::string> vertex_labels,
                                 const std::function<bool(std::size_t, std::size_t)>& edge);

// Relabels (i,j) with (label(i,j), label(j,i), i==j). The result refines the
// input and is loop-distinct and transpose-respecting.
LabelledGraph normalize(const LabelledGraph& g);

// a ⊑ b: equal labels under a imply equal labels under b.
bool refines(const Labelling& a, const Labelling& b);
// a ≡ b.
bool equivalent(const Labelling& a, const Labelling& b);

// Graph-level readout: the multiset of canonical keys over all n*n pairs.
struct Fingerprint {
  std::vector<std::pair<std::string, std::size_t>> entries;  // sorted by key

  // Short hex digest for display; comparisons use the full entries.
  std::string digest() const;
  bool operator==(const Fingerprint&) const = default;
};

Fingerprint readout_multiset(const Labelling& l);

// Moves pair (i,j) to (perm[i], perm[j]).
Labelling permute_vertices(const Labelling& l, std::span<const std::size_t> perm);
LabelledGraph permute_vertices(const LabelledGraph& g, std::span<const std::size_t> perm);

}  // namespace walkref
