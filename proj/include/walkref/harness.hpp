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
#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "walkref/graph.hpp"
#include "walkref/refinement.hpp"

namespace walkref {

struct GraphFamily {
  std::string name;  // "random" or a gen_named name
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::size_t alphabet_size = 1;
};

// Complete graph with every ordered pair (loops included) labelled uniformly
// at random from alphabet_size labels, then normalized. Deterministic per seed.
LabelledGraph gen_random_labelled(std::size_t n, std::size_t alphabet_size, std::uint64_t seed);

// Named unlabelled graphs as normalized complete labelled graphs:
// "C<n>", "K<n>", "path<n>", "C3+C3", "petersen", "shrikhande", "rook4x4".
// Throws InputError for unknown names.
LabelledGraph gen_named(std::string_view name);

// Symmetric adjacency (row-major n*n) behind gen_named.
std::vector<bool> named_adjacency(std::string_view name, std::size_t* n_out);

// The named graphs used by the verification corpus.
std::vector<std::string> corpus_named_graphs();

// Random corpus member k: n = 3 + k % 4, alphabet = 1 + (k / 4) % 3,
// seed = base_seed + k.
GraphFamily random_corpus_member(std::size_t k, std::uint64_t base_seed);
LabelledGraph build(const GraphFamily& family);

using PairPartition = std::set<std::set<std::pair<std::size_t, std::size_t>>>;

// Reference partition of [n]^2 after t rounds, recomputed from the definitions
// with nested loops and literal multisets. For kWl2 it uses the full rule
// that also hashes the pair's own previous label.
PairPartition brute_force_partition(const LabelledGraph& g, const Procedure& proc, std::size_t t);

PairPartition pair_partition(const Labelling& l);

// Strongly regular parameters (n, k, lambda, mu) if the adjacency is an SRG.
bool is_strongly_regular(std::size_t n, const std::vector<bool>& adj, std::size_t k,
                         std::size_t lambda, std::size_t mu);

}  // namespace walkref
