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
#include <functional>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "walkref/errors.hpp"
#include "walkref/graph.hpp"
#include "walkref/parallel.hpp"

namespace walkref {

using RationalVector = std::vector<mpq_class>;

// Sparse count vector over label tuples; the message type of the interned
// countable simulator.
using TupleCounts = std::map<std::vector<std::uint64_t>, std::uint64_t>;

// Sum aggregation. The engine never aggregates any other way.
void accumulate(std::int64_t& acc, const std::int64_t& x);
void accumulate(mpz_class& acc, const mpz_class& x);
void accumulate(RationalVector& acc, const RationalVector& x);
void accumulate(TupleCounts& acc, const TupleCounts& x);

inline std::size_t feature_dimension(const std::int64_t&) { return 1; }
inline std::size_t feature_dimension(const std::uint64_t&) { return 1; }
inline std::size_t feature_dimension(const mpz_class&) { return 1; }
inline std::size_t feature_dimension(const RationalVector& v) { return v.size(); }

// Canonical bytes of a feature value; equal features give equal keys.
std::string feature_key(const std::int64_t& x);
std::string feature_key(const std::uint64_t& x);
std::string feature_key(const mpz_class& x);
std::string feature_key(const RationalVector& x);

// An l-walk MPNN. message(t, walk) receives the l labels along one walk in
// round t >= 1; update(t, own, aggregated) receives the pair's previous label
// and the sum of all its messages. Both must be pure.
template <class Feature, class Message = Feature>
struct WalkMpnn {
  int ell = 2;
  std::function<Message(std::size_t round, std::span<const Feature* const> walk)> message;
  std::function<Feature(std::size_t round, const Feature& own, const Message& aggregated)> update;
};

template <class Feature>
struct FeatureMatrix {
  std::size_t n = 0;
  std::size_t round = 0;
  std::vector<Feature> cells;  // row-major

  const Feature& at(std::size_t i, std::size_t j) const { return cells[i * n + j]; }
};

template <class Feature>
void check_uniform_dimension(const FeatureMatrix<Feature>& m) {
  if (m.cells.size() != m.n * m.n) throw DimensionError("feature matrix does not hold n*n cells");
  if (m.cells.empty()) return;
  const std::size_t dim = feature_dimension(m.cells.front());
  for (const auto& f : m.cells) {
    if (feature_dimension(f) != dim) {
      throw DimensionError("feature dimensions differ within one round: " + std::to_string(dim) +
                           " vs " + std::to_string(feature_dimension(f)));
    }
  }
}

// One round: m(v,w) = sum of message over all n^{l-1} walks v -> ... -> w of
// the complete graph, then update(prev(v,w), m(v,w)).
template <class Feature, class Message>
FeatureMatrix<Feature> mpnn_step(const WalkMpnn<Feature, Message>& mpnn,
                                 const FeatureMatrix<Feature>& prev) {
  if (mpnn.ell < 2) throw std::invalid_argument("walk MPNN needs ell >= 2");
  check_uniform_dimension(prev);
  const std::size_t n = prev.n;
  const std::size_t round = prev.round + 1;
  const auto inner = static_cast<std::size_t>(mpnn.ell - 1);
  FeatureMatrix<Feature> next;
  next.n = n;
  next.round = round;
  next.cells.resize(n * n);
  parallel_for(n * n, [&](std::size_t c) {
    const std::size_t v = c / n;
    const std::size_t w = c % n;
    std::vector<std::size_t> mid(inner, 0);
    std::vector<const Feature*> walk(inner + 1);
    Message sum{};
    bool first = true;
    while (true) {
      std::size_t from = v;
      for (std::size_t k = 0; k < inner; ++k) {
        walk[k] = &prev.at(from, mid[k]);
        from = mid[k];
      }
      walk[inner] = &prev.at(from, w);
      if (first) {
        sum = mpnn.message(round, walk);
        first = false;
      } else {
        accumulate(sum, mpnn.message(round, walk));
      }
      std::size_t k = 0;
      while (k < inner && ++mid[k] == n) mid[k++] = 0;
      if (k == inner) break;
    }
    next.cells[c] = mpnn.update(round, prev.at(v, w), sum);
  });
  check_uniform_dimension(next);
  return next;
}

// Partition induced by a feature matrix.
template <class Feature>
Labelling partition_of(const FeatureMatrix<Feature>& m) {
  std::vector<std::string> keys;
  keys.reserve(m.cells.size());
  for (const auto& f : m.cells) keys.push_back(feature_key(f));
  return Labelling::from_keys(m.n, std::move(keys));
}

// Initial features: the dense label ids of a labelling, in several domains.
FeatureMatrix<std::int64_t> integer_features(const Labelling& l);
FeatureMatrix<std::uint64_t> natural_features(const Labelling& l);
FeatureMatrix<mpz_class> big_integer_features(const Labelling& l);
// s0 = 1 rational features carrying the label id.
FeatureMatrix<RationalVector> rational_features(const Labelling& l);

// Total pseudo-random lookup tables: message values in [0, message_range),
// update values in [0, update_range), a fresh table per (seed, round).
WalkMpnn<std::int64_t> random_table_mpnn(int ell, std::uint64_t seed,
                                         std::int64_t message_range, std::int64_t update_range);

// ---- Countable case: natural-number labels --------------------------------

// tau(a) = p_1^{a_1} * ... * p_l^{a_l} with p_k the k-th prime.
mpz_class prime_power_pairing(std::span<const mpz_class> tuple, std::size_t max_bits);

// h(a) = (n^{l-1} + 1)^{tau(a)}. Throws LimitError when the result would
// need more than max_bits bits; demanded() then holds the bit estimate.
mpz_class walk_tuple_code(std::size_t n, int ell, std::span<const mpz_class> tuple,
                          std::size_t max_bits);

struct CountableLimits {
  std::size_t max_bits = std::size_t{1} << 24;
};

// Message h, update (a, b) -> b, exact big integers. Round-t partitions are
// equivalent to W[l] round t on n-vertex graphs while values fit the cap.
WalkMpnn<mpz_class> countable_simulator(std::size_t n, int ell, CountableLimits limits = {});

// Same construction with every natural number phi(S) represented by an
// interned id: the message is the one-hot count vector of the walk's tuple
// (the base-(n^{l-1}+1) digit of h) and the update interns the summed digit
// vector. Ids are in bijection with the big-integer values, so partitions
// agree round for round, with bounded memory.
WalkMpnn<std::uint64_t, TupleCounts> interned_countable_simulator(std::size_t n, int ell);

// ---- Uncountable case: real vector labels ---------------------------------

// All alpha in {0..m}^a with |alpha| <= m, ordered by total degree, then
// lexicographically descending within a degree (x1^2, x1 x2, x2^2, ...).
std::vector<std::vector<unsigned>> bounded_multi_indices(std::size_t a, std::size_t m);

// u(X) = (p_alpha(X) : |alpha| <= m) for the m rows of X, each of dimension
// a, in bounded_multi_indices order. Length C(m+a, a).
RationalVector powersum_encoder(std::span<const RationalVector> rows);

// s_t = C(n^{l-1} + l*s_prev, l*s_prev), exact.
mpz_class feature_dim(std::size_t n, int ell, std::size_t s_prev);

struct UncountableLimits {
  std::size_t max_feature_dim = 100000;
};

// Message emits every monomial (x_1, ..., x_l)^alpha with alpha in
// bounded_multi_indices(l * s_{t-1}, n^{l-1}); update (x, y) -> y. Rounds
// whose s_t exceeds the cap throw LimitError carrying that s_t.
WalkMpnn<RationalVector> uncountable_simulator(std::size_t n, int ell, std::size_t s0,
                                               UncountableLimits limits = {});

}  // namespace walkref
