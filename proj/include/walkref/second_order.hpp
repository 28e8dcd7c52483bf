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
#include <span>
#include <vector>

#include <gmpxx.h>

#include "walkref/graph.hpp"
#include "walkref/walk_mpnn.hpp"

namespace walkref {

// Dense tensor of exact rationals, row-major over shape().
class RationalTensor {
 public:
  RationalTensor() = default;
  explicit RationalTensor(std::vector<std::size_t> shape);

  const std::vector<std::size_t>& shape() const { return shape_; }
  std::size_t rank() const { return shape_.size(); }
  std::size_t size() const { return data_.size(); }

  // Rank-2 access.
  mpq_class& operator()(std::size_t i, std::size_t j) { return data_[i * shape_[1] + j]; }
  const mpq_class& operator()(std::size_t i, std::size_t j) const { return data_[i * shape_[1] + j]; }
  // Rank-3 access.
  mpq_class& operator()(std::size_t i, std::size_t j, std::size_t k) { return data_[offset(i, j, k)]; }
  const mpq_class& operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return data_[offset(i, j, k)];
  }
  std::span<mpq_class> data() { return data_; }
  std::span<const mpq_class> data() const { return data_; }

  // For an (n, n, s) tensor: the label vector stored at pair (i, j).
  RationalVector label(std::size_t i, std::size_t j) const;

  bool operator==(const RationalTensor&) const = default;

 private:
  std::size_t offset(std::size_t i, std::size_t j, std::size_t k) const {
    return (i * shape_[1] + j) * shape_[2] + k;
  }

  std::vector<std::size_t> shape_;
  std::vector<mpq_class> data_;
};

struct LayerWeights {
  RationalTensor weights;  // (s_prev, s_prev, s_next)
  mpq_class threshold;     // q, strictly between 0 and 1 for synthesized layers
};

// A_next[i,j,s] = ReLU(sum_k sum_{c,d} A[i,k,c] A[k,j,d] W[c,d,s] - q).
RationalTensor layer_forward(const RationalTensor& a_prev, const LayerWeights& w);

// Everything the weight construction derives on the way to (W, q).
struct LayerSynthesis {
  LayerWeights layer;
  std::vector<RationalVector> unique_labels;  // first-occurrence order
  RationalTensor right_inverse;               // V: (s_prev, c), unique_labels * V = Id
  mpz_class max_count;                        // largest entry of the count tensor C
  mpz_class max_digit;                        // largest entry of D
  std::vector<mpz_class> count_radix;         // M_d = (max_count + 1)^d
  std::vector<mpz_class> digit_radix;         // N_c = (max_digit + 1)^c
  std::vector<mpz_class> codes;               // unique values of E, descending
  std::vector<mpz_class> code_matrix;         // E, row-major n*n
};

// Builds W and q so that layer_forward(a_prev, ...) refines a_prev exactly
// like one 2-WL round and stays label-independent. Throws
// LabelDependenceError when a_prev's distinct labels are linearly dependent.
LayerSynthesis synthesize_layer_detailed(const RationalTensor& a_prev);
LayerWeights synthesize_layer(const RationalTensor& a_prev);

// (n, n, k) tensor with the standard basis vector e_id at every pair.
RationalTensor hot_one_encode(const Labelling& l);

// True iff the distinct label vectors are linearly independent; exact rank by
// fraction-free elimination.
bool check_label_independence(const RationalTensor& a);

// Exact rank of integer-scaled rows via Bareiss elimination.
std::size_t rational_rank(std::span<const RationalVector> rows);

Labelling partition_of(const RationalTensor& a);

// The layer-independent threshold lower bound (m - 1) / m with
// m = n^((n^2)^(n^2)). Throws LimitError if m needs more than max_bits bits.
mpq_class uniform_threshold_bound(std::size_t n, std::size_t max_bits = std::size_t{1} << 20);

// The same layer as a 2-walk MPNN over rational vectors. Each of the n
// messages a pair receives subtracts q/n, so the aggregate carries exactly -q,
// and the update applies ReLU.
WalkMpnn<RationalVector> layer_as_walk_mpnn(const LayerWeights& w, std::size_t n);

FeatureMatrix<RationalVector> to_feature_matrix(const RationalTensor& a);
RationalTensor from_feature_matrix(const FeatureMatrix<RationalVector>& m);

}  // namespace walkref
