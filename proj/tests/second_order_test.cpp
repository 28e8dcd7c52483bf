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

#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "walkref/errors.hpp"
#include "walkref/harness.hpp"
#include "walkref/refinement.hpp"
#include "walkref/second_order.hpp"

namespace walkref {
namespace {

RationalTensor tensor_from(std::size_t n, const std::vector<RationalVector>& cells) {
  const std::size_t s = cells.front().size();
  RationalTensor t({n, n, s});
  for (std::size_t c = 0; c < n * n; ++c) {
    for (std::size_t k = 0; k < s; ++k) t(c / n, c % n, k) = cells[c][k];
  }
  return t;
}

// Runs synthesize + forward for every round up to the WL2 fixpoint and checks
// each against the refinement module.
void expect_simulates_wl2(const LabelledGraph& g, const std::string& what) {
  const auto trace = run_to_stable(g, Procedure::wl2());
  auto a = hot_one_encode(g.labels);
  ASSERT_TRUE(check_label_independence(a));
  for (std::size_t t = 1; t <= trace.stable_round + 1; ++t) {
    const auto synth = synthesize_layer_detailed(a);
    const auto& q = synth.layer.threshold;
    EXPECT_GT(q, 0) << what;
    EXPECT_LT(q, 1) << what;
    a = layer_forward(a, synth.layer);
    EXPECT_TRUE(equivalent(partition_of(a), trace.at_round(t))) << what << " round " << t;
    EXPECT_TRUE(check_label_independence(a)) << what << " round " << t;
    EXPECT_EQ(a.shape()[2], trace.at_round(t).class_count()) << what;
  }
}

TEST(LayerForward, ZeroWeightsGiveZero) {
  const auto a = hot_one_encode(gen_named("K3").labels);
  LayerWeights w{RationalTensor({2, 2, 3}), mpq_class(1, 2)};
  const auto out = layer_forward(a, w);
  for (const auto& x : out.data()) EXPECT_EQ(x, 0);
}

TEST(LayerForward, SingleCell) {
  RationalTensor a({1, 1, 1});
  a(0, 0, 0) = mpq_class(3, 2);
  RationalTensor w({1, 1, 1});
  w(0, 0, 0) = mpq_class(-2, 7);
  EXPECT_EQ(layer_forward(a, {w, 0})(0, 0, 0), 0);
  w(0, 0, 0) = mpq_class(2, 7);
  EXPECT_EQ(layer_forward(a, {w, 0})(0, 0, 0), mpq_class(9, 14));
  EXPECT_EQ(layer_forward(a, {w, mpq_class(1, 14)})(0, 0, 0), mpq_class(4, 7));
}

TEST(LayerForward, MatchesNaiveContraction) {
  const std::size_t n = 3, s = 2, s_next = 2;
  RationalTensor a({n, n, s});
  RationalTensor w({s, s, s_next});
  int seed = 1;
  for (auto& x : a.data()) x = mpq_class((seed = seed * 7 % 11) - 5, 1 + seed % 3);
  for (auto& x : w.data()) x = mpq_class((seed = seed * 5 % 13) - 6, 2 + seed % 4);
  const mpq_class q(1, 3);
  const auto out = layer_forward(a, {w, q});
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t t = 0; t < s_next; ++t) {
        mpq_class sum = 0;
        for (std::size_t k = 0; k < n; ++k) {
          for (std::size_t c = 0; c < s; ++c) {
            for (std::size_t d = 0; d < s; ++d) sum += a(i, k, c) * a(k, j, d) * w(c, d, t);
          }
        }
        sum -= q;
        EXPECT_EQ(out(i, j, t), sgn(sum) > 0 ? sum : mpq_class(0));
      }
    }
  }
}

TEST(LayerForward, ShapeMismatchThrows) {
  const auto a = hot_one_encode(gen_named("K3").labels);
  EXPECT_THROW(layer_forward(a, {RationalTensor({3, 2, 1}), 0}), DimensionError);
  EXPECT_THROW(layer_forward(RationalTensor({2, 3, 1}), {RationalTensor({1, 1, 1}), 0}), DimensionError);
}

TEST(HotOne, BasisVectors) {
  const auto l = gen_named("K3").labels;
  const auto a = hot_one_encode(l);
  EXPECT_EQ(a.shape(), (std::vector<std::size_t>{3, 3, 2}));
  EXPECT_NE(a.label(0, 0), a.label(0, 1));
  EXPECT_EQ(a.label(0, 1), a.label(2, 1));
  EXPECT_TRUE(equivalent(partition_of(a), l));
  EXPECT_TRUE(check_label_independence(a));
  const auto path = gen_named("path5").labels;
  EXPECT_TRUE(equivalent(partition_of(hot_one_encode(path)), path));
}

TEST(LabelIndependence, DependentLabelsDetected) {
  const auto a = tensor_from(2, {{1, 0}, {2, 0}, {2, 0}, {1, 0}});
  EXPECT_FALSE(check_label_independence(a));
  EXPECT_THROW(synthesize_layer(a), LabelDependenceError);
  const auto b = tensor_from(2, {{1, 0}, {1, 1}, {1, 1}, {1, 0}});
  EXPECT_TRUE(check_label_independence(b));
}

TEST(RationalRank, Examples) {
  const std::vector<RationalVector> rows = {{1, 2, 3}, {2, 4, 6}, {0, 1, mpq_class(1, 2)}};
  EXPECT_EQ(rational_rank(rows), 2u);
  const std::vector<RationalVector> full = {{mpq_class(1, 3), 0, 1}, {0, 1, 1}, {1, 1, 0}};
  EXPECT_EQ(rational_rank(full), 3u);
  const std::vector<RationalVector> tall = {{1, 0}, {0, 1}, {1, 1}, {2, 3}};
  EXPECT_EQ(rational_rank(tall), 2u);
  EXPECT_EQ(rational_rank(std::vector<RationalVector>{}), 0u);
}

TEST(Synthesis, UniformK2) {
  const auto g = gen_named("K2");
  const auto a = hot_one_encode(g.labels);
  ASSERT_EQ(a.shape()[2], 2u);
  const auto synth = synthesize_layer_detailed(a);
  const auto out = layer_forward(a, synth.layer);
  EXPECT_EQ(partition_of(out).class_count(), 2u);
  EXPECT_TRUE(equivalent(partition_of(out), wl2_step(g.labels)));
  expect_simulates_wl2(g, "K2");
}

TEST(Synthesis, UniformK3RoundOne) {
  const auto g = gen_named("K3");
  const auto out = layer_forward(hot_one_encode(g.labels), synthesize_layer(hot_one_encode(g.labels)));
  EXPECT_TRUE(equivalent(partition_of(out), wl2_step(g.labels)));
}

TEST(Synthesis, ProofObjectsAreConsistent) {
  const auto g = gen_named("C6");
  const auto a = hot_one_encode(g.labels);
  const auto synth = synthesize_layer_detailed(a);
  EXPECT_EQ(synth.unique_labels.size(), 3u);
  // Codes are distinct, descending, and give q as their largest ratio.
  for (std::size_t t = 0; t + 1 < synth.codes.size(); ++t) EXPECT_GT(synth.codes[t], synth.codes[t + 1]);
  mpq_class best = 0;
  for (std::size_t t = 0; t + 1 < synth.codes.size(); ++t) {
    mpq_class r(synth.codes[t + 1], synth.codes[t]);
    r.canonicalize();
    best = std::max(best, r);
  }
  EXPECT_EQ(synth.layer.threshold, best);
  // The output labels are triangular: 1 - q on the code's own channel, zero
  // for larger codes.
  const auto out = layer_forward(a, synth.layer);
  for (std::size_t cell = 0; cell < 36; ++cell) {
    const auto& e = synth.code_matrix[cell];
    for (std::size_t s = 0; s < synth.codes.size(); ++s) {
      const auto& value = out(cell / 6, cell % 6, s);
      if (synth.codes[s] == e) EXPECT_EQ(value, 1 - synth.layer.threshold);
      if (synth.codes[s] > e) EXPECT_EQ(value, 0);
      if (synth.codes[s] < e) EXPECT_GT(value, 0);
    }
  }
  EXPECT_LE(synth.max_count, 6);
}

TEST(Synthesis, SingleClassFallsBackToHalf) {
  const auto g = gen_named("K1");
  const auto synth = synthesize_layer_detailed(hot_one_encode(g.labels));
  EXPECT_EQ(synth.codes.size(), 1u);
  EXPECT_EQ(synth.layer.threshold, mpq_class(1, 2));
  expect_simulates_wl2(g, "K1");
}

TEST(Synthesis, NamedGraphsEveryRound) {
  for (const char* name : {"C6", "C3+C3", "K4", "path5", "path6"}) expect_simulates_wl2(gen_named(name), name);
}

TEST(Synthesis, RandomGraphsEveryRound) {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    expect_simulates_wl2(gen_random_labelled(3 + seed % 2, 1 + seed % 3, seed), "seed " + std::to_string(seed));
  }
}

TEST(Synthesis, NonHotOneIndependentInput) {
  // Labels (1,0) and (1,1) are independent but not one-hot.
  const auto a = tensor_from(2, {{1, 0}, {1, 1}, {1, 1}, {1, 0}});
  const auto out = layer_forward(a, synthesize_layer(a));
  const auto expected = wl2_step(normalize(make_graph(partition_of(a))).labels);
  EXPECT_TRUE(equivalent(partition_of(out), expected));
  EXPECT_TRUE(check_label_independence(out));
}

TEST(WalkMpnnCast, BitIdenticalToDirectForward) {
  for (const char* name : {"C6", "path5", "K3"}) {
    const auto g = gen_named(name);
    auto a = hot_one_encode(g.labels);
    for (int round = 0; round < 2; ++round) {
      const auto w = synthesize_layer(a);
      const auto direct = layer_forward(a, w);
      const auto cast = from_feature_matrix(mpnn_step(layer_as_walk_mpnn(w, g.n()), to_feature_matrix(a)));
      EXPECT_EQ(cast, direct) << name;
      a = direct;
    }
  }
}

TEST(UniformThreshold, SmallValuesAndCap) {
  EXPECT_EQ(uniform_threshold_bound(1), 0);
  const auto q = uniform_threshold_bound(2);
  mpz_class m;
  mpz_ui_pow_ui(m.get_mpz_t(), 2, 256);
  EXPECT_EQ(q, mpq_class(m - 1, m));
  EXPECT_THROW(uniform_threshold_bound(3), LimitError);
}

TEST(UniformThreshold, WorksInPlaceOfPerRoundQ) {
  const auto g = gen_named("K2");
  auto a = hot_one_encode(g.labels);
  auto w = synthesize_layer(a);
  const auto uniform = uniform_threshold_bound(2);
  EXPECT_GE(uniform, w.threshold);
  w.threshold = uniform;
  EXPECT_TRUE(equivalent(partition_of(layer_forward(a, w)), wl2_step(g.labels)));
}

}  // namespace
}  // namespace walkref
