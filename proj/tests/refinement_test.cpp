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

#include <cstdlib>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "json.hpp"
#include "walkref/errors.hpp"
#include "walkref/harness.hpp"
#include "walkref/refinement.hpp"

namespace walkref {
namespace {

LabelledGraph uniform(std::size_t n) { return gen_named("K" + std::to_string(n)); }

TEST(Wl2Step, UniformCompleteGraphHasTwoClasses) {
  for (std::size_t n = 2; n <= 6; ++n) {
    const auto g = uniform(n);
    const auto once = wl2_step(g.labels);
    EXPECT_EQ(once.class_count(), 2u);
    EXPECT_TRUE(equivalent(wl2_step(once), once));
  }
}

TEST(Wl2Step, SingleVertexIsStable) {
  const auto trace = run_to_stable(uniform(1), Procedure::wl2());
  EXPECT_EQ(trace.stable_round, 0u);
  EXPECT_EQ(trace.stable().class_count(), 1u);
}

TEST(Wl2Step, RequiresLoopDistinctInput) {
  const auto raw = Labelling::from_keys(2, {"x", "x", "x", "x"});
  EXPECT_THROW(wl2_step(raw), std::invalid_argument);
}

TEST(Wl2Step, SeparatesC6FromTwoTrianglesAtRoundOne) {
  const auto a = gen_named("C6");
  const auto b = gen_named("C3+C3");
  EXPECT_EQ(readout_multiset(a.labels), readout_multiset(b.labels));
  EXPECT_FALSE(readout_multiset(wl2_step(a.labels)) == readout_multiset(wl2_step(b.labels)));
}

TEST(WalkStep, EllTwoEqualsWl2) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto g = gen_random_labelled(2 + seed % 5, 1 + seed % 3, seed);
    EXPECT_TRUE(equivalent(walk_step(g.labels, 2), wl2_step(g.labels)));
    // Identical keys, not only equivalent partitions.
    EXPECT_EQ(readout_multiset(walk_step(g.labels, 2)), readout_multiset(wl2_step(g.labels)));
  }
}

TEST(WalkStep, UniformThreeVerticesEllThree) {
  EXPECT_EQ(walk_step(uniform(3).labels, 3).class_count(), 2u);
}

TEST(WalkStep, RejectsShortWalks) {
  EXPECT_THROW(walk_step(uniform(3).labels, 1), std::invalid_argument);
  EXPECT_THROW(walk_step(uniform(3).labels, 0), std::invalid_argument);
}

TEST(WalkStep, RelatesToTwoWl2Steps) {
  // One W[3] step is refined by two WL2 steps and refines one WL2 step.
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto g = gen_random_labelled(6, 3, seed);
    const auto w3 = walk_step(g.labels, 3);
    const auto once = wl2_step(g.labels);
    EXPECT_TRUE(refines(wl2_step(once), w3)) << seed;
    EXPECT_TRUE(refines(w3, once)) << seed;
  }
}

TEST(WalkStep, StrategiesAgree) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto g = gen_random_labelled(2 + seed % 5, 1 + seed % 3, seed + 1000);
    for (int ell = 2; ell <= 5; ++ell) {
      EXPECT_TRUE(equivalent(walk_step(g.labels, ell, WalkStrategy::kEnumerate),
                             walk_step(g.labels, ell, WalkStrategy::kPrefixCounts)))
          << "seed " << seed << " ell " << ell;
    }
  }
}

TEST(WalkStep, WideLabelAlphabetsStillAgree) {
  // Many classes push tuple packing past 64 bits for long walks.
  const auto g = gen_random_labelled(7, 40, 99);
  const auto once = wl2_step(g.labels);
  EXPECT_GT(once.class_count(), 40u);
  for (int ell : {2, 4, 6}) {
    const auto a = walk_step(once, ell, WalkStrategy::kEnumerate);
    const auto b = walk_step(once, ell, WalkStrategy::kPrefixCounts);
    EXPECT_TRUE(equivalent(a, b));
    EXPECT_EQ(pair_partition(a), brute_force_partition(make_graph(once), Procedure::walk(ell), 1)) << ell;
  }
}

TEST(RunToStable, UniformK4) {
  const auto trace = run_to_stable(uniform(4), Procedure::wl2());
  EXPECT_EQ(trace.stable_round, 0u);
  EXPECT_EQ(trace.rounds.size(), 2u);
  EXPECT_EQ(trace.class_counts, (std::vector<std::size_t>{2, 2}));
}

TEST(RunToStable, C6Trace) {
  for (const auto& proc : {Procedure::wl2(), Procedure::walk(3)}) {
    const auto trace = run_to_stable(gen_named("C6"), proc);
    EXPECT_EQ(trace.stable_round, 1u);
    EXPECT_EQ(trace.class_counts, (std::vector<std::size_t>{3, 4, 4}));
  }
}

TEST(RunToStable, PathRoundCounts) {
  EXPECT_EQ(run_to_stable(gen_named("path6"), Procedure::wl2()).stable_round, 2u);
  EXPECT_EQ(run_to_stable(gen_named("path6"), Procedure::walk(3)).stable_round, 1u);
}

TEST(RunToStable, RerunOnFixpointIsStableImmediately) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto g = gen_random_labelled(5, 2, seed);
    const auto trace = run_to_stable(g, Procedure::wl2());
    const auto again = run_to_stable(make_graph(trace.stable()), Procedure::wl2());
    EXPECT_EQ(again.stable_round, 0u);
  }
}

TEST(RunToStable, StronglyRegularPairShareReadouts) {
  const auto a = run_to_stable(gen_named("shrikhande"), Procedure::wl2());
  const auto b = run_to_stable(gen_named("rook4x4"), Procedure::wl2());
  EXPECT_EQ(readout_multiset(a.stable()), readout_multiset(b.stable()));
  EXPECT_EQ(readout_multiset(a.rounds.back()), readout_multiset(b.rounds.back()));
}

TEST(RunToStable, BudgetExhaustionThrows) {
  EXPECT_THROW(run_to_stable(gen_named("path6"), Procedure::wl2(), 1), NotStableError);
  EXPECT_NO_THROW(run_to_stable(gen_named("path6"), Procedure::wl2(), 3));
}

TEST(RunToStable, RequiresNormalizedGraph) {
  const auto raw = make_graph(Labelling::from_keys(2, {"x", "x", "x", "x"}));
  EXPECT_THROW(run_to_stable(raw, Procedure::wl2()), std::invalid_argument);
}

TEST(RunToStable, AtRoundClampsPastTheFixpoint) {
  const auto trace = run_to_stable(gen_named("C6"), Procedure::wl2());
  EXPECT_TRUE(equivalent(trace.at_round(50), trace.stable()));
}

TEST(RunToStable, SameResultForAnyWorkerCount) {
  const auto g = gen_random_labelled(6, 3, 77);
  ::setenv("WALKREF_THREADS", "1", 1);
  const auto one = run_to_stable(g, Procedure::walk(3));
  ::setenv("WALKREF_THREADS", "4", 1);
  const auto four = run_to_stable(g, Procedure::walk(3));
  ::unsetenv("WALKREF_THREADS");
  ASSERT_EQ(one.rounds.size(), four.rounds.size());
  for (std::size_t t = 0; t < one.rounds.size(); ++t) {
    EXPECT_EQ(std::vector<LabelId>(one.rounds[t].cells().begin(), one.rounds[t].cells().end()),
              std::vector<LabelId>(four.rounds[t].cells().begin(), four.rounds[t].cells().end()));
  }
}

TEST(CeilLog2, Values) {
  EXPECT_EQ(ceil_log2(2), 1);
  EXPECT_EQ(ceil_log2(3), 2);
  EXPECT_EQ(ceil_log2(4), 2);
  EXPECT_EQ(ceil_log2(5), 3);
  EXPECT_EQ(ceil_log2(8), 3);
  EXPECT_EQ(ceil_log2(9), 4);
}

TEST(TraceExport, OneRecordPerRound) {
  const auto trace = run_to_stable(gen_named("C6"), Procedure::wl2());
  const auto text = trace_to_jsonl(trace, true);
  std::size_t lines = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    const auto end = text.find('\n', start);
    const auto record = nlohmann::json::parse(text.substr(start, end - start));
    EXPECT_EQ(record["t"], lines);
    EXPECT_EQ(record["class_count"], trace.class_counts[lines]);
    EXPECT_EQ(record["matrix"].size(), 6u);
    ++lines;
    start = end + 1;
  }
  EXPECT_EQ(lines, trace.rounds.size());
  EXPECT_EQ(trace_to_jsonl(trace, false).find("matrix"), std::string::npos);
}

TEST(Mutation, OffsetChangesWalkLength) {
  testing::set_walk_length_offset(1);
  const auto mutated = walk_step(gen_named("path5").labels, 2);
  testing::set_walk_length_offset(0);
  EXPECT_TRUE(equivalent(mutated, walk_step(gen_named("path5").labels, 3)));
  EXPECT_FALSE(equivalent(mutated, wl2_step(gen_named("path5").labels)));
}

}  // namespace
}  // namespace walkref
