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
#include <string>
#include <vector>

#include "walkref/graph.hpp"

namespace walkref {

enum class ProcedureKind { kWl2, kWalk };

struct Procedure {
  ProcedureKind kind = ProcedureKind::kWl2;
  int ell = 2;  // walk length; always 2 for kWl2

  static Procedure wl2() { return {ProcedureKind::kWl2, 2}; }
  static Procedure walk(int ell) { return {ProcedureKind::kWalk, ell}; }
  std::string name() const;
};

// How walk_step builds each pair's multiset of walk label tuples.
enum class WalkStrategy {
  kEnumerate,     // every (i1..i_{l-1}) in [n]^{l-1}, then sort
  kPrefixCounts,  // left-to-right counts of label-tuple prefixes per endpoint
};

// One 2-WL round using the loop-distinct simplification: (i,j) gets the
// multiset {(prev(i,k), prev(k,j)) : k}. Requires a loop-distinct input.
Labelling wl2_step(const Labelling& prev);

// One l-walk round: (i,j) gets the multiset of label tuples along all walks
// i -> i1 -> ... -> i_{l-1} -> j. Both strategies give identical labellings,
// and ell == 2 gives exactly wl2_step.
Labelling walk_step(const Labelling& prev, int ell,
                    WalkStrategy strategy = WalkStrategy::kEnumerate);

Labelling refinement_step(const Labelling& prev, const Procedure& proc,
                          WalkStrategy strategy = WalkStrategy::kEnumerate);

struct RefinementTrace {
  Procedure procedure;
  // rounds[t] is the labelling after t rounds; the last entry is the first
  // repeated (equivalent) round, so rounds.size() == stable_round + 2.
  std::vector<Labelling> rounds;
  std::size_t stable_round = 0;
  std::vector<std::size_t> class_counts;

  const Labelling& stable() const { return rounds[stable_round]; }
  // Labelling after t rounds for any t; past the fixpoint it stays equivalent
  // to the stable labelling.
  const Labelling& at_round(std::size_t t) const;
};

// n*n + 1 rounds always suffice: every non-final round adds a class.
std::size_t default_round_budget(std::size_t n);

// Iterates until rounds[t+1] ≡ rounds[t]. max_rounds == 0 selects the
// default budget. Throws NotStableError if the budget is exhausted.
RefinementTrace run_to_stable(const LabelledGraph& g, const Procedure& proc,
                              std::size_t max_rounds = 0,
                              WalkStrategy strategy = WalkStrategy::kEnumerate);

// ceil(log2(ell)) for ell >= 1.
int ceil_log2(int ell);

// One JSON object per line: {"class_count", "fingerprint", "t"} and, when
// include_matrix is set, "matrix" with the row-major ids.
std::string trace_to_jsonl(const RefinementTrace& trace, bool include_matrix);

namespace testing {
// Adds offset to the walk length used by walk_step. Mutation hook for
// checking that the verification suites detect a broken step; keep at 0.
void set_walk_length_offset(int offset);
int walk_length_offset();
}  // namespace testing

}  // namespace walkref
