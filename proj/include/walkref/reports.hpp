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
#include <string>
#include <vector>

#include "json.hpp"
#include "walkref/graph.hpp"
#include "walkref/refinement.hpp"

namespace walkref {

struct Verdict {
  std::string procedure;
  bool distinguished = false;
  std::string reason;       // "size", "readout" or empty
  std::size_t round = 0;    // first round whose readouts differ
  std::size_t n1 = 0, n2 = 0;
  std::size_t stable1 = 0, stable2 = 0;
  std::string fingerprint1, fingerprint2;  // digests of the last compared round

  nlohmann::json to_json() const;
  std::string to_text() const;
};

// Runs proc on both graphs to stabilization and compares readouts round by
// round, extending the shorter trace with its stable labelling.
Verdict compare_graphs(const LabelledGraph& a, const LabelledGraph& b, const Procedure& proc,
                       std::size_t max_rounds = 0);

// Countable simulator against W[ell], per round up to the fixpoint. Rounds
// whose exact big-integer codes exceed max_bits are covered only by the
// interned mode.
nlohmann::json mpnn_sim_report(const LabelledGraph& g, int ell, std::size_t max_bits);

// Synthesize + forward per round against WL2.
nlohmann::json gnn_sim_report(const LabelledGraph& g);

// JSON graph document for a labelling; loading it back gives an equivalent
// normalized graph.
nlohmann::json graph_to_json(const Labelling& l);

struct VerifyOptions {
  std::uint64_t seed = 0;
  std::vector<std::string> only;  // empty runs every suite
  std::size_t corpus_size = 100;
};

struct SuiteResult {
  std::string name;
  std::size_t checks = 0;
  std::size_t violations = 0;
  double seconds = 0;
  nlohmann::json counterexample;  // first violation, null when none
  nlohmann::json details;         // suite-specific tallies

  bool passed() const { return violations == 0; }
};

std::vector<std::string> suite_names();

// Throws InputError for an unknown suite name in options.only.
std::vector<SuiteResult> run_verify(const VerifyOptions& options);

nlohmann::json verify_to_json(const std::vector<SuiteResult>& results);

}  // namespace walkref
