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

#include "walkref/reports.hpp"

#include <algorithm>

#include "walkref/errors.hpp"
#include "walkref/second_order.hpp"
#include "walkref/walk_mpnn.hpp"

namespace walkref {

using nlohmann::json;

json Verdict::to_json() const {
  json out = {
      {"procedure", procedure},
      {"verdict", distinguished ? "distinguished" : "indistinguishable"},
      {"n", {n1, n2}},
  };
  if (distinguished) {
    out["reason"] = reason;
    if (reason != "size") out["round"] = round;
  }
  if (reason != "size") {
    out["stable_rounds"] = {stable1, stable2};
    out["fingerprints"] = {fingerprint1, fingerprint2};
  }
  return out;
}

std::string Verdict::to_text() const {
  if (reason == "size") return "distinguished: size";
  if (distinguished) return "distinguished at round " + std::to_string(round);
  return "indistinguishable (stable at rounds " + std::to_string(stable1) + ", " +
         std::to_string(stable2) + ")";
}

Verdict compare_graphs(const LabelledGraph& a, const LabelledGraph& b, const Procedure& proc,
                       std::size_t max_rounds) {
  Verdict v;
  v.procedure = proc.name();
  v.n1 = a.n();
  v.n2 = b.n();
  if (a.n() != b.n()) {
    v.distinguished = true;
    v.reason = "size";
    return v;
  }
  const auto ta = run_to_stable(a, proc, max_rounds);
  const auto tb = run_to_stable(b, proc, max_rounds);
  v.stable1 = ta.stable_round;
  v.stable2 = tb.stable_round;
  // Ids are ranks of canonical keys, so while readouts agree the next round's
  // keys are comparable across the two graphs.
  const std::size_t last = std::max(ta.stable_round, tb.stable_round) + 1;
  for (std::size_t t = 0; t <= last; ++t) {
    const auto fa = readout_multiset(ta.at_round(t));
    const auto fb = readout_multiset(tb.at_round(t));
    v.fingerprint1 = fa.digest();
    v.fingerprint2 = fb.digest();
    if (!(fa == fb)) {
      v.distinguished = true;
      v.reason = "readout";
      v.round = t;
      break;
    }
  }
  return v;
}

json mpnn_sim_report(const LabelledGraph& g, int ell, std::size_t max_bits) {
  const auto trace = run_to_stable(g, Procedure::walk(ell));
  const std::size_t last = trace.stable_round + 1;
  const std::size_t n = g.n();

  auto big = big_integer_features(g.labels);
  const auto big_mpnn = countable_simulator(n, ell, CountableLimits{max_bits});
  bool big_alive = true;
  auto interned = natural_features(g.labels);
  const auto interned_mpnn = interned_countable_simulator(n, ell);

  json rounds = json::array();
  bool all_equivalent = true;
  bool all_natural = true;
  for (std::size_t t = 1; t <= last; ++t) {
    interned = mpnn_step(interned_mpnn, interned);
    const auto reference = trace.at_round(t);
    const auto interned_partition = partition_of(interned);
    json row = {
        {"t", t},
        {"walk_classes", reference.class_count()},
        {"interned_classes", interned_partition.class_count()},
        {"interned_equivalent", equivalent(interned_partition, reference)},
    };
    all_equivalent = all_equivalent && row["interned_equivalent"].get<bool>();
    if (big_alive) {
      try {
        big = mpnn_step(big_mpnn, big);
        std::size_t bits = 0;
        bool natural = true;
        for (const auto& x : big.cells) {
          natural = natural && sgn(x) >= 0;
          bits = std::max(bits, mpz_sizeinbase(x.get_mpz_t(), 2));
        }
        const bool eq = equivalent(partition_of(big), reference);
        row["big_integer"] = {{"equivalent", eq}, {"natural", natural}, {"max_bits", bits}};
        all_equivalent = all_equivalent && eq;
        all_natural = all_natural && natural;
      } catch (const LimitError& e) {
        big_alive = false;
        row["big_integer"] = {{"skipped", "bit cap"}, {"demanded_bits", e.demanded()}};
      }
    } else {
      row["big_integer"] = {{"skipped", "bit cap"}};
    }
    rounds.push_back(std::move(row));
  }
  return {
      {"procedure", trace.procedure.name()},
      {"n", n},
      {"stable_round", trace.stable_round},
      {"max_bits", max_bits},
      {"rounds", std::move(rounds)},
      {"all_equivalent", all_equivalent},
      {"all_natural", all_natural},
  };
}

json gnn_sim_report(const LabelledGraph& g) {
  const auto trace = run_to_stable(g, Procedure::wl2());
  const std::size_t last = trace.stable_round + 1;
  auto a = hot_one_encode(g.labels);
  json rounds = json::array();
  bool all_ok = true;
  for (std::size_t t = 1; t <= last; ++t) {
    const auto synth = synthesize_layer_detailed(a);
    auto next = layer_forward(a, synth.layer);
    const auto via_mpnn =
        from_feature_matrix(mpnn_step(layer_as_walk_mpnn(synth.layer, g.n()), to_feature_matrix(a)));
    const auto reference = trace.at_round(t);
    const auto partition = partition_of(next);
    json row = {
        {"t", t},
        {"wl2_classes", reference.class_count()},
        {"classes", partition.class_count()},
        {"equivalent", equivalent(partition, reference)},
        {"label_independent", check_label_independence(next)},
        {"walk_mpnn_identical", via_mpnn == next},
        {"feature_dim", next.shape()[2]},
        {"q", synth.layer.threshold.get_str()},
    };
    all_ok = all_ok && row["equivalent"].get<bool>() && row["label_independent"].get<bool>() &&
             row["walk_mpnn_identical"].get<bool>();
    rounds.push_back(std::move(row));
    a = std::move(next);
  }
  return {
      {"procedure", "wl2"},
      {"n", g.n()},
      {"stable_round", trace.stable_round},
      {"rounds", std::move(rounds)},
      {"all_passed", all_ok},
  };
}

json graph_to_json(const Labelling& l) {
  json edges = json::array();
  for (std::size_t i = 0; i < l.n(); ++i) {
    for (std::size_t j = 0; j < l.n(); ++j) edges.push_back({i, j, "c" + std::to_string(l.at(i, j))});
  }
  return {{"n", l.n()}, {"edges", std::move(edges)}};
}

}  // namespace walkref
