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

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <random>
#include <set>

#include "walkref/errors.hpp"
#include "walkref/harness.hpp"
#include "walkref/parallel.hpp"
#include "walkref/reports.hpp"
#include "walkref/second_order.hpp"
#include "walkref/walk_mpnn.hpp"

namespace walkref {
namespace {

using nlohmann::json;

constexpr int kMaxEll = 4;

struct Case {
  std::string name;
  LabelledGraph graph;
  // traces[0] is WL2, traces[ell - 1] is W[ell] for ell = 2..kMaxEll.
  std::vector<RefinementTrace> traces;

  const RefinementTrace& wl2() const { return traces[0]; }
  const RefinementTrace& walk(int ell) const { return traces[static_cast<std::size_t>(ell - 1)]; }
};

class Context {
 public:
  explicit Context(const VerifyOptions& options) : options_(options) {}

  const VerifyOptions& options() const { return options_; }

  // Random members first, then the named graphs. Traces are computed once.
  const std::vector<Case>& corpus() {
    if (corpus_) return *corpus_;
    std::vector<Case> cases;
    for (std::size_t k = 0; k < options_.corpus_size; ++k) {
      const auto family = random_corpus_member(k, options_.seed);
      cases.push_back({"random(n=" + std::to_string(family.n) + ",alphabet=" +
                           std::to_string(family.alphabet_size) + ",seed=" + std::to_string(family.seed) + ")",
                       build(family), {}});
    }
    for (const auto& name : corpus_named_graphs()) cases.push_back({name, gen_named(name), {}});
    parallel_for(cases.size(), [&](std::size_t c) {
      auto& item = cases[c];
      item.traces.push_back(run_to_stable(item.graph, Procedure::wl2()));
      for (int ell = 2; ell <= kMaxEll; ++ell) {
        item.traces.push_back(run_to_stable(item.graph, Procedure::walk(ell)));
      }
    });
    corpus_ = std::move(cases);
    return *corpus_;
  }

 private:
  VerifyOptions options_;
  std::optional<std::vector<Case>> corpus_;
};

json case_json(const std::string& name, const Labelling& l) {
  return {{"graph", name}, {"graph_json", graph_to_json(l)}};
}

// Records one check; the first failure becomes the counterexample.
void check(SuiteResult& r, bool ok, const std::function<json()>& describe) {
  ++r.checks;
  if (ok) return;
  if (r.violations++ == 0) r.counterexample = describe();
}

void dimension_formula(Context&, SuiteResult& r) {
  const struct {
    std::size_t n;
    int ell;
    std::size_t s_prev;
    const char* expected;
  } cases[] = {{10, 2, 1, "66"}, {10, 2, 66, "664226242466073"}, {1, 2, 1, "3"}, {3, 2, 1, "10"}};
  for (const auto& c : cases) {
    const auto got = feature_dim(c.n, c.ell, c.s_prev).get_str();
    check(r, got == c.expected, [&] {
      return json{{"n", c.n}, {"ell", c.ell}, {"s_prev", c.s_prev}, {"expected", c.expected}, {"got", got}};
    });
  }
}

void fixpoint_agreement(Context& ctx, SuiteResult& r) {
  for (const auto& c : ctx.corpus()) {
    for (int ell = 2; ell <= kMaxEll; ++ell) {
      check(r, equivalent(c.walk(ell).stable(), c.wl2().stable()), [&] {
        auto out = case_json(c.name, c.graph.labels);
        out["procedure"] = Procedure::walk(ell).name();
        out["detail"] = "stable labelling differs from the WL2 fixpoint";
        return out;
      });
    }
  }
}

void monotonicity(Context& ctx, SuiteResult& r) {
  for (const auto& c : ctx.corpus()) {
    for (const auto& trace : c.traces) {
      for (std::size_t t = 1; t < trace.rounds.size(); ++t) {
        const bool ok = refines(trace.rounds[t], trace.rounds[t - 1]) &&
                        trace.class_counts[t] >= trace.class_counts[t - 1];
        check(r, ok, [&] {
          auto out = case_json(c.name, c.graph.labels);
          out["procedure"] = trace.procedure.name();
          out["round"] = t;
          out["detail"] = "round t does not refine round t-1";
          return out;
        });
      }
    }
  }
}

std::size_t horizon(const Case& c) {
  std::size_t last = 0;
  for (const auto& trace : c.traces) last = std::max(last, trace.stable_round + 1);
  return last;
}

void cross_ell(Context& ctx, SuiteResult& r) {
  for (const auto& c : ctx.corpus()) {
    for (std::size_t t = 0; t <= horizon(c); ++t) {
      check(r, equivalent(c.walk(2).at_round(t), c.wl2().at_round(t)), [&] {
        auto out = case_json(c.name, c.graph.labels);
        out["round"] = t;
        out["detail"] = "walk2 and wl2 disagree";
        return out;
      });
      for (int ell = 2; ell <= kMaxEll; ++ell) {
        for (int k = 2; k < ell; ++k) {
          check(r, refines(c.walk(ell).at_round(t), c.walk(k).at_round(t)), [&] {
            auto out = case_json(c.name, c.graph.labels);
            out["round"] = t;
            out["detail"] = "W[" + std::to_string(ell) + "] does not refine W[" + std::to_string(k) + "]";
            return out;
          });
        }
      }
    }
  }
}

void speedup_bound(Context& ctx, SuiteResult& r) {
  for (const auto& c : ctx.corpus()) {
    for (int ell = 2; ell <= kMaxEll; ++ell) {
      const auto factor = static_cast<std::size_t>(ceil_log2(ell));
      for (std::size_t t = 0; t <= c.walk(ell).stable_round + 1; ++t) {
        check(r, refines(c.wl2().at_round(t * factor), c.walk(ell).at_round(t)), [&] {
          auto out = case_json(c.name, c.graph.labels);
          out["procedure"] = Procedure::walk(ell).name();
          out["round"] = t;
          out["detail"] = "WL2 after t*ceil(log2 ell) rounds does not refine W[ell] after t rounds";
          return out;
        });
      }
    }
  }
}

void round_counts(Context& ctx, SuiteResult& r) {
  json histogram = json::object();
  for (const auto& c : ctx.corpus()) {
    const auto s_wl2 = c.wl2().stable_round;
    for (int ell = 2; ell <= kMaxEll; ++ell) {
      const auto s_walk = c.walk(ell).stable_round;
      const auto factor = static_cast<std::size_t>(ceil_log2(ell));
      check(r, s_walk <= s_wl2 && s_wl2 <= s_walk * factor, [&] {
        auto out = case_json(c.name, c.graph.labels);
        out["procedure"] = Procedure::walk(ell).name();
        out["stable_rounds"] = {{"wl2", s_wl2}, {"walk", s_walk}};
        return out;
      });
    }
    const auto key = std::to_string(s_wl2);
    histogram[key] = histogram.value(key, 0) + 1;
  }
  r.details = {{"wl2_stable_round_histogram", histogram}};
}

void mpnn_upper_bound(Context& ctx, SuiteResult& r) {
  const auto& corpus = ctx.corpus();
  const std::size_t pairs = std::min<std::size_t>(100, ctx.options().corpus_size);
  for (std::size_t k = 0; k < pairs; ++k) {
    const auto& c = corpus[k];
    const int ell = 2 + static_cast<int>(k % 2);
    const std::uint64_t mpnn_seed = ctx.options().seed * 1000003ULL + k;
    const auto mpnn = random_table_mpnn(ell, mpnn_seed, 2 + static_cast<std::int64_t>(k % 5),
                                        2 + static_cast<std::int64_t>((k / 5) % 7));
    const auto& trace = c.walk(ell);
    auto features = integer_features(c.graph.labels);
    for (std::size_t t = 1; t <= trace.stable_round + 2; ++t) {
      features = mpnn_step(mpnn, features);
      check(r, refines(trace.at_round(t), partition_of(features)), [&] {
        auto out = case_json(c.name, c.graph.labels);
        out["procedure"] = trace.procedure.name();
        out["mpnn_seed"] = mpnn_seed;
        out["round"] = t;
        out["detail"] = "MPNN separates pairs that W[ell] identifies";
        return out;
      });
    }
  }
}

void countable_simulation(Context& ctx, SuiteResult& r) {
  // Formula goldens.
  const mpz_class one = 1, zero = 0;
  const mpz_class t10[] = {one, zero};
  check(r, walk_tuple_code(2, 2, t10, 64) == 9, [] { return json{{"detail", "h(1,0) for n=2, l=2 is not 9"}}; });
  auto sim = countable_simulator(2, 2);
  mpz_class zeros[] = {zero, zero};
  const mpz_class* walk[] = {&zeros[0], &zeros[1]};
  const mpz_class phi = sim.message(1, walk) + sim.message(1, walk);
  check(r, phi == 6, [&] { return json{{"detail", "phi({(0,0),(0,0)}) is not 6"}, {"got", phi.get_str()}}; });

  std::size_t big_rounds = 0, interned_rounds = 0;
  for (std::size_t k = 0; k < 50; ++k) {
    const std::size_t n = 2 + k % 4;
    const std::size_t alphabet = 1 + (k / 4) % 2;
    const std::uint64_t seed = ctx.options().seed + 7919 * (k + 1);
    const auto g = gen_random_labelled(n, alphabet, seed);
    for (int ell : {2, 3}) {
      const auto report = mpnn_sim_report(g, ell, std::size_t{1} << 20);
      for (const auto& row : report["rounds"]) {
        ++interned_rounds;
        const auto describe = [&] {
          auto out = case_json("random(n=" + std::to_string(n) + ",alphabet=" + std::to_string(alphabet) +
                                   ",seed=" + std::to_string(seed) + ")",
                               g.labels);
          out["procedure"] = Procedure::walk(ell).name();
          out["round"] = row["t"];
          out["report_row"] = row;
          return out;
        };
        check(r, row["interned_equivalent"].get<bool>(), describe);
        const auto& big = row["big_integer"];
        if (big.contains("equivalent")) {
          ++big_rounds;
          check(r, big["equivalent"].get<bool>() && big["natural"].get<bool>(), describe);
        }
      }
    }
  }
  r.details = {{"big_integer_rounds", big_rounds}, {"interned_rounds", interned_rounds}};
}

RationalVector vec(std::initializer_list<mpq_class> xs) { return RationalVector(xs); }

void powersum_injectivity(Context&, SuiteResult& r) {
  {
    const std::vector<RationalVector> x = {vec({1}), vec({2})};
    const auto u = powersum_encoder(x);
    check(r, u == vec({2, 3, 5}), [&] { return json{{"detail", "u({1,2}) is not (2,3,5)"}}; });
  }
  const std::vector<mpq_class> values = {mpq_class(0), mpq_class(1, 2), mpq_class(1)};
  std::vector<RationalVector> points;
  for (const auto& a : values) {
    for (const auto& b : values) points.push_back(vec({a, b}));
  }
  // All multisets of size 3, as non-decreasing index triples.
  std::map<RationalVector, std::vector<std::size_t>> seen;
  std::size_t multisets = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i; j < points.size(); ++j) {
      for (std::size_t k = j; k < points.size(); ++k) {
        ++multisets;
        const std::vector<RationalVector> rows = {points[i], points[j], points[k]};
        const auto u = powersum_encoder(rows);
        check(r, u.size() == 10, [&] { return json{{"detail", "encoding length is not C(5,2)"}, {"got", u.size()}}; });
        const std::vector<RationalVector> shuffled = {points[k], points[i], points[j]};
        check(r, powersum_encoder(shuffled) == u, [&] {
          return json{{"detail", "row order changes the encoding"}, {"multiset", {i, j, k}}};
        });
        auto [it, inserted] = seen.emplace(u, std::vector<std::size_t>{i, j, k});
        check(r, inserted, [&] {
          return json{{"detail", "two multisets share an encoding"}, {"first", it->second}, {"second", {i, j, k}}};
        });
      }
    }
  }
  r.details = {{"multisets", multisets}};
}

void uncountable_simulation(Context& ctx, SuiteResult& r) {
  std::vector<std::pair<std::string, LabelledGraph>> graphs;
  for (std::size_t n = 1; n <= 3; ++n) {
    for (std::size_t alphabet = 1; alphabet <= 3; ++alphabet) {
      for (std::uint64_t s = 0; s < 5; ++s) {
        const auto seed = ctx.options().seed + 100 * n + 10 * alphabet + s;
        graphs.emplace_back("random(n=" + std::to_string(n) + ",alphabet=" + std::to_string(alphabet) +
                                ",seed=" + std::to_string(seed) + ")",
                            gen_random_labelled(n, alphabet, seed));
      }
    }
  }
  for (const char* name : {"K1", "K2", "K3", "path2", "path3", "C3"}) graphs.emplace_back(name, gen_named(name));
  for (const auto& [name, g] : graphs) {
    const auto mpnn = uncountable_simulator(g.n(), 2, 1);
    const auto next = mpnn_step(mpnn, rational_features(g.labels));
    check(r, equivalent(partition_of(next), walk_step(g.labels, 2)), [&] {
      auto out = case_json(name, g.labels);
      out["detail"] = "power-sum MPNN round 1 differs from W[2] round 1";
      return out;
    });
  }
  // Round 2 at n=10 demands s_2 = 664226242466073 and is refused.
  std::string demanded;
  try {
    const auto mpnn = uncountable_simulator(10, 2, 1);
    FeatureMatrix<RationalVector> fake{1, 1, {RationalVector(66)}};
    (void)mpnn_step(mpnn, fake);
  } catch (const LimitError& e) {
    demanded = e.demanded();
  }
  check(r, demanded == "664226242466073",
        [&] { return json{{"detail", "second round at n=10 was not refused with s_2"}, {"got", demanded}}; });
}

void gnn_simulation(Context& ctx, SuiteResult& r) {
  std::vector<std::pair<std::string, LabelledGraph>> graphs;
  for (const auto& name : corpus_named_graphs()) {
    auto g = gen_named(name);
    if (g.n() <= 6) graphs.emplace_back(name, std::move(g));
  }
  for (std::size_t k = 0; k < 25; ++k) {
    const std::size_t n = 3 + k % 3;
    const std::size_t alphabet = 1 + (k / 3) % 3;
    const auto seed = ctx.options().seed + 31 * k + 5;
    graphs.emplace_back("random(n=" + std::to_string(n) + ",alphabet=" + std::to_string(alphabet) +
                            ",seed=" + std::to_string(seed) + ")",
                        gen_random_labelled(n, alphabet, seed));
  }
  std::size_t layers = 0;
  for (const auto& [name, g] : graphs) {
    const auto report = gnn_sim_report(g);
    for (const auto& row : report["rounds"]) {
      ++layers;
      const bool ok = row["equivalent"].get<bool>() && row["label_independent"].get<bool>() &&
                      row["walk_mpnn_identical"].get<bool>();
      check(r, ok, [&] {
        auto out = case_json(name, g.labels);
        out["round"] = row["t"];
        out["report_row"] = row;
        return out;
      });
    }
  }
  r.details = {{"graphs", graphs.size()}, {"layers", layers}};
}

void expressivity_witnesses(Context&, SuiteResult& r) {
  const struct {
    const char* a;
    const char* b;
    Procedure proc;
    bool distinguished;
  } goldens[] = {
      {"C6", "C3+C3", Procedure::wl2(), true},
      {"shrikhande", "rook4x4", Procedure::wl2(), false},
      {"shrikhande", "rook4x4", Procedure::walk(3), false},
      {"shrikhande", "rook4x4", Procedure::walk(4), false},
  };
  json verdicts = json::array();
  for (const auto& golden : goldens) {
    const auto v = compare_graphs(gen_named(golden.a), gen_named(golden.b), golden.proc);
    verdicts.push_back({{"pair", {golden.a, golden.b}}, {"verdict", v.to_json()}});
    check(r, v.distinguished == golden.distinguished, [&] { return verdicts.back(); });
  }
  // A permuted copy is never distinguished.
  const auto petersen = gen_named("petersen");
  std::vector<std::size_t> perm(petersen.n());
  std::iota(perm.begin(), perm.end(), 0);
  std::reverse(perm.begin(), perm.end());
  std::rotate(perm.begin(), perm.begin() + 3, perm.end());
  const auto v = compare_graphs(petersen, permute_vertices(petersen, perm), Procedure::wl2());
  check(r, !v.distinguished, [&] { return json{{"pair", {"petersen", "permuted petersen"}}, {"verdict", v.to_json()}}; });
  r.details = {{"verdicts", verdicts}};
}

void oracle_equivalence(Context& ctx, SuiteResult& r) {
  for (const auto& c : ctx.corpus()) {
    const std::vector<const RefinementTrace*> traces = {&c.wl2(), &c.walk(2), &c.walk(3), &c.walk(4)};
    for (const auto* trace : traces) {
      for (std::size_t t = 0; t <= trace->stable_round + 1; ++t) {
        const bool ok = brute_force_partition(c.graph, trace->procedure, t) == pair_partition(trace->at_round(t));
        check(r, ok, [&] {
          auto out = case_json(c.name, c.graph.labels);
          out["procedure"] = trace->procedure.name();
          out["round"] = t;
          out["detail"] = "production partition differs from the brute-force oracle";
          return out;
        });
      }
    }
  }
}

void permutation_invariance(Context& ctx, SuiteResult& r) {
  std::mt19937_64 rng(ctx.options().seed ^ 0x9e3779b97f4a7c15ULL);
  for (const auto& c : ctx.corpus()) {
    std::vector<std::size_t> perm(c.graph.n());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::size_t> inverse(perm.size());
    for (std::size_t v = 0; v < perm.size(); ++v) inverse[perm[v]] = v;
    const auto permuted = permute_vertices(c.graph, perm);
    for (const auto& proc : {Procedure::wl2(), Procedure::walk(3)}) {
      const auto& original = proc.kind == ProcedureKind::kWl2 ? c.wl2() : c.walk(3);
      const auto trace = run_to_stable(permuted, proc);
      const bool same_round = trace.stable_round == original.stable_round;
      for (std::size_t t = 0; t <= original.stable_round + 1; ++t) {
        const bool ok = same_round &&
                        equivalent(permute_vertices(trace.at_round(t), inverse), original.at_round(t)) &&
                        readout_multiset(trace.at_round(t)) == readout_multiset(original.at_round(t));
        check(r, ok, [&] {
          auto out = case_json(c.name, c.graph.labels);
          out["procedure"] = proc.name();
          out["permutation"] = perm;
          out["round"] = t;
          return out;
        });
      }
    }
  }
}

void walk_strategies(Context& ctx, SuiteResult& r) {
  for (const auto& c : ctx.corpus()) {
    for (int ell = 2; ell <= kMaxEll; ++ell) {
      const auto& reference = c.walk(ell);
      const auto prefix = run_to_stable(c.graph, Procedure::walk(ell), 0, WalkStrategy::kPrefixCounts);
      bool ok = prefix.stable_round == reference.stable_round;
      for (std::size_t t = 0; ok && t < reference.rounds.size(); ++t) {
        ok = equivalent(prefix.rounds[t], reference.rounds[t]);
      }
      check(r, ok, [&] {
        auto out = case_json(c.name, c.graph.labels);
        out["procedure"] = Procedure::walk(ell).name();
        out["detail"] = "prefix-count strategy disagrees with enumeration";
        return out;
      });
    }
  }
}

using SuiteFn = void (*)(Context&, SuiteResult&);

const std::vector<std::pair<std::string, SuiteFn>>& suites() {
  static const std::vector<std::pair<std::string, SuiteFn>> all = {
      {"dimension-formula", dimension_formula},
      {"fixpoint-agreement", fixpoint_agreement},
      {"monotonicity", monotonicity},
      {"cross-ell", cross_ell},
      {"speedup-bound", speedup_bound},
      {"round-counts", round_counts},
      {"mpnn-upper-bound", mpnn_upper_bound},
      {"countable-simulation", countable_simulation},
      {"powersum-injectivity", powersum_injectivity},
      {"uncountable-simulation", uncountable_simulation},
      {"gnn-simulation", gnn_simulation},
      {"expressivity-witnesses", expressivity_witnesses},
      {"oracle-equivalence", oracle_equivalence},
      {"permutation-invariance", permutation_invariance},
      {"walk-strategies", walk_strategies},
  };
  return all;
}

}  // namespace

std::vector<std::string> suite_names() {
  std::vector<std::string> names;
  for (const auto& [name, fn] : suites()) names.push_back(name);
  return names;
}

std::vector<SuiteResult> run_verify(const VerifyOptions& options) {
  const auto names = suite_names();
  for (const auto& wanted : options.only) {
    if (std::find(names.begin(), names.end(), wanted) == names.end()) {
      throw InputError("unknown suite: " + wanted);
    }
  }
  Context ctx(options);
  std::vector<SuiteResult> results;
  for (const auto& [name, fn] : suites()) {
    if (!options.only.empty() && std::find(options.only.begin(), options.only.end(), name) == options.only.end()) {
      continue;
    }
    SuiteResult r;
    r.name = name;
    const auto start = std::chrono::steady_clock::now();
    fn(ctx, r);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    results.push_back(std::move(r));
  }
  return results;
}

json verify_to_json(const std::vector<SuiteResult>& results) {
  json suites_json = json::array();
  bool all = true;
  for (const auto& r : results) {
    all = all && r.passed();
    json s = {{"name", r.name}, {"passed", r.passed()}, {"checks", r.checks}, {"violations", r.violations}};
    if (!r.counterexample.is_null()) s["counterexample"] = r.counterexample;
    if (!r.details.is_null()) s["details"] = r.details;
    suites_json.push_back(std::move(s));
  }
  return {{"passed", all}, {"suites", std::move(suites_json)}};
}

}  // namespace walkref
