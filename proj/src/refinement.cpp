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

#include "walkref/refinement.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <unordered_map>

#include <json.hpp>

#include "walkref/errors.hpp"
#include "walkref/parallel.hpp"

namespace walkref {
namespace {

std::atomic<int> g_walk_length_offset{0};

// Mixed-radix packing of an id tuple, preserving lexicographic order.
struct TupleCodec {
  std::uint64_t base;
  int length;

  static bool fits(std::size_t classes, int length) {
    long double capacity = 1;
    for (int k = 0; k < length; ++k) capacity *= static_cast<long double>(std::max<std::size_t>(classes, 1));
    return capacity < 1.8e19L;
  }
  void write(KeyWriter& w, std::uint64_t code) const {
    std::uint32_t digits[64];
    for (int k = length - 1; k >= 0; --k) {
      digits[k] = static_cast<std::uint32_t>(code % base);
      code /= base;
    }
    for (int k = 0; k < length; ++k) w.u32(digits[k]);
  }
};

// Serializes a sorted run-length encoded multiset of packed tuples.
std::string multiset_key(const TupleCodec& codec,
                         const std::vector<std::pair<std::uint64_t, std::uint64_t>>& runs) {
  KeyWriter w;
  w.u32(static_cast<std::uint32_t>(runs.size()));
  for (const auto& [code, count] : runs) {
    codec.write(w, code);
    w.u64(count);
  }
  return w.take();
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> run_length(std::vector<std::uint64_t>& codes) {
  std::sort(codes.begin(), codes.end());
  std::vector<std::pair<std::uint64_t, std::uint64_t>> runs;
  for (auto code : codes) {
    if (!runs.empty() && runs.back().first == code) {
      ++runs.back().second;
    } else {
      runs.emplace_back(code, 1);
    }
  }
  return runs;
}

// Fallback when tuples do not pack into 64 bits.
std::string wide_cell_key(const Labelling& prev, std::size_t i, std::size_t j, int ell) {
  const std::size_t n = prev.n();
  std::vector<std::vector<LabelId>> tuples;
  std::vector<std::size_t> mid(static_cast<std::size_t>(ell - 1), 0);
  while (true) {
    std::vector<LabelId> t;
    t.reserve(static_cast<std::size_t>(ell));
    std::size_t from = i;
    for (auto v : mid) {
      t.push_back(prev.at(from, v));
      from = v;
    }
    t.push_back(prev.at(from, j));
    tuples.push_back(std::move(t));
    std::size_t k = 0;
    while (k < mid.size() && ++mid[k] == n) mid[k++] = 0;
    if (k == mid.size()) break;
  }
  std::sort(tuples.begin(), tuples.end());
  KeyWriter w;
  std::vector<std::pair<std::size_t, std::uint64_t>> runs;
  for (std::size_t k = 0; k < tuples.size(); ++k) {
    if (!runs.empty() && tuples[runs.back().first] == tuples[k]) {
      ++runs.back().second;
    } else {
      runs.emplace_back(k, 1);
    }
  }
  w.u32(static_cast<std::uint32_t>(runs.size()));
  for (const auto& [idx, count] : runs) {
    for (auto id : tuples[idx]) w.u32(id);
    w.u64(count);
  }
  return w.take();
}

void require_loop_distinct(const Labelling& prev) {
  if (!is_loop_distinct(prev)) {
    throw std::invalid_argument("refinement step needs a loop-distinct labelling; normalize first");
  }
}

std::vector<std::string> enumerate_keys(const Labelling& prev, int ell) {
  const std::size_t n = prev.n();
  std::vector<std::string> keys(n * n);
  if (!TupleCodec::fits(prev.class_count(), ell)) {
    parallel_for(n * n, [&](std::size_t c) { keys[c] = wide_cell_key(prev, c / n, c % n, ell); });
    return keys;
  }
  const TupleCodec codec{std::max<std::uint64_t>(prev.class_count(), 1), ell};
  std::size_t walks = 1;
  for (int k = 1; k < ell; ++k) walks *= n;
  parallel_for(n * n, [&](std::size_t c) {
    const std::size_t i = c / n;
    const std::size_t j = c % n;
    std::vector<std::uint64_t> codes;
    codes.reserve(walks);
    std::vector<std::size_t> mid(static_cast<std::size_t>(ell - 1), 0);
    while (true) {
      std::uint64_t code = 0;
      std::size_t from = i;
      for (auto v : mid) {
        code = code * codec.base + prev.at(from, v);
        from = v;
      }
      codes.push_back(code * codec.base + prev.at(from, j));
      std::size_t k = 0;
      while (k < mid.size() && ++mid[k] == n) mid[k++] = 0;
      if (k == mid.size()) break;
    }
    keys[c] = multiset_key(codec, run_length(codes));
  });
  return keys;
}

std::vector<std::string> prefix_count_keys(const Labelling& prev, int ell) {
  const std::size_t n = prev.n();
  if (!TupleCodec::fits(prev.class_count(), ell)) return enumerate_keys(prev, ell);
  const TupleCodec codec{std::max<std::uint64_t>(prev.class_count(), 1), ell};
  std::vector<std::string> keys(n * n);
  parallel_for(n, [&](std::size_t i) {
    using Counts = std::unordered_map<std::uint64_t, std::uint64_t>;
    // layer[v]: prefix code -> number of walks from i ending at v with it.
    std::vector<Counts> layer(n);
    for (std::size_t v = 0; v < n; ++v) layer[v][prev.at(i, v)] = 1;
    for (int step = 1; step < ell; ++step) {
      std::vector<Counts> next(n);
      for (std::size_t v = 0; v < n; ++v) {
        for (const auto& [code, count] : layer[v]) {
          for (std::size_t w = 0; w < n; ++w) next[w][code * codec.base + prev.at(v, w)] += count;
        }
      }
      layer = std::move(next);
    }
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<std::pair<std::uint64_t, std::uint64_t>> runs(layer[j].begin(), layer[j].end());
      std::sort(runs.begin(), runs.end());
      keys[i * n + j] = multiset_key(codec, runs);
    }
  });
  return keys;
}

}  // namespace

std::string Procedure::name() const {
  return kind == ProcedureKind::kWl2 ? "wl2" : "walk" + std::to_string(ell);
}

Labelling wl2_step(const Labelling& prev) {
  require_loop_distinct(prev);
  const std::size_t n = prev.n();
  const TupleCodec codec{std::max<std::uint64_t>(prev.class_count(), 1), 2};
  std::vector<std::string> keys(n * n);
  parallel_for(n * n, [&](std::size_t c) {
    const std::size_t i = c / n;
    const std::size_t j = c % n;
    std::vector<std::uint64_t> codes(n);
    for (std::size_t k = 0; k < n; ++k) codes[k] = prev.at(i, k) * codec.base + prev.at(k, j);
    keys[c] = multiset_key(codec, run_length(codes));
  });
  return Labelling::from_keys(n, std::move(keys));
}

Labelling walk_step(const Labelling& prev, int ell, WalkStrategy strategy) {
  if (ell < 2) throw std::invalid_argument("walk length must be at least 2, got " + std::to_string(ell));
  require_loop_distinct(prev);
  const int effective = ell + g_walk_length_offset.load();
  if (effective < 1) throw std::invalid_argument("walk length offset leaves no walk");
  auto keys = strategy == WalkStrategy::kPrefixCounts ? prefix_count_keys(prev, effective)
                                                       : enumerate_keys(prev, effective);
  return Labelling::from_keys(prev.n(), std::move(keys));
}

Labelling refinement_step(const Labelling& prev, const Procedure& proc, WalkStrategy strategy) {
  if (proc.kind == ProcedureKind::kWl2) return wl2_step(prev);
  return walk_step(prev, proc.ell, strategy);
}

const Labelling& RefinementTrace::at_round(std::size_t t) const {
  return rounds[std::min(t, rounds.size() - 1)];
}

std::size_t default_round_budget(std::size_t n) { return n * n + 1; }

RefinementTrace run_to_stable(const LabelledGraph& g, const Procedure& proc, std::size_t max_rounds,
                              WalkStrategy strategy) {
  if (proc.kind == ProcedureKind::kWalk && proc.ell < 2) {
    throw std::invalid_argument("walk refinement needs ell >= 2");
  }
  if (!g.loop_distinct || !g.transpose_respecting) {
    throw std::invalid_argument("run_to_stable needs a normalized graph");
  }
  if (max_rounds == 0) max_rounds = default_round_budget(g.n());
  RefinementTrace trace;
  trace.procedure = proc;
  trace.rounds.push_back(g.labels);
  trace.class_counts.push_back(g.labels.class_count());
  for (std::size_t t = 0; t < max_rounds; ++t) {
    trace.rounds.push_back(refinement_step(trace.rounds[t], proc, strategy));
    const Labelling& next = trace.rounds.back();
    trace.class_counts.push_back(next.class_count());
    const bool same_partition = equivalent(next, trace.rounds[t]);
    const bool same_matrix = next.first_occurrence_matrix() == trace.rounds[t].first_occurrence_matrix();
    if (same_partition != same_matrix) {
      throw std::logic_error("stabilization checks disagree at round " + std::to_string(t + 1));
    }
    if (same_partition) {
      trace.stable_round = t;
      return trace;
    }
  }
  throw NotStableError(proc.name() + " did not stabilize within " + std::to_string(max_rounds) +
                       " rounds");
}

int ceil_log2(int ell) {
  if (ell < 1) throw std::invalid_argument("ceil_log2 needs ell >= 1");
  int bits = 0;
  while ((1 << bits) < ell) ++bits;
  return bits;
}

std::string trace_to_jsonl(const RefinementTrace& trace, bool include_matrix) {
  std::string out;
  for (std::size_t t = 0; t < trace.rounds.size(); ++t) {
    const Labelling& l = trace.rounds[t];
    nlohmann::json rec;
    rec["t"] = t;
    rec["class_count"] = l.class_count();
    rec["fingerprint"] = readout_multiset(l).digest();
    if (include_matrix) {
      auto rows = nlohmann::json::array();
      for (std::size_t i = 0; i < l.n(); ++i) {
        auto row = nlohmann::json::array();
        for (std::size_t j = 0; j < l.n(); ++j) row.push_back(l.at(i, j));
        rows.push_back(std::move(row));
      }
      rec["matrix"] = std::move(rows);
    }
    out += rec.dump();
    out += '\n';
  }
  return out;
}

namespace testing {
void set_walk_length_offset(int offset) { g_walk_length_offset.store(offset); }
int walk_length_offset() { return g_walk_length_offset.load(); }
}  // namespace testing

}  // namespace walkref
