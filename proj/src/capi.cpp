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

#include "walkref/walkref.h"

#include <cstdlib>
#include <cstring>
#include <functional>
#include <new>
#include <sstream>
#include <string>

#include "json.hpp"
#include "walkref/errors.hpp"
#include "walkref/graph_io.hpp"
#include "walkref/harness.hpp"
#include "walkref/refinement.hpp"
#include "walkref/reports.hpp"
#include "walkref/walk_mpnn.hpp"

struct walkref_graph {
  walkref::LabelledGraph graph;
};

struct walkref_trace {
  walkref::RefinementTrace trace;
  std::size_t n = 0;
};

namespace {

thread_local std::string t_last_error;

walkref_status fail(walkref_status status, const std::string& message) {
  t_last_error = message;
  return status;
}

template <class Fn>
walkref_status guarded(Fn&& fn) {
  t_last_error.clear();
  try {
    fn();
    return WALKREF_OK;
  } catch (const walkref::InputError& e) {
    return fail(WALKREF_E_INPUT, e.what());
  } catch (const walkref::DimensionError& e) {
    return fail(WALKREF_E_DIMENSION, e.what());
  } catch (const walkref::NotStableError& e) {
    return fail(WALKREF_E_NOT_STABLE, e.what());
  } catch (const walkref::LimitError& e) {
    return fail(WALKREF_E_LIMIT, std::string(e.what()) + " (demanded " + e.demanded() + ")");
  } catch (const walkref::LabelDependenceError& e) {
    return fail(WALKREF_E_LABEL_DEPENDENCE, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(WALKREF_E_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(WALKREF_E_RESOURCE, "out of memory");
  } catch (const std::exception& e) {
    return fail(WALKREF_E_INTERNAL, e.what());
  } catch (...) {
    return fail(WALKREF_E_INTERNAL, "unknown exception");
  }
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void require(const void* p, const char* what) {
  if (p == nullptr) throw std::invalid_argument(std::string(what) + " must not be null");
}

walkref::Procedure procedure(walkref_proc proc, int ell) {
  switch (proc) {
    case WALKREF_PROC_WL2:
      return walkref::Procedure::wl2();
    case WALKREF_PROC_WALK:
      if (ell < 2) throw std::invalid_argument("walk refinement needs ell >= 2, got " + std::to_string(ell));
      return walkref::Procedure::walk(ell);
  }
  throw std::invalid_argument("unknown procedure");
}

walkref_status make_graph_handle(walkref_graph** out, const std::function<walkref::LabelledGraph()>& build) {
  return guarded([&] {
    require(out, "out");
    *out = nullptr;
    auto g = build();
    *out = new walkref_graph{std::move(g)};
  });
}

}  // namespace

extern "C" {

const char* walkref_version(void) { return "0.1.0"; }

const char* walkref_last_error(void) { return t_last_error.c_str(); }

void walkref_string_free(char* s) { std::free(s); }

walkref_status walkref_graph_load_file(const char* path, walkref_graph** out) {
  return make_graph_handle(out, [&] {
    require(path, "path");
    return walkref::load_graph_file(path);
  });
}

walkref_status walkref_graph_from_json(const char* text, walkref_graph** out) {
  return make_graph_handle(out, [&] {
    require(text, "text");
    return walkref::parse_json_graph(text);
  });
}

walkref_status walkref_graph_from_graph6(const char* text, walkref_graph** out) {
  return make_graph_handle(out, [&] {
    require(text, "text");
    return walkref::parse_graph6(text);
  });
}

walkref_status walkref_graph_named(const char* name, walkref_graph** out) {
  return make_graph_handle(out, [&] {
    require(name, "name");
    return walkref::gen_named(name);
  });
}

walkref_status walkref_graph_random(size_t n, size_t alphabet_size, uint64_t seed, walkref_graph** out) {
  return make_graph_handle(out, [&] { return walkref::gen_random_labelled(n, alphabet_size, seed); });
}

walkref_status walkref_graph_permuted(const walkref_graph* g, const size_t* perm, size_t len,
                                      walkref_graph** out) {
  return make_graph_handle(out, [&] {
    require(g, "graph");
    require(perm, "perm");
    if (len != g->graph.n()) throw walkref::DimensionError("perm length does not match the vertex count");
    std::vector<std::size_t> p(perm, perm + len);
    std::vector<bool> seen(len, false);
    for (auto v : p) {
      if (v >= len || seen[v]) throw std::invalid_argument("perm is not a permutation");
      seen[v] = true;
    }
    return walkref::permute_vertices(g->graph, p);
  });
}

void walkref_graph_free(walkref_graph* g) { delete g; }

size_t walkref_graph_n(const walkref_graph* g) { return g == nullptr ? 0 : g->graph.n(); }

size_t walkref_graph_class_count(const walkref_graph* g) {
  return g == nullptr ? 0 : g->graph.labels.class_count();
}

walkref_status walkref_refine(const walkref_graph* g, walkref_proc proc, int ell, size_t max_rounds,
                              walkref_trace** out) {
  return guarded([&] {
    require(g, "graph");
    require(out, "out");
    *out = nullptr;
    auto trace = walkref::run_to_stable(g->graph, procedure(proc, ell), max_rounds);
    *out = new walkref_trace{std::move(trace), g->graph.n()};
  });
}

void walkref_trace_free(walkref_trace* t) { delete t; }

size_t walkref_trace_stable_round(const walkref_trace* t) { return t == nullptr ? 0 : t->trace.stable_round; }

size_t walkref_trace_length(const walkref_trace* t) { return t == nullptr ? 0 : t->trace.rounds.size(); }

size_t walkref_trace_class_count(const walkref_trace* t, size_t round) {
  return t == nullptr ? 0 : t->trace.at_round(round).class_count();
}

walkref_status walkref_trace_fingerprint(const walkref_trace* t, size_t round, char** out) {
  return guarded([&] {
    require(t, "trace");
    require(out, "out");
    *out = dup(walkref::readout_multiset(t->trace.at_round(round)).digest());
  });
}

walkref_status walkref_trace_jsonl(const walkref_trace* t, int include_matrix, char** out) {
  return guarded([&] {
    require(t, "trace");
    require(out, "out");
    *out = dup(walkref::trace_to_jsonl(t->trace, include_matrix != 0));
  });
}

walkref_status walkref_trace_report_json(const walkref_trace* t, char** out) {
  return guarded([&] {
    require(t, "trace");
    require(out, "out");
    const auto& tr = t->trace;
    nlohmann::json rounds = nlohmann::json::array();
    for (std::size_t r = 0; r < tr.rounds.size(); ++r) {
      rounds.push_back({{"t", r},
                        {"class_count", tr.class_counts[r]},
                        {"fingerprint", walkref::readout_multiset(tr.rounds[r]).digest()}});
    }
    const nlohmann::json doc = {
        {"procedure", tr.procedure.name()},
        {"n", t->n},
        {"stable_round", tr.stable_round},
        {"class_count", tr.stable().class_count()},
        {"fingerprint", walkref::readout_multiset(tr.stable()).digest()},
        {"rounds", std::move(rounds)},
    };
    *out = dup(doc.dump());
  });
}

walkref_status walkref_compare(const walkref_graph* a, const walkref_graph* b, walkref_proc proc, int ell,
                               size_t max_rounds, char** json_out, char** text_out) {
  return guarded([&] {
    require(a, "first graph");
    require(b, "second graph");
    const auto verdict = walkref::compare_graphs(a->graph, b->graph, procedure(proc, ell), max_rounds);
    auto json_text = verdict.to_json().dump();
    auto text = verdict.to_text();
    if (json_out != nullptr) *json_out = dup(json_text);
    if (text_out != nullptr) *text_out = dup(text);
  });
}

walkref_status walkref_mpnn_sim(const walkref_graph* g, int ell, size_t max_bits, char** json_out) {
  return guarded([&] {
    require(g, "graph");
    require(json_out, "json_out");
    (void)procedure(WALKREF_PROC_WALK, ell);
    const std::size_t bits = max_bits == 0 ? walkref::CountableLimits{}.max_bits : max_bits;
    *json_out = dup(walkref::mpnn_sim_report(g->graph, ell, bits).dump());
  });
}

walkref_status walkref_gnn_sim(const walkref_graph* g, char** json_out) {
  return guarded([&] {
    require(g, "graph");
    require(json_out, "json_out");
    *json_out = dup(walkref::gnn_sim_report(g->graph).dump());
  });
}

walkref_status walkref_verify(uint64_t seed, const char* only, size_t corpus_size, char** json_out,
                              int* all_passed) {
  return guarded([&] {
    require(json_out, "json_out");
    walkref::VerifyOptions options;
    options.seed = seed;
    if (corpus_size != 0) options.corpus_size = corpus_size;
    if (only != nullptr) {
      std::stringstream in(only);
      std::string name;
      while (std::getline(in, name, ',')) {
        if (!name.empty()) options.only.push_back(name);
      }
    }
    const auto results = walkref::run_verify(options);
    const auto doc = walkref::verify_to_json(results);
    if (all_passed != nullptr) *all_passed = doc["passed"].get<bool>() ? 1 : 0;
    *json_out = dup(doc.dump());
  });
}

walkref_status walkref_verify_suites(char** out) {
  return guarded([&] {
    require(out, "out");
    std::string text;
    for (const auto& name : walkref::suite_names()) text += name + "\n";
    *out = dup(text);
  });
}

walkref_status walkref_feature_dim(size_t n, int ell, size_t s_prev, char** decimal_out) {
  return guarded([&] {
    require(decimal_out, "decimal_out");
    *decimal_out = dup(walkref::feature_dim(n, ell, s_prev).get_str());
  });
}

void walkref_testing_set_walk_mutation(int offset) { walkref::testing::set_walk_length_offset(offset); }

}  // extern "C"
