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

// walkref command-line front end. Links only the C interface.

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "walkref/walkref.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitInternal = 3;

struct GraphDeleter {
  void operator()(walkref_graph* g) const { walkref_graph_free(g); }
};
struct TraceDeleter {
  void operator()(walkref_trace* t) const { walkref_trace_free(t); }
};
struct StringDeleter {
  void operator()(char* s) const { walkref_string_free(s); }
};
using GraphPtr = std::unique_ptr<walkref_graph, GraphDeleter>;
using TracePtr = std::unique_ptr<walkref_trace, TraceDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

// Carries a library failure up to main with its exit code.
struct Failure {
  int code;
  std::string message;
};

int exit_code_for(walkref_status s) {
  switch (s) {
    case WALKREF_OK:
      return kExitOk;
    case WALKREF_E_INPUT:
    case WALKREF_E_INVALID_ARGUMENT:
    case WALKREF_E_DIMENSION:
    case WALKREF_E_LIMIT:
    case WALKREF_E_LABEL_DEPENDENCE:
      return kExitInput;
    default:
      return kExitInternal;
  }
}

void check(walkref_status s) {
  if (s != WALKREF_OK) throw Failure{exit_code_for(s), walkref_last_error()};
}

struct Options {
  std::string proc = "wl2";
  int ell = 2;
  std::size_t max_rounds = 0;
  bool trace = false;
  bool matrix = false;
  std::string format = "text";
  std::uint64_t seed = 0;
  std::string only;
  std::size_t corpus_size = 0;
  std::size_t max_bits = 0;
  int mutant_walk_offset = 0;
  std::vector<std::string> graphs;
};

walkref_proc proc_of(const Options& o) { return o.proc == "wl2" ? WALKREF_PROC_WL2 : WALKREF_PROC_WALK; }

// A graph argument is a file path, "named:<name>" or "random:<n>:<alphabet>"
// (seeded by --seed).
GraphPtr load_graph(const std::string& arg, std::uint64_t seed) {
  walkref_graph* g = nullptr;
  if (arg.rfind("named:", 0) == 0) {
    check(walkref_graph_named(arg.substr(6).c_str(), &g));
  } else if (arg.rfind("random:", 0) == 0) {
    std::size_t n = 0, alphabet = 0;
    char tail = 0;
    if (std::sscanf(arg.c_str() + 7, "%zu:%zu%c", &n, &alphabet, &tail) != 2) {
      throw Failure{kExitInput, "random graphs are written random:<n>:<alphabet>"};
    }
    check(walkref_graph_random(n, alphabet, seed, &g));
  } else {
    check(walkref_graph_load_file(arg.c_str(), &g));
  }
  return GraphPtr(g);
}

std::string take(char* s) { return std::string(StringPtr(s).get()); }

std::string fingerprint(const walkref_trace* t, std::size_t round) {
  char* out = nullptr;
  check(walkref_trace_fingerprint(t, round, &out));
  return take(out);
}

int cmd_refine(const Options& o) {
  const auto g = load_graph(o.graphs.at(0), o.seed);
  walkref_trace* raw = nullptr;
  check(walkref_refine(g.get(), proc_of(o), o.ell, o.max_rounds, &raw));
  const TracePtr trace(raw);
  const std::size_t stable = walkref_trace_stable_round(trace.get());
  char* jsonl = nullptr;
  if (o.trace) check(walkref_trace_jsonl(trace.get(), o.matrix ? 1 : 0, &jsonl));
  const std::string trace_lines = jsonl ? take(jsonl) : std::string();

  if (o.format == "json") {
    char* report = nullptr;
    check(walkref_trace_report_json(trace.get(), &report));
    auto doc = nlohmann::json::parse(take(report));
    if (o.trace) {
      doc["trace"] = nlohmann::json::array();
      std::istringstream in(trace_lines);
      for (std::string line; std::getline(in, line);) {
        if (!line.empty()) doc["trace"].push_back(nlohmann::json::parse(line));
      }
    }
    std::cout << doc.dump(2) << "\n";
    return kExitOk;
  }
  std::cout << "procedure " << (o.proc == "wl2" ? std::string("wl2") : "walk" + std::to_string(o.ell))
            << ", n=" << walkref_graph_n(g.get()) << "\n";
  for (std::size_t t = 0; t < walkref_trace_length(trace.get()); ++t) {
    std::cout << "round " << t << ": " << walkref_trace_class_count(trace.get(), t) << " classes\n";
  }
  std::cout << "stable at round " << stable << ", " << walkref_trace_class_count(trace.get(), stable)
            << " classes (confirmed at round " << stable + 1 << ")\n";
  std::cout << "fingerprint " << fingerprint(trace.get(), stable) << "\n";
  std::cout << trace_lines;
  return kExitOk;
}

int cmd_compare(const Options& o) {
  const auto a = load_graph(o.graphs.at(0), o.seed);
  const auto b = load_graph(o.graphs.at(1), o.seed);
  char* json = nullptr;
  char* text = nullptr;
  check(walkref_compare(a.get(), b.get(), proc_of(o), o.ell, o.max_rounds, &json, &text));
  const auto json_s = take(json);
  const auto text_s = take(text);
  if (o.format == "text") {
    std::cout << text_s << "\n";
  } else {
    std::cout << nlohmann::json::parse(json_s).dump(2) << "\n";
  }
  return kExitOk;
}

int print_report(const std::string& json, const Options& o, const char* ok_key) {
  const auto doc = nlohmann::json::parse(json);
  if (o.format == "json") {
    std::cout << doc.dump(2) << "\n";
    return kExitOk;
  }
  std::cout << doc["procedure"].get<std::string>() << ", n=" << doc["n"] << ", stable at round "
            << doc["stable_round"] << "\n";
  for (const auto& row : doc["rounds"]) {
    std::cout << "round " << row["t"] << ": " << row.dump() << "\n";
  }
  std::cout << (doc[ok_key].get<bool>() ? "equivalent at every round" : "MISMATCH") << "\n";
  return kExitOk;
}

int cmd_mpnn_sim(const Options& o) {
  const auto g = load_graph(o.graphs.at(0), o.seed);
  char* json = nullptr;
  check(walkref_mpnn_sim(g.get(), o.ell, o.max_bits, &json));
  return print_report(take(json), o, "all_equivalent");
}

int cmd_gnn_sim(const Options& o) {
  const auto g = load_graph(o.graphs.at(0), o.seed);
  char* json = nullptr;
  check(walkref_gnn_sim(g.get(), &json));
  return print_report(take(json), o, "all_passed");
}

int cmd_verify(const Options& o) {
  walkref_testing_set_walk_mutation(o.mutant_walk_offset);
  char* json = nullptr;
  int passed = 0;
  check(walkref_verify(o.seed, o.only.c_str(), o.corpus_size, &json, &passed));
  const auto doc = nlohmann::json::parse(take(json));
  if (o.format == "json") {
    std::cout << doc.dump(2) << "\n";
  } else {
    for (const auto& s : doc["suites"]) {
      std::cout << (s["passed"].get<bool>() ? "PASS " : "FAIL ") << s["name"].get<std::string>() << " ("
                << s["checks"] << " checks, " << s["violations"] << " violations)\n";
      if (s.contains("counterexample")) std::cout << "  counterexample: " << s["counterexample"].dump() << "\n";
    }
    std::cout << (passed ? "all suites passed" : "some suites FAILED") << "\n";
  }
  return passed ? kExitOk : kExitInternal;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"walkref: WL[2] and walk refinement, walk MPNN simulation, theorem checks"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--seed", o.seed, "Seed for random graphs and corpora");
  };
  auto add_proc = [&](CLI::App* sub) {
    sub->add_option("--proc", o.proc, "Refinement procedure")->check(CLI::IsMember({"wl2", "walk"}));
    sub->add_option("--ell", o.ell, "Walk length for --proc walk")->check(CLI::Range(2, 64));
    sub->add_option("--max-rounds", o.max_rounds, "Round budget (0 selects n*n+1)");
  };

  auto* refine = app.add_subcommand("refine", "Refine one graph to its stable labelling");
  add_proc(refine);
  add_common(refine);
  refine->add_flag("--trace", o.trace, "Emit the per-round trace as JSON lines");
  refine->add_flag("--matrix", o.matrix, "Include full label matrices in the trace");
  refine->add_option("graph", o.graphs, "Graph file, named:<name> or random:<n>:<alphabet>")->required()->expected(1);

  auto* compare = app.add_subcommand("compare", "Compare two graphs by readout per round");
  add_proc(compare);
  add_common(compare);
  compare->add_option("graphs", o.graphs, "Two graphs")->required()->expected(2);

  auto* mpnn = app.add_subcommand("mpnn-sim", "Countable walk MPNN against walk refinement");
  mpnn->add_option("--ell", o.ell, "Walk length")->check(CLI::Range(2, 64));
  mpnn->add_option("--max-bits", o.max_bits, "Bit cap for exact big-integer codes (0 selects 2^24)");
  add_common(mpnn);
  mpnn->add_option("graph", o.graphs, "Graph")->required()->expected(1);

  auto* gnn = app.add_subcommand("gnn-sim", "Synthesized second-order layers against WL2");
  add_common(gnn);
  gnn->add_option("graph", o.graphs, "Graph")->required()->expected(1);

  auto* verify = app.add_subcommand("verify", "Run the theorem-check suites");
  add_common(verify);
  verify->add_option("--only", o.only, "Comma-separated suite names");
  verify->add_option("--corpus-size", o.corpus_size, "Random graphs in the corpus (0 selects 100)");
  verify->add_option("--mutant-walk-offset", o.mutant_walk_offset)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  // Verdicts are data: compare prints JSON unless asked otherwise.
  if (compare->parsed() && compare->count("--format") == 0) o.format = "json";
  try {
    if (refine->parsed()) return cmd_refine(o);
    if (compare->parsed()) return cmd_compare(o);
    if (mpnn->parsed()) return cmd_mpnn_sim(o);
    if (gnn->parsed()) return cmd_gnn_sim(o);
    if (verify->parsed()) return cmd_verify(o);
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInput;
}
