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

#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "walkref/errors.hpp"
#include "walkref/graph_io.hpp"
#include "walkref/harness.hpp"

namespace walkref {
namespace {

TEST(JsonGraph, UniformCompleteGraph) {
  const auto g = parse_json_graph(R"({"n": 3, "edges": [[0,1],[1,0],[0,2],[2,0],[1,2],[2,1]]})");
  EXPECT_EQ(g.n(), 3u);
  EXPECT_EQ(g.labels.class_count(), 2u);
  EXPECT_TRUE(g.loop_distinct && g.transpose_respecting && g.complete);
}

TEST(JsonGraph, EdgeLabelsAndDirections) {
  const auto g = parse_json_graph(R"({"n": 2, "edges": [[0,1,"x"]]})");
  EXPECT_NE(g.labels.at(0, 1), g.labels.at(1, 0));
  const auto h = parse_json_graph(R"({"n": 2, "edges": [[0,1,"x"],[1,0,"y"]]})");
  EXPECT_NE(h.labels.at(0, 1), h.labels.at(1, 0));
  const auto same = parse_json_graph(R"({"n": 2, "edges": [[0,1,"x"],[1,0,"x"]]})");
  EXPECT_EQ(same.labels.at(0, 1), same.labels.at(1, 0));
}

TEST(JsonGraph, VertexLabelsMatchFromVertexLabels) {
  const auto g = parse_json_graph(R"({"n": 3, "vertex_labels": ["a","b","a"], "edges": [[0,1],[1,0],[1,2],[2,1]]})");
  const std::vector<std::string> nu = {"a", "b", "a"};
  const auto expected = from_vertex_labels(3, nu, [](std::size_t i, std::size_t j) { return (i == 1) != (j == 1); });
  EXPECT_TRUE(equivalent(g.labels, expected.labels));
}

TEST(JsonGraph, Rejections) {
  EXPECT_THROW(parse_json_graph("{"), InputError);
  EXPECT_THROW(parse_json_graph("[]"), InputError);
  EXPECT_THROW(parse_json_graph(R"({"n": 0})"), InputError);
  EXPECT_THROW(parse_json_graph(R"({"n": -2})"), InputError);
  EXPECT_THROW(parse_json_graph(R"({"n": 2, "edges": [[0, 2]]})"), InputError);
  EXPECT_THROW(parse_json_graph(R"({"n": 2, "edges": [[0]]})"), InputError);
  EXPECT_THROW(parse_json_graph(R"({"n": 2, "edges": [[0, 1, 5]]})"), InputError);
  EXPECT_THROW(parse_json_graph(R"({"n": 2, "vertex_labels": ["a"]})"), InputError);
}

TEST(Graph6, KnownEncodings) {
  std::size_t n = 0;
  // C6 as written by standard tools.
  const auto adj = decode_graph6("EhEG", &n);
  ASSERT_EQ(n, 6u);
  for (std::size_t v = 0; v < 6; ++v) {
    EXPECT_TRUE(adj[v * 6 + (v + 1) % 6]);
    EXPECT_TRUE(adj[((v + 1) % 6) * 6 + v]);
    EXPECT_FALSE(adj[v * 6 + (v + 3) % 6]);
  }
  EXPECT_EQ(encode_graph6(n, adj), "EhEG");
  const auto with_header = decode_graph6(">>graph6<<EhEG\n", &n);
  EXPECT_EQ(with_header, adj);
}

TEST(Graph6, Rejections) {
  std::size_t n = 0;
  EXPECT_THROW(decode_graph6("?", &n), InputError);  // zero vertices
  EXPECT_THROW(decode_graph6("E", &n), InputError);  // truncated
  EXPECT_THROW(decode_graph6("E h", &n), InputError);
}

// Property: encode then decode is the identity, including the 4-byte and
// 8-byte vertex-count headers.
TEST(Graph6, RoundTrip) {
  std::mt19937_64 rng(6);
  for (std::size_t n : {1u, 2u, 5u, 6u, 7u, 62u, 63u, 64u, 100u, 258u, 4000u}) {
    for (int trial = 0; trial < (n > 1000 ? 1 : 5); ++trial) {
      std::vector<bool> adj(n * n, false);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          if (rng() % 3 == 0) adj[i * n + j] = adj[j * n + i] = true;
        }
      }
      std::size_t m = 0;
      const auto text = encode_graph6(n, adj);
      EXPECT_EQ(decode_graph6(text, &m), adj) << "n=" << n;
      EXPECT_EQ(m, n);
    }
  }
}

TEST(Graph6, LargeHeaderIsSequenced) {
  // n = 258047 + 1 would need the 8-byte form; n = 4000 uses 126 + 3 bytes.
  std::size_t n = 0;
  const std::vector<bool> empty(4000 * 4000, false);
  const auto text = encode_graph6(4000, empty);
  ASSERT_EQ(text[0], 126);
  (void)decode_graph6(text, &n);
  EXPECT_EQ(n, 4000u);
}

TEST(Graph6, ParsedGraphMatchesNamed) {
  const auto g = parse_graph6("EhEG");
  EXPECT_TRUE(equivalent(g.labels, gen_named("C6").labels));
}

TEST(LoadGraphFile, DetectsFormat) {
  const auto dir = std::filesystem::temp_directory_path();
  const auto json_path = dir / "walkref_io_test.json";
  const auto g6_path = dir / "walkref_io_test.g6";
  std::ofstream(json_path) << R"(  {"n": 2, "edges": [[0,1]]})";
  std::ofstream(g6_path) << "EhEG\n";
  EXPECT_EQ(load_graph_file(json_path).n(), 2u);
  EXPECT_EQ(load_graph_file(g6_path).n(), 6u);
  EXPECT_THROW(load_graph_file(dir / "walkref_io_test_missing.json"), InputError);
  std::filesystem::remove(json_path);
  std::filesystem::remove(g6_path);
}

}  // namespace
}  // namespace walkref
