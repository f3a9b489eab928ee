// Copyright 2026 The spreadrec Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "spreadrec/errors.hpp"
#include "spreadrec/graph.hpp"

using spreadrec::BipartiteGraph;
using spreadrec::Edge;

TEST_CASE("build collapses duplicate edges") {
  const std::vector<Edge> edges{{0, 0}, {0, 0}, {1, 0}};
  const auto g = BipartiteGraph::build(edges, 2, 1);
  CHECK(g.n_edges() == 2);
  CHECK(g.object_degree(0) == 2);
  CHECK(g.user_degree(0) == 1);
  CHECK(g.user_degree(1) == 1);
}

TEST_CASE("empty graph keeps its dimensions") {
  const auto g = BipartiteGraph::build({}, 3, 4);
  CHECK(g.n_users() == 3);
  CHECK(g.n_objects() == 4);
  CHECK(g.n_edges() == 0);
  for (spreadrec::UserId u = 0; u < 3; ++u) CHECK(g.user_degree(u) == 0);
  for (spreadrec::ObjectId o = 0; o < 4; ++o) CHECK(g.object_degree(o) == 0);
}

TEST_CASE("has_edge") {
  const std::vector<Edge> one{{0, 1}};
  const auto g = BipartiteGraph::build(one, 1, 2);
  CHECK(g.has_edge(0, 1));
  CHECK_FALSE(g.has_edge(0, 0));

  const std::vector<Edge> twice{{0, 1}, {0, 1}};
  CHECK(BipartiteGraph::build(twice, 1, 2).has_edge(0, 1));

  CHECK_THROWS_AS(g.has_edge(1, 0), spreadrec::IdRangeError);
  CHECK_THROWS_AS(g.has_edge(0, 2), spreadrec::IdRangeError);
}

TEST_CASE("out-of-range edge names the offender") {
  const std::vector<Edge> edges{{0, 0}, {2, 1}};
  try {
    BipartiteGraph::build(edges, 2, 2);
    FAIL("expected IdRangeError");
  } catch (const spreadrec::IdRangeError& e) {
    const std::string what = e.what();
    CHECK(what.find("edge 1") != std::string::npos);
    CHECK(what.find("user 2") != std::string::npos);
  }
}

TEST_CASE("random graphs: round trip, degree sums, view duality") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t m = 1 + rng() % 40, n = 1 + rng() % 40;
    std::vector<Edge> edges(rng() % 300);
    for (auto& e : edges) {
      e = {static_cast<spreadrec::UserId>(rng() % m),
           static_cast<spreadrec::ObjectId>(rng() % n)};
    }
    const auto g = BipartiteGraph::build(edges, m, n);

    const std::set<Edge> expected(edges.begin(), edges.end());
    const auto got = g.edges();
    CHECK(std::vector<Edge>(expected.begin(), expected.end()) == got);

    std::size_t user_sum = 0, object_sum = 0;
    for (spreadrec::UserId u = 0; u < m; ++u) {
      user_sum += g.user_degree(u);
      const auto items = g.user_items(u);
      CHECK(std::is_sorted(items.begin(), items.end()));
    }
    for (spreadrec::ObjectId o = 0; o < n; ++o) {
      object_sum += g.object_degree(o);
      const auto users = g.item_users(o);
      CHECK(std::is_sorted(users.begin(), users.end()));
      for (auto u : users) CHECK(g.has_edge(u, o));
    }
    CHECK(user_sum == g.n_edges());
    CHECK(object_sum == g.n_edges());

    for (int probe = 0; probe < 20; ++probe) {
      const auto u = static_cast<spreadrec::UserId>(rng() % m);
      const auto o = static_cast<spreadrec::ObjectId>(rng() % n);
      const auto users = g.item_users(o);
      const bool in_items = g.has_edge(u, o);
      const bool in_users = std::find(users.begin(), users.end(), u) != users.end();
      CHECK(in_items == in_users);
      CHECK(in_items == (expected.count({u, o}) == 1));
    }
  }
}
