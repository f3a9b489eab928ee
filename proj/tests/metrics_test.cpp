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
#include <cmath>
#include <numeric>
#include <random>

#include "doctest.h"
#include "spreadrec/errors.hpp"
#include "spreadrec/metrics.hpp"

using namespace spreadrec;

namespace {

// List for `user` ranking `objects` in the given order with distinct scores.
RecommendationList ordered_list(UserId user, std::vector<ObjectId> objects) {
  ScoreVector v;
  v.user = user;
  std::vector<std::pair<ObjectId, double>> pairs;
  for (std::size_t k = 0; k < objects.size(); ++k) {
    pairs.push_back({objects[k], 1.0 - static_cast<double>(k) / (objects.size() + 1)});
  }
  std::sort(pairs.begin(), pairs.end());
  for (auto [o, s] : pairs) {
    v.objects.push_back(o);
    v.scores.push_back(s);
  }
  return rank_uncollected(v);
}

std::vector<ObjectId> iota_objects(std::size_t n, ObjectId first = 0) {
  std::vector<ObjectId> out(n);
  std::iota(out.begin(), out.end(), first);
  return out;
}

}  // namespace

TEST_CASE("ranking score examples") {
  std::vector<RecommendationList> lists{ordered_list(0, iota_objects(100))};
  const std::vector<Edge> tenth{{0, 9}};
  CHECK(ranking_score(lists, tenth).mean == doctest::Approx(0.1).epsilon(1e-15));

  const std::vector<Edge> first{{0, 0}};
  CHECK(ranking_score(lists, first).mean == 1.0 / 100);

  ScoreVector tied;
  tied.objects = iota_objects(8);
  tied.scores.assign(8, 0.0);
  tied.isolated = true;
  std::vector<RecommendationList> flat{rank_uncollected(tied)};
  const std::vector<Edge> probes{{0, 1}, {0, 6}};
  const auto r = ranking_score(flat, probes);
  CHECK(r.mean == doctest::Approx(9.0 / 16.0));
  CHECK(r.entries == 2);
  CHECK(r.isolated_entries == 2);
}

TEST_CASE("ranking score averages over entries, not users") {
  std::vector<RecommendationList> lists{ordered_list(0, iota_objects(10)),
                                        ordered_list(1, iota_objects(10))};
  // user 0: positions 1 and 3 of 10; user 1: position 10 of 10.
  const std::vector<Edge> probe{{0, 0}, {0, 2}, {1, 9}};
  CHECK(ranking_score(lists, probe).mean == doctest::Approx((0.1 + 0.3 + 1.0) / 3));
}

TEST_CASE("probe object collected in training is an integrity error") {
  std::vector<RecommendationList> lists{ordered_list(0, {1, 2, 3})};
  const std::vector<Edge> probe{{0, 0}};
  CHECK_THROWS_AS(ranking_score(lists, probe), DataIntegrityError);
}

TEST_CASE("random rankings score about one half") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<RecommendationList> lists;
  std::vector<Edge> probe;
  for (UserId user = 0; user < 100; ++user) {
    ScoreVector v;
    v.user = user;
    v.objects = iota_objects(1000);
    for (std::size_t k = 0; k < 1000; ++k) v.scores.push_back(u(rng));
    lists.push_back(rank_uncollected(v));
    for (int p = 0; p < 100; ++p) {
      probe.push_back({user, static_cast<ObjectId>(rng() % 1000)});
    }
  }
  const auto r = ranking_score(lists, probe);
  CHECK(r.entries == 10000);
  CHECK(std::abs(r.mean - 0.5) < 0.02);
}

TEST_CASE("ranking score ignores object labels") {
  std::mt19937_64 rng(6);
  std::vector<ObjectId> relabel = iota_objects(50);
  std::shuffle(relabel.begin(), relabel.end(), rng);
  std::vector<RecommendationList> a, b;
  std::vector<Edge> pa, pb;
  for (UserId user = 0; user < 20; ++user) {
    ScoreVector v, w;
    v.user = w.user = user;
    std::vector<std::pair<ObjectId, double>> renamed;
    for (ObjectId o = 0; o < 50; ++o) {
      const double s = static_cast<double>(rng() % 5) / 4;  // many ties
      v.objects.push_back(o);
      v.scores.push_back(s);
      renamed.push_back({relabel[o], s});
    }
    std::sort(renamed.begin(), renamed.end());
    for (auto [o, s] : renamed) {
      w.objects.push_back(o);
      w.scores.push_back(s);
    }
    a.push_back(rank_uncollected(v));
    b.push_back(rank_uncollected(w));
    const auto o = static_cast<ObjectId>(rng() % 50);
    pa.push_back({user, o});
    pb.push_back({user, relabel[o]});
  }
  CHECK(ranking_score(a, pa).mean == ranking_score(b, pb).mean);
}

TEST_CASE("average recommended degree") {
  // Object degrees: 0 -> 5, 1 -> 3, 2 -> 1.
  std::vector<Edge> edges;
  for (UserId u = 0; u < 5; ++u) edges.push_back({u, 0});
  for (UserId u = 0; u < 3; ++u) edges.push_back({u, 1});
  edges.push_back({0, 2});
  const auto g = BipartiteGraph::build(edges, 6, 4);

  std::vector<RecommendationList> one{ordered_list(5, {0, 1, 2})};
  CHECK(avg_recommended_degree(one, g, 2) == 4.0);

  std::vector<RecommendationList> same{ordered_list(5, {1}), ordered_list(4, {1, 0})};
  CHECK(avg_recommended_degree(same, g, 1) == 3.0);
  // the one-entry list contributes its single object at L=2
  CHECK(avg_recommended_degree(same, g, 2) == doctest::Approx((3 + 3 + 5) / 3.0));
  CHECK_THROWS_AS(avg_recommended_degree(one, g, 0), ParameterError);
}

TEST_CASE("hamming distance examples") {
  std::vector<RecommendationList> same{ordered_list(0, {1, 2, 5}),
                                       ordered_list(1, {2, 1, 7})};
  CHECK(hamming_distance(same, 10, 2).mean == 0.0);

  std::vector<RecommendationList> apart{ordered_list(0, {1, 2}),
                                        ordered_list(1, {3, 4})};
  CHECK(hamming_distance(apart, 10, 2).mean == 1.0);

  std::vector<RecommendationList> half{ordered_list(0, {0, 1}),
                                       ordered_list(1, {1, 2})};
  const auto h = hamming_distance(half, 3, 2);
  CHECK(h.mean == 0.5);
  CHECK(h.pairs == 1);

  std::vector<RecommendationList> with_short{ordered_list(0, {0, 1}),
                                             ordered_list(1, {1, 2}),
                                             ordered_list(2, {2})};
  const auto hs = hamming_distance(with_short, 3, 2);
  CHECK(hs.mean == 0.5);
  CHECK(hs.excluded_users == 1);
  CHECK_THROWS_AS(hamming_distance(half, 3, 0), ParameterError);
}

TEST_CASE("hamming properties") {
  std::mt19937_64 rng(10);
  const std::size_t n = 150;
  std::vector<RecommendationList> lists;
  for (UserId u = 0; u < 40; ++u) {
    auto objects = iota_objects(n);
    std::shuffle(objects.begin(), objects.begin() + 30, rng);  // popular head
    std::shuffle(objects.begin() + 5, objects.end(), rng);
    lists.push_back(ordered_list(u, objects));
  }
  for (std::size_t length : {1u, 5u, 20u}) {
    const auto h = hamming_distance(lists, n, length);
    CHECK(h.mean >= 0.0);
    CHECK(h.mean <= 1.0);
    CHECK(h.pairs == 40 * 39 / 2);
    CHECK(hamming_distance(lists, n, length, 4).mean == h.mean);

    // user order does not matter
    std::vector<RecommendationList> reversed(lists.rbegin(), lists.rend());
    CHECK(hamming_distance(reversed, n, length).mean == doctest::Approx(h.mean).epsilon(1e-15));

    // object relabeling does not matter
    std::vector<ObjectId> relabel = iota_objects(n);
    std::shuffle(relabel.begin(), relabel.end(), rng);
    std::vector<RecommendationList> renamed;
    for (const auto& l : lists) {
      std::vector<ObjectId> objs;
      for (ObjectId o : l.ranked()) objs.push_back(relabel[o]);
      renamed.push_back(ordered_list(l.user(), objs));
    }
    CHECK(hamming_distance(renamed, n, length).mean == h.mean);
  }

  // L = 1: share of pairs whose top items differ
  std::size_t differ = 0;
  for (std::size_t i = 0; i < lists.size(); ++i) {
    for (std::size_t j = i + 1; j < lists.size(); ++j) {
      differ += lists[i].ranked()[0] != lists[j].ranked()[0];
    }
  }
  CHECK(hamming_distance(lists, n, 1).mean ==
        doctest::Approx(static_cast<double>(differ) / (40 * 39 / 2)).epsilon(1e-15));
}
