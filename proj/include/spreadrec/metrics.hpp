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

// Accuracy and diversity measures over per-user recommendation lists.
// Every function expects `lists[u].user() == u`.

#pragma once

#include <cstddef>
#include <map>
#include <span>

#include "spreadrec/graph.hpp"
#include "spreadrec/recommend.hpp"

namespace spreadrec {

struct RankingScore {
  double mean = 0.0;              // mean of position / L over probe entries
  std::size_t entries = 0;
  std::size_t isolated_entries = 0;  // entries whose user got no similarity mass
};

/// Mean relative position of the probe objects in their users' lists,
/// averaged over entries (not users). Ties contribute their mid-rank, so an
/// isolated user's entries each add (L+1)/(2L).
/// Throws DataIntegrityError for a probe object missing from the list,
/// i.e. one the user already collected in training.
RankingScore ranking_score(std::span<const RecommendationList> lists,
                           std::span<const Edge> probe);

/// Mean training degree of the objects in every user's top-L list; shorter
/// lists contribute all their entries. 0 when no list has entries.
double avg_recommended_degree(std::span<const RecommendationList> lists,
                              const BipartiteGraph& g, std::size_t length);

struct HammingDistance {
  double mean = 0.0;  // mean over user pairs of 1 - overlap / L
  std::size_t pairs = 0;
  std::size_t excluded_users = 0;  // lists shorter than L
};

/// Pairwise diversity of the top-L lists. Users whose lists hold fewer than
/// L objects are left out of every pair. Overlaps are counted exactly with
/// bitsets and totalled as integers, so the result does not depend on the
/// thread count.
HammingDistance hamming_distance(std::span<const RecommendationList> lists,
                                 std::size_t n_objects, std::size_t length,
                                 unsigned threads = 1);

struct MetricsReport {
  RankingScore ranking;
  std::map<std::size_t, double> avg_degree;           // by list length L
  std::map<std::size_t, HammingDistance> hamming;     // by list length L
};

/// All three measures; throws ParameterError if any length is 0.
MetricsReport evaluate_lists(std::span<const RecommendationList> lists,
                             const BipartiteGraph& train,
                             std::span<const Edge> probe,
                             std::span<const std::size_t> list_lengths,
                             unsigned threads = 1);

}  // namespace spreadrec
