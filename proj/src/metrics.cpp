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

#include "spreadrec/metrics.hpp"

#include <cstdint>
#include <string>
#include <vector>

#include "spreadrec/errors.hpp"
#include "spreadrec/kernels.hpp"
#include "spreadrec/parallel.hpp"

namespace spreadrec {

RankingScore ranking_score(std::span<const RecommendationList> lists,
                           std::span<const Edge> probe) {
  RankingScore out;
  double total = 0.0;
  for (const Edge& e : probe) {
    if (e.user >= lists.size()) {
      throw IdRangeError("probe user " + std::to_string(e.user) +
                         " has no recommendation list");
    }
    const RecommendationList& list = lists[e.user];
    const auto position = list.position_of(e.object);
    if (!position) {
      throw DataIntegrityError("probe edge (" + std::to_string(e.user) + ", " +
                               std::to_string(e.object) +
                               ") is collected in the training set");
    }
    total += *position / static_cast<double>(list.size());
    ++out.entries;
    if (list.isolated()) ++out.isolated_entries;
  }
  out.mean = out.entries ? total / static_cast<double>(out.entries) : 0.0;
  return out;
}

double avg_recommended_degree(std::span<const RecommendationList> lists,
                              const BipartiteGraph& g, std::size_t length) {
  if (length == 0) throw ParameterError("list length must be >= 1");
  std::uint64_t degree_sum = 0;
  std::uint64_t count = 0;
  for (const auto& list : lists) {
    for (ObjectId o : list.top(length)) {
      degree_sum += g.object_degree(o);
      ++count;
    }
  }
  return count ? static_cast<double>(degree_sum) / static_cast<double>(count)
               : 0.0;
}

HammingDistance hamming_distance(std::span<const RecommendationList> lists,
                                 std::size_t n_objects, std::size_t length,
                                 unsigned threads) {
  if (length == 0) throw ParameterError("list length must be >= 1");
  const std::size_t words = (n_objects + 63) / 64;

  std::vector<std::uint64_t> bits;
  std::size_t eligible = 0;
  HammingDistance out;
  for (const auto& list : lists) {
    if (list.size() < length) {
      ++out.excluded_users;
      continue;
    }
    bits.resize((eligible + 1) * words, 0);
    std::uint64_t* row = bits.data() + eligible * words;
    for (ObjectId o : list.top(length)) row[o / 64] |= std::uint64_t{1} << (o % 64);
    ++eligible;
  }
  if (eligible < 2) return out;

  auto row = [&](std::size_t r) {
    return std::span<const std::uint64_t>(bits.data() + r * words, words);
  };
  // Row r pairs with r+1..eligible-1; the blocks split rows, and the integer
  // partial sums make the reduction order irrelevant.
  std::vector<std::uint64_t> overlap_by_row(eligible, 0);
  parallel_blocks(eligible, threads,
                  [&](std::size_t, std::size_t begin, std::size_t end) {
                    for (std::size_t r = begin; r < end; ++r) {
                      std::uint64_t q = 0;
                      for (std::size_t c = r + 1; c < eligible; ++c) {
                        q += kernels::and_popcount(row(r), row(c));
                      }
                      overlap_by_row[r] = q;
                    }
                  });
  std::uint64_t overlap = 0;
  for (std::uint64_t q : overlap_by_row) overlap += q;

  out.pairs = eligible * (eligible - 1) / 2;
  out.mean = 1.0 - static_cast<double>(overlap) /
                       (static_cast<double>(length) * static_cast<double>(out.pairs));
  return out;
}

MetricsReport evaluate_lists(std::span<const RecommendationList> lists,
                             const BipartiteGraph& train,
                             std::span<const Edge> probe,
                             std::span<const std::size_t> list_lengths,
                             unsigned threads) {
  MetricsReport report;
  report.ranking = ranking_score(lists, probe);
  for (std::size_t length : list_lengths) {
    report.avg_degree[length] = avg_recommended_degree(lists, train, length);
    report.hamming[length] =
        hamming_distance(lists, train.n_objects(), length, threads);
  }
  return report;
}

}  // namespace spreadrec
