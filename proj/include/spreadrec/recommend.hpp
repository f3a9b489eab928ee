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

#pragma once

#include <algorithm>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "spreadrec/graph.hpp"
#include "spreadrec/similarity.hpp"

namespace spreadrec {

// Scores closer than this are one tied block when ranking. Scores live in
// [0, 1]; the gap absorbs summation-order rounding between kernel levels.
inline constexpr double kTieTolerance = 1e-12;

/// Predicted scores for the objects a user has not collected.
struct ScoreVector {
  UserId user = 0;
  std::vector<ObjectId> objects;  // uncollected, ascending
  std::vector<double> scores;     // parallel to objects, each in [0, 1]
  // No similarity mass reached the user (e.g. zero training degree); all
  // scores are then 0.
  bool isolated = false;

  std::optional<double> score(ObjectId o) const;
};

/// Uncollected objects in descending score order. Objects within a tied
/// block are listed by ascending id and share the block's mid-rank.
class RecommendationList {
 public:
  RecommendationList() = default;
  RecommendationList(UserId user, bool isolated, std::vector<ObjectId> ranked,
                     std::vector<double> scores, std::vector<double> positions);

  UserId user() const noexcept { return user_; }
  bool isolated() const noexcept { return isolated_; }
  std::size_t size() const noexcept { return ranked_.size(); }

  std::span<const ObjectId> ranked() const noexcept { return ranked_; }
  std::span<const double> scores() const noexcept { return scores_; }
  // 1-based mid-rank of ranked()[k].
  std::span<const double> positions() const noexcept { return positions_; }

  /// First min(L, size()) entries.
  std::span<const ObjectId> top(std::size_t length) const {
    return std::span<const ObjectId>(ranked_).first(std::min(length, size()));
  }

  /// Mid-rank of `o`, or nullopt when `o` is not in the list.
  std::optional<double> position_of(ObjectId o) const;

 private:
  UserId user_ = 0;
  bool isolated_ = false;
  std::vector<ObjectId> ranked_;
  std::vector<double> scores_;
  std::vector<double> positions_;
  std::vector<ObjectId> sorted_objects_;
  std::vector<double> sorted_positions_;
};

/// Weighted-vote prediction for target user i over every other user l:
///   v(i, o) = sum_{l != i} s(l, i) a(o, l) / sum_{l != i} s(l, i).
/// Reuses scratch buffers, so keep one per thread.
class Predictor {
 public:
  /// Throws ParameterError when g and s disagree on the user count.
  Predictor(const BipartiteGraph& g, const SimilarityMatrix& s);

  ScoreVector predict(UserId i);

  /// Same sum restricted to top_neighbors(i, n). With n = m - 1 and scalar
  /// kernels the result matches predict() bit for bit.
  ScoreVector predict_topn(UserId i, std::size_t n);

  /// The n users l != i with the largest s(l, i), ties by ascending id.
  /// Throws ParameterError unless 1 <= n <= m - 1.
  std::vector<UserId> top_neighbors(UserId i, std::size_t n);

 private:
  void load_weights(UserId i);
  ScoreVector empty_scores(UserId i) const;

  const BipartiteGraph& g_;
  const SimilarityMatrix& s_;
  std::vector<double> weights_;  // s(., i) with the self entry zeroed
  std::vector<double> accum_;    // per-object numerators (top-N path)
};

ScoreVector predict_scores(const BipartiteGraph& g, const SimilarityMatrix& s,
                           UserId i);
ScoreVector predict_scores_topn(const BipartiteGraph& g,
                                const SimilarityMatrix& s, UserId i,
                                std::size_t n);
std::vector<UserId> top_neighbors(const SimilarityMatrix& s, UserId i,
                                  std::size_t n);

RecommendationList rank_uncollected(const ScoreVector& v);

/// predict (optionally top-N truncated) then rank, for one user.
RecommendationList recommend_for_user(const BipartiteGraph& g,
                                      const SimilarityMatrix& s, UserId i,
                                      std::optional<std::size_t> top_n = {});

/// Lists for every user, index = user id.
std::vector<RecommendationList> recommend_all(
    const BipartiteGraph& g, const SimilarityMatrix& s,
    std::optional<std::size_t> top_n = {}, unsigned threads = 1);

/// CSV `user,rank,object,score` with the first `length` entries per user.
void write_recommendations_csv(std::ostream& out,
                               std::span<const RecommendationList> lists,
                               std::size_t length);

}  // namespace spreadrec
