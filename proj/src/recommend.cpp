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

#include "spreadrec/recommend.hpp"

#include <cstdio>
#include <numeric>
#include <ostream>
#include <string>

#include "spreadrec/errors.hpp"
#include "spreadrec/kernels.hpp"
#include "spreadrec/parallel.hpp"

namespace spreadrec {
namespace {

// weights[i] must already be zero.
std::vector<UserId> select_neighbors(std::span<const double> weights, UserId i,
                                     std::size_t n) {
  const std::size_t m = weights.size();
  if (n < 1 || m < 2 || n > m - 1) {
    throw ParameterError("top-N neighbor count " + std::to_string(n) +
                         " outside [1, " + std::to_string(m > 0 ? m - 1 : 0) +
                         "]");
  }
  std::vector<UserId> candidates;
  candidates.reserve(m - 1);
  for (UserId l = 0; l < m; ++l) {
    if (l != i) candidates.push_back(l);
  }
  std::partial_sort(candidates.begin(), candidates.begin() + n,
                    candidates.end(), [&](UserId a, UserId b) {
                      if (weights[a] != weights[b]) return weights[a] > weights[b];
                      return a < b;
                    });
  candidates.resize(n);
  return candidates;
}

}  // namespace

std::optional<double> ScoreVector::score(ObjectId o) const {
  const auto it = std::lower_bound(objects.begin(), objects.end(), o);
  if (it == objects.end() || *it != o) return std::nullopt;
  return scores[it - objects.begin()];
}

RecommendationList::RecommendationList(UserId user, bool isolated,
                                       std::vector<ObjectId> ranked,
                                       std::vector<double> scores,
                                       std::vector<double> positions)
    : user_(user),
      isolated_(isolated),
      ranked_(std::move(ranked)),
      scores_(std::move(scores)),
      positions_(std::move(positions)) {
  std::vector<std::size_t> order(ranked_.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return ranked_[a] < ranked_[b]; });
  sorted_objects_.reserve(order.size());
  sorted_positions_.reserve(order.size());
  for (std::size_t k : order) {
    sorted_objects_.push_back(ranked_[k]);
    sorted_positions_.push_back(positions_[k]);
  }
}

std::optional<double> RecommendationList::position_of(ObjectId o) const {
  const auto it =
      std::lower_bound(sorted_objects_.begin(), sorted_objects_.end(), o);
  if (it == sorted_objects_.end() || *it != o) return std::nullopt;
  return sorted_positions_[it - sorted_objects_.begin()];
}

Predictor::Predictor(const BipartiteGraph& g, const SimilarityMatrix& s)
    : g_(g), s_(s), weights_(g.n_users(), 0.0), accum_(g.n_objects(), 0.0) {
  if (g.n_users() != s.n_users()) {
    throw ParameterError("similarity matrix has " + std::to_string(s.n_users()) +
                         " users, graph has " + std::to_string(g.n_users()));
  }
}

void Predictor::load_weights(UserId i) {
  if (i >= g_.n_users()) {
    throw IdRangeError("user " + std::to_string(i) + " outside graph");
  }
  s_.scatter_column(i, weights_);
  weights_[i] = 0.0;
}

ScoreVector Predictor::empty_scores(UserId i) const {
  ScoreVector v;
  v.user = i;
  const auto collected = g_.user_items(i);
  v.objects.reserve(g_.n_objects() - collected.size());
  auto next = collected.begin();
  for (ObjectId o = 0; o < g_.n_objects(); ++o) {
    if (next != collected.end() && *next == o) {
      ++next;
      continue;
    }
    v.objects.push_back(o);
  }
  v.scores.assign(v.objects.size(), 0.0);
  return v;
}

ScoreVector Predictor::predict(UserId i) {
  load_weights(i);
  ScoreVector v = empty_scores(i);
  const double denominator = kernels::sum(weights_);
  if (!(denominator > 0.0)) {
    v.isolated = true;
    return v;
  }
  for (std::size_t k = 0; k < v.objects.size(); ++k) {
    const double numerator =
        kernels::gather_sum(weights_, g_.item_users(v.objects[k]));
    v.scores[k] = std::min(numerator / denominator, 1.0);
  }
  return v;
}

ScoreVector Predictor::predict_topn(UserId i, std::size_t n) {
  std::vector<UserId> neighbors = top_neighbors(i, n);
  std::sort(neighbors.begin(), neighbors.end());

  ScoreVector v = empty_scores(i);
  double denominator = 0.0;
  for (UserId l : neighbors) denominator += weights_[l];
  if (!(denominator > 0.0)) {
    v.isolated = true;
    return v;
  }
  // Ascending neighbor order gives each object the same term order as the
  // gather over its sorted user list in predict().
  std::fill(accum_.begin(), accum_.end(), 0.0);
  for (UserId l : neighbors) {
    const double w = weights_[l];
    if (w == 0.0) continue;
    for (ObjectId o : g_.user_items(l)) accum_[o] += w;
  }
  for (std::size_t k = 0; k < v.objects.size(); ++k) {
    v.scores[k] = std::min(accum_[v.objects[k]] / denominator, 1.0);
  }
  return v;
}

std::vector<UserId> Predictor::top_neighbors(UserId i, std::size_t n) {
  load_weights(i);
  return select_neighbors(weights_, i, n);
}

ScoreVector predict_scores(const BipartiteGraph& g, const SimilarityMatrix& s,
                           UserId i) {
  return Predictor(g, s).predict(i);
}

ScoreVector predict_scores_topn(const BipartiteGraph& g,
                                const SimilarityMatrix& s, UserId i,
                                std::size_t n) {
  return Predictor(g, s).predict_topn(i, n);
}

std::vector<UserId> top_neighbors(const SimilarityMatrix& s, UserId i,
                                  std::size_t n) {
  if (i >= s.n_users()) {
    throw IdRangeError("user " + std::to_string(i) + " outside matrix");
  }
  std::vector<double> weights(s.n_users());
  s.scatter_column(i, weights);
  weights[i] = 0.0;
  return select_neighbors(weights, i, n);
}

RecommendationList rank_uncollected(const ScoreVector& v) {
  const std::size_t count = v.objects.size();
  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), std::size_t{0});
  // objects are ascending, so a stable sort keeps ties in id order.
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return v.scores[a] > v.scores[b];
  });

  std::vector<ObjectId> ranked(count);
  std::vector<double> scores(count);
  for (std::size_t k = 0; k < count; ++k) {
    ranked[k] = v.objects[order[k]];
    scores[k] = v.scores[order[k]];
  }

  std::vector<double> positions(count);
  std::size_t block_start = 0;
  for (std::size_t k = 1; k <= count; ++k) {
    if (k == count || scores[k - 1] - scores[k] > kTieTolerance) {
      // ranks block_start+1 .. k share their mean
      const double mid = 0.5 * static_cast<double>(block_start + 1 + k);
      std::fill(positions.begin() + block_start, positions.begin() + k, mid);
      block_start = k;
    }
  }
  return RecommendationList(v.user, v.isolated, std::move(ranked),
                            std::move(scores), std::move(positions));
}

RecommendationList recommend_for_user(const BipartiteGraph& g,
                                      const SimilarityMatrix& s, UserId i,
                                      std::optional<std::size_t> top_n) {
  Predictor predictor(g, s);
  return rank_uncollected(top_n ? predictor.predict_topn(i, *top_n)
                                : predictor.predict(i));
}

std::vector<RecommendationList> recommend_all(const BipartiteGraph& g,
                                              const SimilarityMatrix& s,
                                              std::optional<std::size_t> top_n,
                                              unsigned threads) {
  std::vector<RecommendationList> lists(g.n_users());
  parallel_blocks(g.n_users(), threads,
                  [&](std::size_t, std::size_t begin, std::size_t end) {
                    Predictor predictor(g, s);
                    for (std::size_t u = begin; u < end; ++u) {
                      const auto i = static_cast<UserId>(u);
                      lists[u] = rank_uncollected(
                          top_n ? predictor.predict_topn(i, *top_n)
                                : predictor.predict(i));
                    }
                  });
  return lists;
}

void write_recommendations_csv(std::ostream& out,
                               std::span<const RecommendationList> lists,
                               std::size_t length) {
  out << "user,rank,object,score\n";
  char buf[32];
  for (const auto& list : lists) {
    const auto top = list.top(length);
    for (std::size_t k = 0; k < top.size(); ++k) {
      std::snprintf(buf, sizeof buf, "%.17g", list.scores()[k]);
      out << list.user() << ',' << k + 1 << ',' << top[k] << ',' << buf << '\n';
    }
  }
}

}  // namespace spreadrec
