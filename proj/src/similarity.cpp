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

#include "spreadrec/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include "spreadrec/errors.hpp"
#include "spreadrec/kernels.hpp"
#include "spreadrec/parallel.hpp"

namespace spreadrec {

SimilarityMatrix::SimilarityMatrix(std::size_t n_users, SimilarityKind kind,
                                   double beta,
                                   std::vector<std::size_t> offsets,
                                   std::vector<UserId> receivers,
                                   std::vector<double> weights)
    : n_users_(n_users),
      kind_(kind),
      beta_(beta),
      offsets_(std::move(offsets)),
      receivers_(std::move(receivers)),
      weights_(std::move(weights)) {}

double SimilarityMatrix::weight(UserId i, UserId j) const {
  if (i >= n_users_ || j >= n_users_) {
    throw IdRangeError("similarity entry (" + std::to_string(i) + ", " +
                       std::to_string(j) + ") outside matrix");
  }
  const auto col = spread_from(j);
  const auto it =
      std::lower_bound(col.receivers.begin(), col.receivers.end(), i);
  if (it == col.receivers.end() || *it != i) return 0.0;
  return col.weights[it - col.receivers.begin()];
}

void SimilarityMatrix::scatter_column(UserId j, std::span<double> out) const {
  std::fill(out.begin(), out.end(), 0.0);
  const auto col = spread_from(j);
  for (std::size_t k = 0; k < col.receivers.size(); ++k) {
    out[col.receivers[k]] = col.weights[k];
  }
}

namespace {

// Accumulates one column at a time in a dense scratch vector, touching only
// the two-hop neighborhood so a column costs O(sum of k(o) over o in j)
// instead of O(m).
class ColumnAccumulator {
 public:
  explicit ColumnAccumulator(std::size_t n_users)
      : acc_(n_users, 0.0), seen_(n_users, 0) {}

  void add(UserId i, double w) {
    if (!seen_[i]) {
      seen_[i] = 1;
      touched_.push_back(i);
    }
    acc_[i] += w;
  }

  // Emits (receiver, transform(receiver, value)) in ascending receiver
  // order and resets the touched slots.
  template <typename Transform>
  void flush(std::vector<UserId>& receivers, std::vector<double>& weights,
             Transform&& transform) {
    std::sort(touched_.begin(), touched_.end());
    for (UserId i : touched_) {
      receivers.push_back(i);
      weights.push_back(transform(i, acc_[i]));
      acc_[i] = 0.0;
      seen_[i] = 0;
    }
    touched_.clear();
  }

 private:
  std::vector<double> acc_;
  std::vector<char> seen_;
  std::vector<UserId> touched_;
};

// Builds the column-compressed matrix; column_body(j, acc, receivers,
// weights) appends column j.
template <typename ColumnBody>
SimilarityMatrix build_columns(const BipartiteGraph& g, SimilarityKind kind,
                               double beta, unsigned threads,
                               ColumnBody&& column_body) {
  const std::size_t m = g.n_users();
  struct Block {
    std::vector<std::size_t> sizes;
    std::vector<UserId> receivers;
    std::vector<double> weights;
  };
  const unsigned workers = std::max(1u, threads);
  std::vector<Block> blocks(std::min<std::size_t>(workers, std::max<std::size_t>(m, 1)));

  parallel_blocks(m, workers, [&](std::size_t b, std::size_t begin,
                                  std::size_t end) {
    Block& block = blocks[b];
    ColumnAccumulator acc(m);
    for (std::size_t j = begin; j < end; ++j) {
      const std::size_t before = block.weights.size();
      column_body(static_cast<UserId>(j), acc, block.receivers, block.weights);
      block.sizes.push_back(block.weights.size() - before);
    }
  });

  std::vector<std::size_t> offsets{0};
  offsets.reserve(m + 1);
  std::vector<UserId> receivers;
  std::vector<double> weights;
  for (auto& block : blocks) {
    for (std::size_t size : block.sizes) offsets.push_back(offsets.back() + size);
    receivers.insert(receivers.end(), block.receivers.begin(),
                     block.receivers.end());
    weights.insert(weights.end(), block.weights.begin(), block.weights.end());
  }
  return SimilarityMatrix(m, kind, beta, std::move(offsets),
                          std::move(receivers), std::move(weights));
}

}  // namespace

SimilarityMatrix cf_similarity(const BipartiteGraph& g, unsigned threads) {
  return build_columns(
      g, SimilarityKind::kCf, 1.0, threads,
      [&g](UserId j, ColumnAccumulator& acc, std::vector<UserId>& receivers,
           std::vector<double>& weights) {
        const std::size_t kj = g.user_degree(j);
        for (ObjectId o : g.user_items(j)) {
          for (UserId i : g.item_users(o)) acc.add(i, 1.0);
        }
        acc.flush(receivers, weights, [&](UserId i, double overlap) {
          return overlap / static_cast<double>(std::min(kj, g.user_degree(i)));
        });
      });
}

SimilarityMatrix sa_similarity(const BipartiteGraph& g, double beta,
                               unsigned threads) {
  if (!std::isfinite(beta)) {
    throw ParameterError("beta must be finite, got " + std::to_string(beta));
  }
  // k(o)^-beta per object; exact reciprocals for the common beta = 1 case.
  std::vector<double> object_weight(g.n_objects(), 0.0);
  for (ObjectId o = 0; o < g.n_objects(); ++o) {
    const auto k = static_cast<double>(g.object_degree(o));
    if (k == 0.0) continue;
    object_weight[o] = beta == 1.0   ? 1.0 / k
                       : beta == 0.0 ? 1.0
                                     : 1.0 / std::pow(k, beta);
  }

  return build_columns(
      g, SimilarityKind::kSa, beta, threads,
      [&](UserId j, ColumnAccumulator& acc, std::vector<UserId>& receivers,
          std::vector<double>& weights) {
        const std::size_t kj = g.user_degree(j);
        if (kj == 0) return;
        for (ObjectId o : g.user_items(j)) {
          const double w = object_weight[o];
          for (UserId i : g.item_users(o)) acc.add(i, w);
        }
        const std::size_t first = weights.size();
        acc.flush(receivers, weights, [](UserId, double v) { return v; });
        kernels::scale(std::span<double>(weights).subspan(first),
                       1.0 / static_cast<double>(kj));
      });
}

void write_similarity_csv(std::ostream& out, const SimilarityMatrix& s) {
  out << "i,j,s_ij\n";
  char buf[32];
  for (UserId j = 0; j < s.n_users(); ++j) {
    const auto col = s.spread_from(j);
    for (std::size_t k = 0; k < col.receivers.size(); ++k) {
      std::snprintf(buf, sizeof buf, "%.17g", col.weights[k]);
      out << col.receivers[k] << ',' << j << ',' << buf << '\n';
    }
  }
}

}  // namespace spreadrec
