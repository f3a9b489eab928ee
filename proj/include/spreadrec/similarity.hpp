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

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "spreadrec/graph.hpp"

namespace spreadrec {

enum class SimilarityKind { kCf, kSa };

/// User-user weights s(i, j): the share of user j's resource that ends up
/// at user i. Stored column-compressed: column j lists the receivers i with
/// s(i, j) > 0 in ascending order, so the weights a user hands out are
/// contiguous. CF weights are symmetric; SA weights generally are not.
class SimilarityMatrix {
 public:
  struct Column {
    std::span<const UserId> receivers;
    std::span<const double> weights;
  };

  SimilarityMatrix() = default;
  SimilarityMatrix(std::size_t n_users, SimilarityKind kind, double beta,
                   std::vector<std::size_t> offsets,
                   std::vector<UserId> receivers, std::vector<double> weights);

  std::size_t n_users() const noexcept { return n_users_; }
  SimilarityKind kind() const noexcept { return kind_; }
  // 1 for CF by convention.
  double beta() const noexcept { return beta_; }
  std::size_t nonzeros() const noexcept { return weights_.size(); }

  /// s(i, j). Zero for pairs that share no object.
  double weight(UserId i, UserId j) const;

  /// Nonzero weights s(., j) handed out by user j.
  Column spread_from(UserId j) const {
    return {{receivers_.data() + offsets_[j], receivers_.data() + offsets_[j + 1]},
            {weights_.data() + offsets_[j], weights_.data() + offsets_[j + 1]}};
  }

  /// Writes s(., j) densely into out (size n_users), zeros elsewhere.
  void scatter_column(UserId j, std::span<double> out) const;

 private:
  std::size_t n_users_ = 0;
  SimilarityKind kind_ = SimilarityKind::kSa;
  double beta_ = 1.0;
  std::vector<std::size_t> offsets_{0};
  std::vector<UserId> receivers_;
  std::vector<double> weights_;
};

/// Overlap correlation |common objects| / min(k(u_i), k(u_j)). Pairs with a
/// zero-degree user get 0; the diagonal is 1 for every user with k > 0.
SimilarityMatrix cf_similarity(const BipartiteGraph& g, unsigned threads = 1);

/// Spreading-activation weights
///   s(i, j) = 1/k(u_j) * sum_o a(o,i) a(o,j) / k(o)^beta
/// computed by two-hop traversal j -> objects of j -> users of those objects.
/// Per entry the terms are added in ascending object order. Columns of
/// zero-degree users are empty. Throws ParameterError for non-finite beta.
SimilarityMatrix sa_similarity(const BipartiteGraph& g, double beta,
                               unsigned threads = 1);

/// CSV `i,j,s_ij` for every nonzero entry, column by column.
void write_similarity_csv(std::ostream& out, const SimilarityMatrix& s);

}  // namespace spreadrec
