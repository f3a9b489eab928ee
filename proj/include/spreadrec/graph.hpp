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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace spreadrec {

using UserId = std::uint32_t;
using ObjectId = std::uint32_t;

struct Edge {
  UserId user = 0;
  ObjectId object = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Immutable unweighted user-object bipartite graph.
///
/// Both incidence views are stored in compressed form (offsets + ids), each
/// adjacency list sorted ascending. Every downstream summation iterates these
/// lists in order, which fixes the floating-point evaluation order.
class BipartiteGraph {
 public:
  BipartiteGraph() = default;

  /// Builds a graph from an edge list. Duplicate edges collapse to one.
  /// Throws IdRangeError naming the first edge with an id out of range.
  static BipartiteGraph build(std::span<const Edge> edges, std::size_t n_users,
                              std::size_t n_objects);

  std::size_t n_users() const noexcept { return n_users_; }
  std::size_t n_objects() const noexcept { return n_objects_; }
  std::size_t n_edges() const noexcept { return user_items_.size(); }

  std::span<const ObjectId> user_items(UserId u) const {
    return {user_items_.data() + user_offsets_[u],
            user_items_.data() + user_offsets_[u + 1]};
  }
  std::span<const UserId> item_users(ObjectId o) const {
    return {item_users_.data() + item_offsets_[o],
            item_users_.data() + item_offsets_[o + 1]};
  }
  std::size_t user_degree(UserId u) const {
    return user_offsets_[u + 1] - user_offsets_[u];
  }
  std::size_t object_degree(ObjectId o) const {
    return item_offsets_[o + 1] - item_offsets_[o];
  }

  /// Binary search in the user's item list. Throws IdRangeError.
  bool has_edge(UserId u, ObjectId o) const;

  /// All edges in (user, object) ascending order.
  std::vector<Edge> edges() const;

 private:
  std::size_t n_users_ = 0;
  std::size_t n_objects_ = 0;
  std::vector<std::size_t> user_offsets_{0};
  std::vector<ObjectId> user_items_;
  std::vector<std::size_t> item_offsets_{0};
  std::vector<UserId> item_users_;
};

}  // namespace spreadrec
