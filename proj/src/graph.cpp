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

#include "spreadrec/graph.hpp"

#include <algorithm>
#include <string>

#include "spreadrec/errors.hpp"

namespace spreadrec {

BipartiteGraph BipartiteGraph::build(std::span<const Edge> edges,
                                     std::size_t n_users,
                                     std::size_t n_objects) {
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Edge& e = edges[i];
    if (e.user >= n_users || e.object >= n_objects) {
      throw IdRangeError("edge " + std::to_string(i) + " (user " +
                         std::to_string(e.user) + ", object " +
                         std::to_string(e.object) + ") outside " +
                         std::to_string(n_users) + "x" +
                         std::to_string(n_objects));
    }
  }

  std::vector<Edge> sorted(edges.begin(), edges.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  BipartiteGraph g;
  g.n_users_ = n_users;
  g.n_objects_ = n_objects;

  g.user_offsets_.assign(n_users + 1, 0);
  g.item_offsets_.assign(n_objects + 1, 0);
  for (const Edge& e : sorted) {
    ++g.user_offsets_[e.user + 1];
    ++g.item_offsets_[e.object + 1];
  }
  for (std::size_t u = 0; u < n_users; ++u) {
    g.user_offsets_[u + 1] += g.user_offsets_[u];
  }
  for (std::size_t o = 0; o < n_objects; ++o) {
    g.item_offsets_[o + 1] += g.item_offsets_[o];
  }

  // Edges are (user, object)-sorted, so filling in order leaves both views
  // ascending: objects within a user directly, users within an object
  // because users are visited in ascending order.
  g.user_items_.resize(sorted.size());
  g.item_users_.resize(sorted.size());
  std::vector<std::size_t> item_cursor(g.item_offsets_.begin(),
                                       g.item_offsets_.end() - 1);
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    g.user_items_[k] = sorted[k].object;
    g.item_users_[item_cursor[sorted[k].object]++] = sorted[k].user;
  }
  return g;
}

bool BipartiteGraph::has_edge(UserId u, ObjectId o) const {
  if (u >= n_users_ || o >= n_objects_) {
    throw IdRangeError("has_edge(" + std::to_string(u) + ", " +
                       std::to_string(o) + ") outside graph");
  }
  const auto items = user_items(u);
  return std::binary_search(items.begin(), items.end(), o);
}

std::vector<Edge> BipartiteGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(n_edges());
  for (UserId u = 0; u < n_users_; ++u) {
    for (ObjectId o : user_items(u)) out.push_back({u, o});
  }
  return out;
}

}  // namespace spreadrec
