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
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <unordered_map>
#include <vector>

#include "spreadrec/graph.hpp"

namespace spreadrec {

struct RatingRecord {
  std::int64_t raw_user_id = 0;
  std::int64_t raw_item_id = 0;
  int rating = 0;  // 1..5
  std::int64_t timestamp = 0;

  friend bool operator==(const RatingRecord&, const RatingRecord&) = default;
};

/// Parses MovieLens `u.data` text: `user \t item \t rating \t timestamp`,
/// LF or CRLF line endings. Throws ParseError with the 1-based line number
/// of the first malformed line, or line 0 for an input with no records.
std::vector<RatingRecord> parse_movielens(std::istream& in);
std::vector<RatingRecord> load_movielens(const std::filesystem::path& path);

/// Dense 0-based ids, assigned in ascending raw-id order.
class IdMap {
 public:
  explicit IdMap(std::vector<std::int64_t> raw_ids);
  IdMap() = default;

  std::size_t size() const noexcept { return raw_.size(); }
  std::int64_t raw(std::uint32_t dense) const { return raw_.at(dense); }
  std::uint32_t dense(std::int64_t raw) const { return index_.at(raw); }

 private:
  std::vector<std::int64_t> raw_;
  std::unordered_map<std::int64_t, std::uint32_t> index_;
};

struct CoarseGrainedData {
  std::vector<Edge> edges;  // deduplicated, (user, object) ascending
  IdMap users;
  IdMap objects;

  std::size_t n_users() const noexcept { return users.size(); }
  std::size_t n_objects() const noexcept { return objects.size(); }
};

inline constexpr int kCollectedMinRating = 3;

/// Keeps ratings >= min_rating as collected edges. The id maps cover every
/// raw id in `records`, so users and movies whose ratings were all dropped
/// keep their slot and the dimensions match the raw dataset.
CoarseGrainedData coarse_grain(std::span<const RatingRecord> records,
                               int min_rating = kCollectedMinRating);

struct SplitDataset {
  BipartiteGraph train;
  std::vector<Edge> probe;  // (user, object) ascending
  std::uint64_t seed = 0;
};

/// Uniform sample without replacement of round-half-up(fraction * |edges|)
/// probe edges; the rest form the training graph with full dimensions.
/// Reproducible across platforms for a given seed.
SplitDataset split(std::span<const Edge> edges, std::size_t n_users,
                   std::size_t n_objects, double probe_fraction,
                   std::uint64_t seed);

/// Seed of run `run`: splitmix64(master_seed + (run + 1) * 0x9E3779B97F4A7C15).
std::uint64_t derive_seed(std::uint64_t master_seed, std::size_t run);

std::vector<SplitDataset> make_splits(std::span<const Edge> edges,
                                      std::size_t n_users,
                                      std::size_t n_objects,
                                      double probe_fraction, std::size_t n_runs,
                                      std::uint64_t master_seed);

/// CSV `edge_index,user,object,partition` with partition in {train, probe};
/// edge_index refers to the position in `edges`.
void write_split_manifest(std::ostream& out, std::span<const Edge> edges,
                          const SplitDataset& split);

}  // namespace spreadrec
