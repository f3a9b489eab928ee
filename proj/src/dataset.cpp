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

#include "spreadrec/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <random>
#include <string>
#include <string_view>

#include "spreadrec/errors.hpp"

namespace spreadrec {
namespace {

bool parse_field(std::string_view field, std::int64_t& value) {
  if (field.empty()) return false;
  const char* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, value);
  return ec == std::errc() && ptr == end;
}

// Unbiased draw in [0, bound) by rejection; std::uniform_int_distribution
// is implementation-defined and would break cross-platform reproducibility.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

}  // namespace

std::vector<RatingRecord> parse_movielens(std::istream& in) {
  std::vector<RatingRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;

    std::int64_t fields[4];
    std::string_view rest = line;
    int n = 0;
    for (; n < 4; ++n) {
      const auto tab = rest.find('\t');
      const auto field = rest.substr(0, tab);
      if (!parse_field(field, fields[n])) break;
      if (tab == std::string_view::npos) {
        rest = {};
        ++n;
        break;
      }
      rest.remove_prefix(tab + 1);
    }
    if (n != 4 || !rest.empty()) {
      throw ParseError("malformed rating at line " + std::to_string(line_no) +
                           ": expected 4 tab-separated integers",
                       line_no);
    }
    if (fields[2] < 1 || fields[2] > 5) {
      throw ParseError("rating out of [1,5] at line " + std::to_string(line_no),
                       line_no);
    }
    records.push_back({fields[0], fields[1], static_cast<int>(fields[2]),
                       fields[3]});
  }
  if (records.empty()) throw ParseError("no rating records in input", 0);
  return records;
}

std::vector<RatingRecord> load_movielens(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  try {
    return parse_movielens(in);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), e.line());
  }
}

IdMap::IdMap(std::vector<std::int64_t> raw_ids) : raw_(std::move(raw_ids)) {
  std::sort(raw_.begin(), raw_.end());
  raw_.erase(std::unique(raw_.begin(), raw_.end()), raw_.end());
  index_.reserve(raw_.size());
  for (std::uint32_t i = 0; i < raw_.size(); ++i) index_.emplace(raw_[i], i);
}

CoarseGrainedData coarse_grain(std::span<const RatingRecord> records,
                               int min_rating) {
  if (records.empty()) throw ParameterError("coarse_grain: no records");

  std::vector<std::int64_t> users, items;
  users.reserve(records.size());
  items.reserve(records.size());
  for (const auto& r : records) {
    users.push_back(r.raw_user_id);
    items.push_back(r.raw_item_id);
  }
  CoarseGrainedData out{{}, IdMap(std::move(users)), IdMap(std::move(items))};

  for (const auto& r : records) {
    if (r.rating >= min_rating) {
      out.edges.push_back(
          {out.users.dense(r.raw_user_id), out.objects.dense(r.raw_item_id)});
    }
  }
  std::sort(out.edges.begin(), out.edges.end());
  out.edges.erase(std::unique(out.edges.begin(), out.edges.end()),
                  out.edges.end());
  return out;
}

SplitDataset split(std::span<const Edge> edges, std::size_t n_users,
                   std::size_t n_objects, double probe_fraction,
                   std::uint64_t seed) {
  if (!(probe_fraction > 0.0 && probe_fraction < 1.0)) {
    throw ParameterError("probe fraction must lie in (0,1), got " +
                         std::to_string(probe_fraction));
  }
  const std::size_t total = edges.size();
  const auto n_probe = static_cast<std::size_t>(
      std::floor(probe_fraction * static_cast<double>(total) + 0.5));

  // Partial Fisher-Yates: the first n_probe slots become the sample.
  std::vector<std::size_t> order(total);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  for (std::size_t k = 0; k < n_probe; ++k) {
    const std::size_t pick = k + bounded(rng, total - k);
    std::swap(order[k], order[pick]);
  }

  std::vector<char> in_probe(total, 0);
  for (std::size_t k = 0; k < n_probe; ++k) in_probe[order[k]] = 1;

  SplitDataset out;
  out.seed = seed;
  std::vector<Edge> train;
  train.reserve(total - n_probe);
  out.probe.reserve(n_probe);
  for (std::size_t i = 0; i < total; ++i) {
    (in_probe[i] ? out.probe : train).push_back(edges[i]);
  }
  std::sort(out.probe.begin(), out.probe.end());
  out.train = BipartiteGraph::build(train, n_users, n_objects);
  return out;
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::size_t run) {
  std::uint64_t z = master_seed + (run + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::vector<SplitDataset> make_splits(std::span<const Edge> edges,
                                      std::size_t n_users,
                                      std::size_t n_objects,
                                      double probe_fraction, std::size_t n_runs,
                                      std::uint64_t master_seed) {
  if (n_runs == 0) throw ParameterError("make_splits: n_runs must be >= 1");
  std::vector<SplitDataset> out;
  out.reserve(n_runs);
  for (std::size_t run = 0; run < n_runs; ++run) {
    out.push_back(split(edges, n_users, n_objects, probe_fraction,
                        derive_seed(master_seed, run)));
  }
  return out;
}

void write_split_manifest(std::ostream& out, std::span<const Edge> edges,
                          const SplitDataset& split) {
  out << "edge_index,user,object,partition\n";
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const bool probe = std::binary_search(split.probe.begin(),
                                          split.probe.end(), edges[i]);
    out << i << ',' << edges[i].user << ',' << edges[i].object << ','
        << (probe ? "probe" : "train") << '\n';
  }
}

}  // namespace spreadrec
