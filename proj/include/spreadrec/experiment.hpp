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
#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "spreadrec/dataset.hpp"
#include "spreadrec/metrics.hpp"

namespace spreadrec {

enum class Algorithm { kCf, kSa, kSaTopN };

std::string_view algorithm_name(Algorithm a);  // "cf", "sa", "sa-topn"
Algorithm parse_algorithm(std::string_view name);  // throws ParameterError

struct ParameterPoint {
  Algorithm algorithm = Algorithm::kSa;
  double beta = 1.0;                  // 1 for CF
  std::optional<std::size_t> top_n;   // set only for kSaTopN

  friend bool operator==(const ParameterPoint&, const ParameterPoint&) = default;
};

/// Default grids covering beta in [0, 2.5] and N up to the full user set.
std::vector<double> default_beta_grid();  // 0.0, 0.1, ..., 2.5
std::vector<std::size_t> default_topn_grid();  // 5, 10, ..., 640, 942

struct ExperimentConfig {
  std::filesystem::path data_path;
  double probe_fraction = 0.1;
  std::size_t n_runs = 10;
  std::uint64_t master_seed = 0;
  Algorithm algorithm = Algorithm::kSa;
  std::vector<double> beta_values{1.0};
  std::vector<std::size_t> n_values;
  std::vector<std::size_t> list_lengths{10, 20, 50};
  std::filesystem::path output_path;  // empty: do not write
  unsigned threads = 1;
};

/// Throws ParameterError on empty sweeps, non-positive list lengths, or a
/// fraction outside (0, 1).
void validate(const ExperimentConfig& cfg);

struct StageTimes {
  double similarity_s = 0.0;
  double prediction_s = 0.0;
  double metrics_s = 0.0;
};

struct RunRecord {
  std::size_t run_id = 0;
  ParameterPoint point;
  MetricsReport metrics;
  StageTimes times;
};

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation; 0 for a single run
};

MeanStd mean_std(std::span<const double> values);

struct AggregateRecord {
  ParameterPoint point;
  std::size_t runs = 0;
  MeanStd ranking_score;
  std::map<std::size_t, MeanStd> avg_degree;
  std::map<std::size_t, MeanStd> hamming;
  std::size_t isolated_entries = 0;  // summed over runs
  std::size_t probe_entries = 0;     // summed over runs
  std::map<std::size_t, std::size_t> short_lists;  // summed over runs
  StageTimes mean_times;
};

struct ExperimentReport {
  std::vector<std::size_t> list_lengths;
  std::vector<RunRecord> runs;             // run-major, then grid order
  std::vector<AggregateRecord> aggregates;  // grid order

  const AggregateRecord& aggregate(const ParameterPoint& p) const;
};

/// Evaluates every point on every split. All points see the same splits; a
/// similarity matrix is built once per (split, kind, beta) and shared by the
/// points that need it.
ExperimentReport run_grid(std::span<const SplitDataset> splits,
                          std::span<const ParameterPoint> points,
                          std::span<const std::size_t> list_lengths,
                          unsigned threads = 1);

/// Points implied by cfg.algorithm, cfg.beta_values and cfg.n_values.
/// Throws ParameterError for N outside [1, n_users - 1].
std::vector<ParameterPoint> parameter_grid(const ExperimentConfig& cfg,
                                           std::size_t n_users);

struct PreparedData {
  std::size_t n_records = 0;
  CoarseGrainedData data;
  std::vector<SplitDataset> splits;
};

/// Loads, coarse-grains and splits cfg.data_path.
PreparedData prepare(const ExperimentConfig& cfg);

/// Full pipeline for cfg.algorithm; writes the CSV when output_path is set.
ExperimentReport run_experiment(const ExperimentConfig& cfg);

/// SA over cfg.beta_values (ascending), one aggregate per beta.
ExperimentReport sweep_beta(const ExperimentConfig& cfg,
                            std::span<const SplitDataset> splits);

/// SA-topN at beta = cfg.beta_values.front() over cfg.n_values (default grid
/// when empty) clipped to m - 1, always including N = m - 1.
ExperimentReport sweep_topn(const ExperimentConfig& cfg,
                            std::span<const SplitDataset> splits);

/// Versioned CSV: a `# spreadrec report v1` line, a header, one row per run
/// and parameter point, then one aggregate row per point. Timing columns
/// (prefix `time_`) come last.
void write_report_csv(std::ostream& out, const ExperimentReport& report);
void write_report_csv(const std::filesystem::path& path,
                      const ExperimentReport& report);

}  // namespace spreadrec
