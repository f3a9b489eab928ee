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

#include "spreadrec/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <string>

#include "spreadrec/errors.hpp"
#include "spreadrec/recommend.hpp"
#include "spreadrec/similarity.hpp"

namespace spreadrec {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_beta(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

bool same_similarity(const ParameterPoint& a, const ParameterPoint& b) {
  const bool a_cf = a.algorithm == Algorithm::kCf;
  const bool b_cf = b.algorithm == Algorithm::kCf;
  return a_cf == b_cf && (a_cf || a.beta == b.beta);
}

}  // namespace

std::string_view algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::kCf:
      return "cf";
    case Algorithm::kSa:
      return "sa";
    case Algorithm::kSaTopN:
      return "sa-topn";
  }
  return "unknown";
}

Algorithm parse_algorithm(std::string_view name) {
  for (Algorithm a : {Algorithm::kCf, Algorithm::kSa, Algorithm::kSaTopN}) {
    if (name == algorithm_name(a)) return a;
  }
  throw ParameterError("unknown algorithm '" + std::string(name) +
                       "' (expected cf, sa or sa-topn)");
}

std::vector<double> default_beta_grid() {
  std::vector<double> grid;
  for (int k = 0; k <= 25; ++k) grid.push_back(k / 10.0);
  return grid;
}

std::vector<std::size_t> default_topn_grid() {
  return {5, 10, 20, 40, 80, 160, 320, 640, 942};
}

void validate(const ExperimentConfig& cfg) {
  if (!(cfg.probe_fraction > 0.0 && cfg.probe_fraction < 1.0)) {
    throw ParameterError("probe fraction must lie in (0,1)");
  }
  if (cfg.n_runs == 0) throw ParameterError("runs must be >= 1");
  if (cfg.beta_values.empty()) throw ParameterError("beta sweep is empty");
  for (double b : cfg.beta_values) {
    if (!std::isfinite(b)) throw ParameterError("beta must be finite");
  }
  if (cfg.algorithm == Algorithm::kSaTopN && cfg.n_values.empty()) {
    throw ParameterError("sa-topn needs at least one --top-n value");
  }
  if (cfg.list_lengths.empty()) throw ParameterError("no list lengths given");
  for (std::size_t l : cfg.list_lengths) {
    if (l == 0) throw ParameterError("list lengths must be positive");
  }
}

MeanStd mean_std(std::span<const double> values) {
  MeanStd out;
  if (values.empty()) return out;
  double total = 0.0;
  for (double v : values) total += v;
  out.mean = total / static_cast<double>(values.size());
  if (values.size() > 1) {
    double sq = 0.0;
    for (double v : values) sq += (v - out.mean) * (v - out.mean);
    out.std = std::sqrt(sq / static_cast<double>(values.size() - 1));
  }
  return out;
}

const AggregateRecord& ExperimentReport::aggregate(
    const ParameterPoint& p) const {
  for (const auto& a : aggregates) {
    if (a.point == p) return a;
  }
  throw ParameterError("no aggregate for requested parameter point");
}

ExperimentReport run_grid(std::span<const SplitDataset> splits,
                          std::span<const ParameterPoint> points,
                          std::span<const std::size_t> list_lengths,
                          unsigned threads) {
  ExperimentReport report;
  report.list_lengths.assign(list_lengths.begin(), list_lengths.end());

  for (std::size_t run = 0; run < splits.size(); ++run) {
    const SplitDataset& split = splits[run];
    std::optional<ParameterPoint> built_for;
    SimilarityMatrix similarity;
    double similarity_s = 0.0;

    for (const ParameterPoint& point : points) {
      if (!built_for || !same_similarity(*built_for, point)) {
        const auto start = Clock::now();
        similarity = point.algorithm == Algorithm::kCf
                         ? cf_similarity(split.train, threads)
                         : sa_similarity(split.train, point.beta, threads);
        similarity_s = seconds_since(start);
        built_for = point;
      }

      RunRecord record{run, point, {}, {}};
      record.times.similarity_s = similarity_s;

      auto start = Clock::now();
      const auto lists =
          recommend_all(split.train, similarity, point.top_n, threads);
      record.times.prediction_s = seconds_since(start);

      start = Clock::now();
      record.metrics = evaluate_lists(lists, split.train, split.probe,
                                      list_lengths, threads);
      record.times.metrics_s = seconds_since(start);
      report.runs.push_back(std::move(record));
    }
  }

  for (const ParameterPoint& point : points) {
    AggregateRecord agg;
    agg.point = point;
    std::vector<double> ranking;
    std::map<std::size_t, std::vector<double>> degree, hamming;
    for (const RunRecord& r : report.runs) {
      if (!(r.point == point)) continue;
      ++agg.runs;
      ranking.push_back(r.metrics.ranking.mean);
      agg.isolated_entries += r.metrics.ranking.isolated_entries;
      agg.probe_entries += r.metrics.ranking.entries;
      for (std::size_t l : list_lengths) {
        degree[l].push_back(r.metrics.avg_degree.at(l));
        hamming[l].push_back(r.metrics.hamming.at(l).mean);
        agg.short_lists[l] += r.metrics.hamming.at(l).excluded_users;
      }
      agg.mean_times.similarity_s += r.times.similarity_s;
      agg.mean_times.prediction_s += r.times.prediction_s;
      agg.mean_times.metrics_s += r.times.metrics_s;
    }
    agg.ranking_score = mean_std(ranking);
    for (std::size_t l : list_lengths) {
      agg.avg_degree[l] = mean_std(degree[l]);
      agg.hamming[l] = mean_std(hamming[l]);
    }
    if (agg.runs > 0) {
      const auto n = static_cast<double>(agg.runs);
      agg.mean_times.similarity_s /= n;
      agg.mean_times.prediction_s /= n;
      agg.mean_times.metrics_s /= n;
    }
    report.aggregates.push_back(std::move(agg));
  }
  return report;
}

std::vector<ParameterPoint> parameter_grid(const ExperimentConfig& cfg,
                                           std::size_t n_users) {
  std::vector<ParameterPoint> points;
  switch (cfg.algorithm) {
    case Algorithm::kCf:
      points.push_back({Algorithm::kCf, 1.0, std::nullopt});
      break;
    case Algorithm::kSa:
      for (double b : cfg.beta_values) points.push_back({Algorithm::kSa, b, {}});
      break;
    case Algorithm::kSaTopN:
      for (double b : cfg.beta_values) {
        for (std::size_t n : cfg.n_values) {
          if (n < 1 || n + 1 > n_users) {
            throw ParameterError("top-N value " + std::to_string(n) +
                                 " outside [1, " + std::to_string(n_users - 1) +
                                 "]");
          }
          points.push_back({Algorithm::kSaTopN, b, n});
        }
      }
      break;
  }
  return points;
}

PreparedData prepare(const ExperimentConfig& cfg) {
  validate(cfg);
  PreparedData out;
  const auto records = load_movielens(cfg.data_path);
  out.n_records = records.size();
  out.data = coarse_grain(records);
  out.splits = make_splits(out.data.edges, out.data.n_users(),
                           out.data.n_objects(), cfg.probe_fraction,
                           cfg.n_runs, cfg.master_seed);
  return out;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  const PreparedData prepared = prepare(cfg);
  const auto points = parameter_grid(cfg, prepared.data.n_users());
  ExperimentReport report =
      run_grid(prepared.splits, points, cfg.list_lengths, cfg.threads);
  if (!cfg.output_path.empty()) write_report_csv(cfg.output_path, report);
  return report;
}

ExperimentReport sweep_beta(const ExperimentConfig& cfg,
                            std::span<const SplitDataset> splits) {
  validate(cfg);
  if (!std::is_sorted(cfg.beta_values.begin(), cfg.beta_values.end())) {
    throw ParameterError("beta sweep values must be ascending");
  }
  std::vector<ParameterPoint> points;
  for (double b : cfg.beta_values) points.push_back({Algorithm::kSa, b, {}});
  return run_grid(splits, points, cfg.list_lengths, cfg.threads);
}

ExperimentReport sweep_topn(const ExperimentConfig& cfg,
                            std::span<const SplitDataset> splits) {
  ExperimentConfig local = cfg;
  if (local.n_values.empty()) local.n_values = default_topn_grid();
  local.algorithm = Algorithm::kSaTopN;
  validate(local);
  if (splits.empty()) throw ParameterError("sweep_topn: no splits");

  const std::size_t m = splits.front().train.n_users();
  if (m < 2) throw ParameterError("sweep_topn needs at least two users");
  std::vector<std::size_t> ns;
  for (std::size_t n : local.n_values) {
    if (n >= 1 && n <= m - 1) ns.push_back(n);
  }
  ns.push_back(m - 1);
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());

  std::vector<ParameterPoint> points;
  for (std::size_t n : ns) {
    points.push_back({Algorithm::kSaTopN, local.beta_values.front(), n});
  }
  return run_grid(splits, points, local.list_lengths, local.threads);
}

void write_report_csv(std::ostream& out, const ExperimentReport& report) {
  out << "# spreadrec report v1\n";
  out << "row_type,run_id,algorithm,beta,top_n,ranking_score,ranking_score_std";
  for (std::size_t l : report.list_lengths) {
    out << ",avg_degree@" << l << ",avg_degree@" << l << "_std";
  }
  for (std::size_t l : report.list_lengths) {
    out << ",hamming@" << l << ",hamming@" << l << "_std";
  }
  for (std::size_t l : report.list_lengths) out << ",short_lists@" << l;
  out << ",isolated_entries,probe_entries"
      << ",time_similarity_s,time_prediction_s,time_metrics_s\n";

  auto point_columns = [&](const ParameterPoint& p) {
    out << algorithm_name(p.algorithm) << ',' << fmt_beta(p.beta) << ',';
    if (p.top_n) out << *p.top_n;
  };

  for (const RunRecord& r : report.runs) {
    out << "run," << r.run_id << ',';
    point_columns(r.point);
    out << ',' << fmt_real(r.metrics.ranking.mean) << ',';
    for (std::size_t l : report.list_lengths) {
      out << ',' << fmt_real(r.metrics.avg_degree.at(l)) << ',';
    }
    for (std::size_t l : report.list_lengths) {
      out << ',' << fmt_real(r.metrics.hamming.at(l).mean) << ',';
    }
    for (std::size_t l : report.list_lengths) {
      out << ',' << r.metrics.hamming.at(l).excluded_users;
    }
    out << ',' << r.metrics.ranking.isolated_entries << ','
        << r.metrics.ranking.entries << ',' << fmt_real(r.times.similarity_s)
        << ',' << fmt_real(r.times.prediction_s) << ','
        << fmt_real(r.times.metrics_s) << '\n';
  }
  for (const AggregateRecord& a : report.aggregates) {
    out << "aggregate,,";
    point_columns(a.point);
    out << ',' << fmt_real(a.ranking_score.mean) << ','
        << fmt_real(a.ranking_score.std);
    for (std::size_t l : report.list_lengths) {
      out << ',' << fmt_real(a.avg_degree.at(l).mean) << ','
          << fmt_real(a.avg_degree.at(l).std);
    }
    for (std::size_t l : report.list_lengths) {
      out << ',' << fmt_real(a.hamming.at(l).mean) << ','
          << fmt_real(a.hamming.at(l).std);
    }
    for (std::size_t l : report.list_lengths) out << ',' << a.short_lists.at(l);
    out << ',' << a.isolated_entries << ',' << a.probe_entries << ','
        << fmt_real(a.mean_times.similarity_s) << ','
        << fmt_real(a.mean_times.prediction_s) << ','
        << fmt_real(a.mean_times.metrics_s) << '\n';
  }
}

void write_report_csv(const std::filesystem::path& path,
                      const ExperimentReport& report) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_report_csv(out, report);
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace spreadrec
