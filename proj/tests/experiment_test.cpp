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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "doctest.h"
#include "spreadrec/errors.hpp"
#include "spreadrec/experiment.hpp"
#include "spreadrec/similarity.hpp"

using namespace spreadrec;
namespace fs = std::filesystem;

namespace {

// Writes a small u.data-style file with every user and movie present.
fs::path write_sample_data(const std::string& name, std::uint64_t seed) {
  const fs::path dir = fs::temp_directory_path() / "spreadrec_tests";
  fs::create_directories(dir);
  const fs::path path = dir / name;
  std::ofstream out(path);
  std::mt19937_64 rng(seed);
  for (int u = 1; u <= 60; ++u) {
    for (int i = 1; i <= 80; ++i) {
      if (u == i || rng() % 4 == 0) {
        out << u << '\t' << i << '\t' << 1 + rng() % 5 << '\t' << 881250949 + u
            << '\n';
      }
    }
  }
  return path;
}

ExperimentConfig sample_config(const fs::path& data) {
  ExperimentConfig cfg;
  cfg.data_path = data;
  cfg.n_runs = 3;
  cfg.master_seed = 17;
  cfg.list_lengths = {2, 5};
  return cfg;
}

// Drops the trailing time_ columns of every line.
std::string without_timings(const std::string& csv) {
  std::istringstream in(csv);
  std::string line, out;
  while (std::getline(in, line)) {
    if (line.rfind("#", 0) != 0) {
      for (int k = 0; k < 3; ++k) line.erase(line.rfind(','));
    }
    out += line + '\n';
  }
  return out;
}

std::string report_text(const ExperimentReport& r) {
  std::ostringstream s;
  write_report_csv(s, r);
  return s.str();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("mean and sample deviation") {
  const std::vector<double> v{2, 4, 4, 4, 5, 5, 7, 9};
  const auto ms = mean_std(v);
  CHECK(ms.mean == 5.0);
  CHECK(ms.std == doctest::Approx(std::sqrt(32.0 / 7.0)));
  const std::vector<double> one{3.5};
  CHECK(mean_std(one).std == 0.0);
  CHECK(mean_std(std::span<const double>{}).mean == 0.0);
}

TEST_CASE("algorithm names round trip") {
  for (Algorithm a : {Algorithm::kCf, Algorithm::kSa, Algorithm::kSaTopN}) {
    CHECK(parse_algorithm(algorithm_name(a)) == a);
  }
  CHECK_THROWS_AS(parse_algorithm("pearson"), ParameterError);
}

TEST_CASE("default grids") {
  const auto betas = default_beta_grid();
  CHECK(betas.size() == 26);
  CHECK(betas.front() == 0.0);
  CHECK(betas.back() == 2.5);
  CHECK(betas[19] == 1.9);
  CHECK(default_topn_grid().back() == 942);
}

TEST_CASE("config validation") {
  ExperimentConfig cfg;
  CHECK_NOTHROW(validate(cfg));
  auto bad = cfg;
  bad.probe_fraction = 1.0;
  CHECK_THROWS_AS(validate(bad), ParameterError);
  bad = cfg;
  bad.n_runs = 0;
  CHECK_THROWS_AS(validate(bad), ParameterError);
  bad = cfg;
  bad.beta_values.clear();
  CHECK_THROWS_AS(validate(bad), ParameterError);
  bad = cfg;
  bad.beta_values = {std::nan("")};
  CHECK_THROWS_AS(validate(bad), ParameterError);
  bad = cfg;
  bad.list_lengths = {10, 0};
  CHECK_THROWS_AS(validate(bad), ParameterError);
  bad = cfg;
  bad.algorithm = Algorithm::kSaTopN;
  CHECK_THROWS_AS(validate(bad), ParameterError);
}

TEST_CASE("parameter grid") {
  ExperimentConfig cfg;
  cfg.algorithm = Algorithm::kCf;
  CHECK(parameter_grid(cfg, 10).size() == 1);
  cfg.algorithm = Algorithm::kSa;
  cfg.beta_values = {0.5, 1.0, 1.5};
  CHECK(parameter_grid(cfg, 10).size() == 3);
  cfg.algorithm = Algorithm::kSaTopN;
  cfg.n_values = {1, 9};
  CHECK(parameter_grid(cfg, 10).size() == 6);
  cfg.n_values = {10};
  CHECK_THROWS_AS(parameter_grid(cfg, 10), ParameterError);
  cfg.n_values = {0};
  CHECK_THROWS_AS(parameter_grid(cfg, 10), ParameterError);
}

TEST_CASE("sweeps share splits and agree with single runs") {
  const auto data = write_sample_data("sweep.data", 3);
  auto cfg = sample_config(data);
  const auto prepared = prepare(cfg);
  REQUIRE(prepared.splits.size() == 3);

  cfg.beta_values = {0.0, 1.0, 2.0};
  const auto sweep = sweep_beta(cfg, prepared.splits);
  CHECK(sweep.aggregates.size() == 3);
  CHECK(sweep.runs.size() == 9);

  const std::vector<ParameterPoint> plain{{Algorithm::kSa, 1.0, {}}};
  const auto single = run_grid(prepared.splits, plain, cfg.list_lengths);
  CHECK(sweep.aggregate(plain[0]).ranking_score.mean ==
        single.aggregates[0].ranking_score.mean);
  CHECK(sweep.aggregate(plain[0]).avg_degree.at(5).mean ==
        single.aggregates[0].avg_degree.at(5).mean);

  cfg.beta_values = {1.0, 0.5};
  CHECK_THROWS_AS(sweep_beta(cfg, prepared.splits), ParameterError);

  cfg.beta_values = {1.0};
  cfg.n_values = {3, 5000};
  const auto topn = sweep_topn(cfg, prepared.splits);
  const std::size_t m = prepared.data.n_users();
  REQUIRE(topn.aggregates.size() == 2);
  CHECK(*topn.aggregates[0].point.top_n == 3);
  CHECK(*topn.aggregates[1].point.top_n == m - 1);
  CHECK(std::abs(topn.aggregates[1].ranking_score.mean -
                 single.aggregates[0].ranking_score.mean) < 1e-12);
}

TEST_CASE("report CSV layout") {
  const auto data = write_sample_data("layout.data", 4);
  auto cfg = sample_config(data);
  cfg.n_runs = 2;
  const auto report = run_experiment(cfg);
  const auto text = report_text(report);
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  CHECK(line == "# spreadrec report v1");
  std::getline(in, line);
  CHECK(line ==
        "row_type,run_id,algorithm,beta,top_n,ranking_score,ranking_score_std,"
        "avg_degree@2,avg_degree@2_std,avg_degree@5,avg_degree@5_std,"
        "hamming@2,hamming@2_std,hamming@5,hamming@5_std,"
        "short_lists@2,short_lists@5,isolated_entries,probe_entries,"
        "time_similarity_s,time_prediction_s,time_metrics_s");
  std::getline(in, line);
  CHECK(line.rfind("run,0,sa,1,,", 0) == 0);
  std::getline(in, line);
  CHECK(line.rfind("run,1,sa,1,,", 0) == 0);
  std::getline(in, line);
  CHECK(line.rfind("aggregate,,sa,1,,", 0) == 0);
  CHECK(!std::getline(in, line));
}

TEST_CASE("reports are reproducible across thread counts") {
  const auto data = write_sample_data("threads.data", 5);
  auto cfg = sample_config(data);
  cfg.algorithm = Algorithm::kSaTopN;
  cfg.n_values = {4, 20};
  cfg.beta_values = {0.7, 1.9};
  const auto a = without_timings(report_text(run_experiment(cfg)));
  const auto b = without_timings(report_text(run_experiment(cfg)));
  cfg.threads = 3;
  const auto c = without_timings(report_text(run_experiment(cfg)));
  CHECK(a == b);
  CHECK(a == c);
  cfg.master_seed = 18;
  CHECK(a != without_timings(report_text(run_experiment(cfg))));
}

TEST_CASE("command line interface") {
  const auto data = write_sample_data("cli.data", 6);
  const fs::path dir = data.parent_path();
  const std::string cli = SPREADREC_CLI_PATH;
  auto run = [&](const std::string& args) {
    const std::string cmd = "\"" + cli + "\" " + args + " > \"" +
                            (dir / "cli.log").string() + "\" 2>&1";
    return std::system(cmd.c_str());
  };
  const std::string common = " --data \"" + data.string() + "\" --runs 2 --seed 9";

  CHECK(run("run" + common + " --algorithm cf --out \"" +
            (dir / "cf.csv").string() + "\"") == 0);
  CHECK(slurp(dir / "cf.csv").rfind("# spreadrec report v1\n", 0) == 0);

  CHECK(run("sweep-beta" + common + " --beta 0.5,1,1.5 --threads 2 --out \"" +
            (dir / "beta.csv").string() + "\"") == 0);
  CHECK(run("sweep-topn" + common + " --top-n 3,10 --out \"" +
            (dir / "topn.csv").string() + "\"") == 0);
  CHECK(run("split" + common + " --run 1 --out \"" + (dir / "split.csv").string() +
            "\"") == 0);
  CHECK(run("recommend" + common + " --length 3 --out \"" +
            (dir / "rec.csv").string() + "\" --similarity-out \"" +
            (dir / "sim.csv").string() + "\"") == 0);
  CHECK(slurp(dir / "rec.csv").rfind("user,rank,object,score\n", 0) == 0);
  CHECK(slurp(dir / "sim.csv").rfind("i,j,s_ij\n", 0) == 0);

  // the library and the command line agree
  auto cfg = sample_config(data);
  cfg.n_runs = 2;
  cfg.master_seed = 9;
  cfg.list_lengths = {10, 20, 50};
  cfg.algorithm = Algorithm::kCf;
  CHECK(without_timings(slurp(dir / "cf.csv")) ==
        without_timings(report_text(run_experiment(cfg))));

  CHECK(run("run --data \"" + (dir / "missing.data").string() + "\"") != 0);
  CHECK(run("run" + common + " --probe-fraction 1.5") != 0);
  CHECK(run("run" + common + " --algorithm sa-topn --top-n 5000") != 0);
  CHECK(run("frobnicate") != 0);
}
