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

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "spreadrec/dataset.hpp"
#include "spreadrec/experiment.hpp"
#include "spreadrec/kernels.hpp"
#include "spreadrec/recommend.hpp"
#include "spreadrec/similarity.hpp"

namespace {

using spreadrec::ExperimentConfig;

struct CommonOptions {
  ExperimentConfig cfg;
  std::string algorithm = "sa";
  std::string data;
  std::string out;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--data", o.data, "MovieLens u.data file")->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--probe-fraction", o.cfg.probe_fraction,
                  "share of edges held out as probe")
      ->capture_default_str();
  cmd->add_option("--runs", o.cfg.n_runs, "independent random splits")
      ->capture_default_str();
  cmd->add_option("--seed", o.cfg.master_seed, "master seed for the splits")
      ->capture_default_str();
  cmd->add_option("--list-lengths", o.cfg.list_lengths,
                  "top-L lengths for degree and Hamming measures")
      ->delimiter(',')
      ->capture_default_str();
  cmd->add_option("--threads", o.cfg.threads, "worker threads")
      ->capture_default_str();
}

void finish(CommonOptions& o) {
  o.cfg.data_path = o.data;
  o.cfg.output_path = o.out;
}

void print_summary(const spreadrec::ExperimentReport& report) {
  for (const auto& a : report.aggregates) {
    std::printf("%-7s beta=%-5g", std::string(algorithm_name(a.point.algorithm)).c_str(),
                a.point.beta);
    if (a.point.top_n) std::printf(" N=%-4zu", *a.point.top_n);
    std::printf(" <r>=%.5f +- %.5f", a.ranking_score.mean, a.ranking_score.std);
    for (const auto& [l, v] : a.avg_degree) std::printf("  <k>@%zu=%.1f", l, v.mean);
    for (const auto& [l, v] : a.hamming) std::printf("  S@%zu=%.4f", l, v.mean);
    std::printf("\n");
  }
}

int run_main(int argc, char** argv) {
  CLI::App app{"Spreading-activation collaborative filtering on bipartite "
               "user-object networks"};
  app.require_subcommand(1);

  CommonOptions run_opts;
  auto* run = app.add_subcommand("run", "evaluate one algorithm over seeded splits");
  add_common(run, run_opts);
  run->add_option("--algorithm", run_opts.algorithm, "cf | sa | sa-topn")
      ->check(CLI::IsMember({"cf", "sa", "sa-topn"}))
      ->capture_default_str();
  run->add_option("--beta", run_opts.cfg.beta_values, "object-degree exponents")
      ->delimiter(',');
  run->add_option("--top-n", run_opts.cfg.n_values, "neighbor counts (sa-topn)")
      ->delimiter(',');
  run->add_option("--out", run_opts.out, "report CSV");

  CommonOptions beta_opts;
  beta_opts.cfg.beta_values = spreadrec::default_beta_grid();
  auto* sweep_beta = app.add_subcommand("sweep-beta", "SA over a beta grid");
  add_common(sweep_beta, beta_opts);
  sweep_beta->add_option("--beta", beta_opts.cfg.beta_values,
                         "ascending beta grid (default 0:0.1:2.5)")
      ->delimiter(',');
  sweep_beta->add_option("--out", beta_opts.out, "report CSV");

  CommonOptions topn_opts;
  double topn_beta = 1.0;
  auto* sweep_topn = app.add_subcommand("sweep-topn", "top-N SA over a grid of N");
  add_common(sweep_topn, topn_opts);
  sweep_topn->add_option("--beta", topn_beta, "object-degree exponent")
      ->capture_default_str();
  sweep_topn->add_option("--top-n", topn_opts.cfg.n_values,
                         "neighbor counts (default 5..640 doubling, plus m-1)")
      ->delimiter(',');
  sweep_topn->add_option("--out", topn_opts.out, "report CSV");

  CommonOptions split_opts;
  std::size_t split_run = 0;
  auto* split = app.add_subcommand("split", "write the train/probe manifest of one run");
  add_common(split, split_opts);
  split->add_option("--run", split_run, "run index")->capture_default_str();
  split->add_option("--out", split_opts.out, "manifest CSV")->required();

  CommonOptions rec_opts;
  std::size_t rec_run = 0, rec_length = 10, rec_topn = 0;
  double rec_beta = 1.0;
  std::string similarity_out;
  auto* recommend = app.add_subcommand("recommend", "dump top-L lists for one split");
  add_common(recommend, rec_opts);
  recommend->add_option("--algorithm", rec_opts.algorithm, "cf | sa | sa-topn")
      ->check(CLI::IsMember({"cf", "sa", "sa-topn"}))
      ->capture_default_str();
  recommend->add_option("--beta", rec_beta)->capture_default_str();
  recommend->add_option("--top-n", rec_topn, "neighbor count (sa-topn)");
  recommend->add_option("--run", rec_run, "run index")->capture_default_str();
  recommend->add_option("--length", rec_length, "entries per user")
      ->capture_default_str();
  recommend->add_option("--out", rec_opts.out, "recommendations CSV")->required();
  recommend->add_option("--similarity-out", similarity_out,
                        "also dump nonzero similarity entries");

  CLI11_PARSE(app, argc, argv);

  std::fprintf(stderr, "spreadrec: kernels=%s\n",
               std::string(spreadrec::kernels::level_name(
                               spreadrec::kernels::active_level()))
                   .c_str());

  if (*run) {
    finish(run_opts);
    run_opts.cfg.algorithm = spreadrec::parse_algorithm(run_opts.algorithm);
    print_summary(spreadrec::run_experiment(run_opts.cfg));
  } else if (*sweep_beta) {
    finish(beta_opts);
    const auto prepared = spreadrec::prepare(beta_opts.cfg);
    const auto report = spreadrec::sweep_beta(beta_opts.cfg, prepared.splits);
    if (!beta_opts.cfg.output_path.empty()) {
      spreadrec::write_report_csv(beta_opts.cfg.output_path, report);
    }
    print_summary(report);
  } else if (*sweep_topn) {
    finish(topn_opts);
    topn_opts.cfg.beta_values = {topn_beta};
    const auto prepared = spreadrec::prepare(topn_opts.cfg);
    const auto report = spreadrec::sweep_topn(topn_opts.cfg, prepared.splits);
    if (!topn_opts.cfg.output_path.empty()) {
      spreadrec::write_report_csv(topn_opts.cfg.output_path, report);
    }
    print_summary(report);
  } else if (*split) {
    finish(split_opts);
    split_opts.cfg.n_runs = split_run + 1;
    const auto prepared = spreadrec::prepare(split_opts.cfg);
    std::ofstream out(split_opts.cfg.output_path);
    spreadrec::write_split_manifest(out, prepared.data.edges,
                                    prepared.splits[split_run]);
  } else if (*recommend) {
    finish(rec_opts);
    rec_opts.cfg.n_runs = rec_run + 1;
    const auto algorithm = spreadrec::parse_algorithm(rec_opts.algorithm);
    const auto prepared = spreadrec::prepare(rec_opts.cfg);
    const auto& train = prepared.splits[rec_run].train;
    const auto similarity =
        algorithm == spreadrec::Algorithm::kCf
            ? spreadrec::cf_similarity(train, rec_opts.cfg.threads)
            : spreadrec::sa_similarity(train, rec_beta, rec_opts.cfg.threads);
    std::optional<std::size_t> top_n;
    if (algorithm == spreadrec::Algorithm::kSaTopN) {
      top_n = rec_topn ? rec_topn : train.n_users() - 1;
    }
    const auto lists = spreadrec::recommend_all(train, similarity, top_n,
                                                rec_opts.cfg.threads);
    std::ofstream out(rec_opts.cfg.output_path);
    spreadrec::write_recommendations_csv(out, lists, rec_length);
    if (!similarity_out.empty()) {
      std::ofstream sim(similarity_out);
      spreadrec::write_similarity_csv(sim, similarity);
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_main(argc, argv);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "spreadrec: error: %s\n", e.what());
    return 1;
  }
}
