/*
 * Copyright 2026 The sslbench Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sslbench/sslbench.hpp"

namespace fs = std::filesystem;
using namespace sslbench;

namespace {

int cmd_gen(const std::string& name, int train_size, int test_size, std::uint64_t seed, int features,
            const std::string& out_dir) {
  auto spec = synth::parse_synth_name(name);
  spec.n_train = train_size;
  spec.n_test = test_size;
  spec.n_features = features;
  spec.seed = seed;
  const auto data = synth::generate_artificial(spec);
  fs::create_directories(out_dir);
  const auto train = (fs::path(out_dir) / (spec.name() + "_train.csv")).string();
  const auto test = (fs::path(out_dir) / (spec.name() + "_test.csv")).string();
  save_table(train, data.train);
  save_table(test, data.test);
  std::cout << train << '\n' << test << '\n';
  return 0;
}

int cmd_split(const std::string& path, const std::string& mechanism, double fraction, std::uint64_t seed,
              const std::vector<Index>& features, double rho, const std::string& out) {
  const auto data = load_table(path);
  LabeledSplit split;
  if (mechanism == "mcar") {
    split = synth::split_mcar(data, fraction, seed);
  } else if (mechanism == "mar") {
    if (features.size() != 2) throw Error("--features needs two column indices for mar");
    const auto mar = synth::split_mar(data, features[0], features[1], 1.0 - fraction);
    std::cerr << "thresholds " << mar.c_i << ' ' << mar.c_j << ", unlabeled fraction " << mar.unlabeled_fraction
              << '\n';
    split = mar.split;
  } else if (mechanism == "mnar") {
    split = synth::split_mnar(data, fraction, rho, seed);
  } else {
    throw Error("unknown mechanism '" + mechanism + "'");
  }
  const auto hidden = hide_unlabeled(data, split);
  if (out.empty() || out == "-") write_table(std::cout, hidden);
  else save_table(out, hidden);
  std::cerr << split.labeled.size() << " labeled, " << split.unlabeled.size() << " unlabeled\n";
  return 0;
}

int cmd_run(const std::string& config_path, const std::string& out, int threads, bool timing) {
  auto cfg = bench::load_config(config_path);
  if (threads > 0) cfg.threads = threads;
  if (timing) cfg.record_timing = true;
  const auto plan = bench::plan_runs(cfg);
  std::cerr << plan.size() << " descriptors x " << cfg.techniques.size() << " techniques\n";
  const auto records = bench::execute_plan(plan, cfg, {cfg.threads, cfg.record_timing});
  if (out.empty() || out == "-") bench::write_results(std::cout, records);
  else bench::save_results(out, records);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semi-supervised learning benchmark"};
  app.require_subcommand(1);

  std::string gen_name, gen_out = ".";
  int train_size = 8000, test_size = 4000, features = 30;
  std::uint64_t gen_seed = 1;
  auto* gen = app.add_subcommand("gen", "generate an artificial train/test pair from an A_B_C_D name");
  gen->add_option("name", gen_name, "A_B_C_D, e.g. 30_80_10_05")->required();
  gen->add_option("--train-size", train_size, "training rows")->check(CLI::PositiveNumber);
  gen->add_option("--test-size", test_size, "test rows")->check(CLI::PositiveNumber);
  gen->add_option("--seed", gen_seed, "random seed");
  gen->add_option("--features", features, "number of features")->check(CLI::PositiveNumber);
  gen->add_option("--out", gen_out, "output directory");

  std::string split_in, mechanism = "mcar", split_out;
  double fraction = 0.1, rho = 0.8;
  std::uint64_t split_seed = 1;
  std::vector<Index> mar_features{0, 1};
  auto* split = app.add_subcommand("split", "hide labels of a fully labeled table");
  split->add_option("data", split_in, "input table")->required()->check(CLI::ExistingFile);
  split->add_option("--mechanism", mechanism, "mcar, mar or mnar")
      ->check(CLI::IsMember({"mcar", "mar", "mnar"}));
  split->add_option("--fraction", fraction, "labeled fraction")->check(CLI::Range(0.0, 1.0));
  split->add_option("--seed", split_seed, "random seed");
  split->add_option("--features", mar_features, "mar conditioning columns i,j")->delimiter(',');
  split->add_option("--rho", rho, "mnar latent correlation")->check(CLI::Range(-1.0, 1.0));
  split->add_option("--out", split_out, "output table (default stdout)");

  std::string config_path, run_out;
  int threads = 0;
  bool timing = false;
  auto* run = app.add_subcommand("run", "execute an experiment config");
  run->add_option("--config", config_path, "config file")->required()->check(CLI::ExistingFile);
  run->add_option("--out", run_out, "results file (JSON Lines, default stdout)");
  run->add_option("--threads", threads, "worker threads (overrides config)");
  run->add_flag("--record-timing", timing, "store wall time per record");

  std::string report_in, format = "text";
  auto* report = app.add_subcommand("report", "mean AUC tables, hyperparameter grids and box plots");
  report->add_option("--in", report_in, "results file")->required()->check(CLI::ExistingFile);
  report->add_option("--format", format, "csv or text")->check(CLI::IsMember({"csv", "text"}));

  std::string stats_in, baseline = "supervised";
  double alpha = 0.05;
  auto* stats = app.add_subcommand("stats", "W-T-L tallies and labeled/unlabeled feature shift");
  stats->add_option("--in", stats_in, "results file")->required()->check(CLI::ExistingFile);
  stats->add_option("--baseline", baseline, "baseline technique label");
  stats->add_option("--alpha", alpha, "significance level")->check(CLI::Range(0.0, 1.0));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) return cmd_gen(gen_name, train_size, test_size, gen_seed, features, gen_out);
    if (*split) return cmd_split(split_in, mechanism, fraction, split_seed, mar_features, rho, split_out);
    if (*run) return cmd_run(config_path, run_out, threads, timing);
    if (*report) {
      const auto records = bench::load_results(report_in);
      if (format == "csv") bench::write_report_csv(std::cout, records);
      else bench::write_report_text(std::cout, records);
      return 0;
    }
    if (*stats) {
      bench::write_stats_text(std::cout, bench::load_results(stats_in), baseline, alpha);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "sslbench: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
