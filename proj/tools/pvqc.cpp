// Copyright 2026 The pvqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// pvqc: train and evaluate the photonic mesh classifier from the shell.
//
//   pvqc generate --task circle --n-per-class 300 --seed 7 --out circle.csv
//   pvqc train --task circle --data circle.csv --model circle.json --history hist.csv
//   pvqc evaluate --model circle.json --data circle.csv --confusion cm.csv --predictions pred.csv
//   pvqc boundary-grid --model circle.json --resolution 100 --out grid.csv
//   pvqc plan-currents --model circle.json --calibration cal.json --out currents.csv

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "pvqc/errors.hpp"
#include "pvqc/harness.hpp"

namespace {

struct TrainFlags {
  std::string config_path;
  std::string task;
  std::string mode;
  std::string cost;
  std::string data, model, history, train_split, test_split;
  std::size_t layers = 1;
  std::size_t population = 0, generations = 0, migration_interval = 0, islands = 0, elites = 0, tournament = 0,
              threads = 0;
  double crossover = 0, migration = 0, sigma = 0, phase_sigma = 0, train_fraction = 0, feature_max = 0;
  std::uint64_t seed = 0, noise_seed = 0, split_seed = 0, photons = 0;
  bool reevaluate = false, no_stratify = false;
};

template <typename T, typename U>
void set_if(const CLI::App& cmd, const char* name, T& target, const U& value) {
  if (cmd.count(name) > 0) target = static_cast<T>(value);
}

pvqc::RunConfig build_run_config(const CLI::App& cmd, const TrainFlags& f) {
  std::optional<std::filesystem::path> file;
  if (!f.config_path.empty()) file = f.config_path;
  std::optional<pvqc::Task> task;
  if (!f.task.empty()) task = pvqc::parse_task(f.task);
  pvqc::RunConfig c = pvqc::load_run_config(file, task);

  if (!f.mode.empty()) c.mode = pvqc::parse_readout_mode(f.mode);
  if (!f.cost.empty()) c.normalization = pvqc::parse_cost_normalization(f.cost);
  set_if(cmd, "--data", c.paths.dataset, f.data);
  set_if(cmd, "--model", c.paths.model, f.model);
  set_if(cmd, "--history", c.paths.history, f.history);
  set_if(cmd, "--train-split-out", c.paths.train_split, f.train_split);
  set_if(cmd, "--test-split-out", c.paths.test_split, f.test_split);
  set_if(cmd, "--layers", c.layers, f.layers);
  set_if(cmd, "--population", c.ga.population_size, f.population);
  set_if(cmd, "--generations", c.ga.n_generations, f.generations);
  set_if(cmd, "--crossover", c.ga.crossover_fraction, f.crossover);
  set_if(cmd, "--migration", c.ga.migration_fraction, f.migration);
  set_if(cmd, "--migration-interval", c.ga.migration_interval, f.migration_interval);
  set_if(cmd, "--islands", c.ga.n_islands, f.islands);
  set_if(cmd, "--elites", c.ga.elite_count, f.elites);
  set_if(cmd, "--tournament", c.ga.tournament_size, f.tournament);
  set_if(cmd, "--sigma", c.ga.mutation_sigma, f.sigma);
  set_if(cmd, "--seed", c.ga.rng_seed, f.seed);
  set_if(cmd, "--threads", c.ga.n_threads, f.threads);
  if (f.reevaluate) c.ga.reevaluate_survivors = true;
  set_if(cmd, "--phase-sigma", c.noise.phase_sigma, f.phase_sigma);
  set_if(cmd, "--photons", c.noise.n_photons, f.photons);
  set_if(cmd, "--noise-seed", c.noise.rng_seed, f.noise_seed);
  set_if(cmd, "--train-fraction", c.split.train_fraction, f.train_fraction);
  set_if(cmd, "--split-seed", c.split.rng_seed, f.split_seed);
  if (f.no_stratify) c.split.stratified = false;
  set_if(cmd, "--feature-max", c.feature_max, f.feature_max);
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Photonic mesh variational classifier: data generation, GA training and evaluation"};
  app.require_subcommand(1);

  // generate
  std::string gen_task;
  std::size_t gen_n = 300;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  auto* generate = app.add_subcommand("generate", "Write a synthetic square/circle/sine dataset CSV");
  generate->add_option("--task", gen_task, "square, circle or sine")->required();
  generate->add_option("--n-per-class", gen_n, "Samples per class")->capture_default_str();
  generate->add_option("--seed", gen_seed, "RNG seed")->capture_default_str();
  generate->add_option("--out", gen_out, "Output CSV path")->required();

  // train
  TrainFlags tf;
  auto* train = app.add_subcommand("train", "Train the mesh phases with the genetic algorithm");
  train->add_option("--config", tf.config_path, "JSON run config (flags override it)");
  train->add_option("--task", tf.task, "square, circle, sine or iris");
  train->add_option("--data", tf.data, "Dataset CSV (header form, or canonical Iris rows)");
  train->add_option("--model", tf.model, "Output model file");
  train->add_option("--history", tf.history, "Output training-history CSV");
  train->add_option("--train-split-out", tf.train_split, "Write the training split (four-feature tasks)");
  train->add_option("--test-split-out", tf.test_split, "Write the test split (four-feature tasks)");
  train->add_option("--mode", tf.mode, "exact or hardware-emulation");
  train->add_option("--cost", tf.cost, "designated or raw intensity normalization in the cost");
  train->add_option("--layers", tf.layers, "Number of cascaded meshes");
  train->add_option("--population", tf.population, "Total population size");
  train->add_option("--generations", tf.generations, "Number of generations");
  train->add_option("--crossover", tf.crossover, "Crossover fraction of non-elite offspring");
  train->add_option("--migration", tf.migration, "Migration fraction");
  train->add_option("--migration-interval", tf.migration_interval, "Generations between migrations");
  train->add_option("--islands", tf.islands, "Number of islands");
  train->add_option("--elites", tf.elites, "Elites kept per island");
  train->add_option("--tournament", tf.tournament, "Tournament size");
  train->add_option("--sigma", tf.sigma, "Mutation standard deviation (rad)");
  train->add_option("--seed", tf.seed, "GA seed");
  train->add_option("--threads", tf.threads, "Fitness evaluation threads");
  train->add_flag("--reevaluate", tf.reevaluate, "Re-score survivors every generation");
  train->add_option("--phase-sigma", tf.phase_sigma, "Phase-setting error (rad), hardware mode");
  train->add_option("--photons", tf.photons, "Photons per sample readout, hardware mode");
  train->add_option("--noise-seed", tf.noise_seed, "Seed for the final noisy evaluation");
  train->add_option("--train-fraction", tf.train_fraction, "Train share of four-feature data");
  train->add_option("--split-seed", tf.split_seed, "Split shuffle seed");
  train->add_flag("--no-stratify", tf.no_stratify, "Plain shuffle split");
  train->add_option("--feature-max", tf.feature_max, "Upper bound of scaled four-feature values (rad)");

  // evaluate
  std::string ev_model, ev_data, ev_confusion, ev_predictions, ev_mode;
  std::uint64_t ev_noise_seed = 0;
  auto* evaluate = app.add_subcommand("evaluate", "Score a model on a dataset");
  evaluate->add_option("--model", ev_model, "Model file")->required();
  evaluate->add_option("--data", ev_data, "Dataset CSV")->required();
  evaluate->add_option("--confusion", ev_confusion, "Confusion-matrix CSV output");
  evaluate->add_option("--predictions", ev_predictions, "Per-sample predictions CSV output");
  evaluate->add_option("--mode", ev_mode, "Override the readout: exact or hardware-emulation");
  evaluate->add_option("--noise-seed", ev_noise_seed, "Override the noise seed");

  // boundary-grid
  std::string bg_model, bg_out;
  std::size_t bg_resolution = 100;
  auto* grid = app.add_subcommand("boundary-grid", "Predicted labels on a grid over [0, pi/2]^2");
  grid->add_option("--model", bg_model, "Two-feature model file")->required();
  grid->add_option("--resolution", bg_resolution, "Grid points per axis")->capture_default_str();
  grid->add_option("--out", bg_out, "Output CSV")->required();

  // plan-currents
  std::string pc_model, pc_cal, pc_out;
  auto* plan = app.add_subcommand("plan-currents", "Heater currents that realise a trained model");
  plan->add_option("--model", pc_model, "Model file")->required();
  plan->add_option("--calibration", pc_cal, "JSON calibration table (12 shifters)")->required();
  plan->add_option("--out", pc_out, "Output CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? pvqc::kExitOk : pvqc::kExitUsage;
  }

  try {
    if (*generate) {
      pvqc::cmd_generate(pvqc::parse_task(gen_task), gen_n, gen_seed, gen_out, std::cout);
    } else if (*train) {
      pvqc::cmd_train(build_run_config(*train, tf), std::cout);
    } else if (*evaluate) {
      pvqc::EvaluateOptions opts;
      opts.model = ev_model;
      opts.dataset = ev_data;
      opts.confusion_out = ev_confusion;
      opts.predictions_out = ev_predictions;
      if (!ev_mode.empty()) opts.mode = pvqc::parse_readout_mode(ev_mode);
      if (evaluate->count("--noise-seed") > 0) opts.noise_seed = ev_noise_seed;
      pvqc::cmd_evaluate(opts, std::cout);
    } else if (*grid) {
      pvqc::cmd_boundary_grid(bg_model, bg_resolution, bg_out, std::cout);
    } else if (*plan) {
      pvqc::cmd_plan_currents(pc_model, pc_cal, pc_out, std::cout);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return pvqc::exit_code_for(e);
  }
  return pvqc::kExitOk;
}
