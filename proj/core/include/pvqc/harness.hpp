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

// Run configuration, model persistence and the command implementations
// behind the `pvqc` tool. Commands throw; tools/pvqc.cpp maps exception
// types onto exit codes (see exit_code_for).

#pragma once

#include <cstdint>
#include <exception>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pvqc/classifier.hpp"
#include "pvqc/datasets.hpp"
#include "pvqc/encoding.hpp"
#include "pvqc/ga.hpp"
#include "pvqc/hardware.hpp"
#include "pvqc/photonic_core.hpp"

namespace pvqc {

inline constexpr int kModelFormatVersion = 1;

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitData = 2,
  kExitInternal = 3,
};

/// Usage/config -> 1, data and I/O -> 2, anything else -> 3.
int exit_code_for(const std::exception& e);

struct RunPaths {
  std::string dataset;
  std::string model;
  std::string history;
  std::string train_split;
  std::string test_split;

  friend bool operator==(const RunPaths&, const RunPaths&) = default;
};

struct RunConfig {
  Task task = Task::kSquare;
  ReadoutMode mode = ReadoutMode::kExact;
  CostNormalization normalization = CostNormalization::kDesignated;
  std::size_t layers = 1;
  GAConfig ga;
  NoiseConfig noise;
  SplitSpec split;
  /// Upper end of the min-max feature scaling for four-feature data.
  double feature_max = kPi / 4.0;
  RunPaths paths;

  ReadoutConfig readout(int n_classes) const;
  /// Throws ConfigError on invalid combinations.
  void validate() const;
};

/// Built-in defaults for a task: population 50, 100 generations,
/// crossover 0.3 and the task's migration fraction.
RunConfig default_run_config(Task task);

/// Defaults for the task (taken from `task_override`, else the file, else
/// square) overlaid with the JSON config file when one is given. Unknown
/// keys raise ConfigError.
RunConfig load_run_config(const std::optional<std::filesystem::path>& file, std::optional<Task> task_override);

std::string run_config_to_json(const RunConfig& config);
RunConfig run_config_from_json(std::string_view text, const std::string& source);

struct TrainMetrics {
  double best_cost = 0.0;
  double train_accuracy = 0.0;
  std::optional<double> test_accuracy;

  friend bool operator==(const TrainMetrics&, const TrainMetrics&) = default;
};

struct ModelFile {
  int format_version = kModelFormatVersion;
  Task task = Task::kSquare;
  int n_classes = 2;
  int feature_dim = 2;
  std::vector<MeshParameters> layers;
  std::optional<FeatureScaler> scaling;
  RunConfig config;
  TrainMetrics metrics;

  /// Applies the stored scaling (if any) to a raw feature dataset.
  Dataset prepare(const Dataset& raw) const;
};

std::string serialize_model(const ModelFile& model);
ModelFile parse_model(std::string_view text, const std::string& source);
void save_model(const ModelFile& model, const std::filesystem::path& path);
ModelFile load_model(const std::filesystem::path& path);

// ---- commands ----

/// Writes the synthetic dataset CSV and prints class counts.
Dataset cmd_generate(Task task, std::size_t n_per_class, std::uint64_t seed, const std::filesystem::path& out_path,
                     std::ostream& log);

struct TrainOutcome {
  ModelFile model;
  TrainingHistory history;
};

/// Loads paths.dataset, trains and writes paths.model and paths.history
/// (each only when non-empty). Four-feature data is split, scaled with
/// training statistics, and the splits optionally written out.
TrainOutcome cmd_train(const RunConfig& config, std::ostream& log);

struct EvaluateOptions {
  std::filesystem::path model;
  std::filesystem::path dataset;
  std::filesystem::path confusion_out;
  std::filesystem::path predictions_out;
  /// Overrides the readout recorded in the model.
  std::optional<ReadoutMode> mode;
  std::optional<std::uint64_t> noise_seed;
};

EvaluationReport cmd_evaluate(const EvaluateOptions& options, std::ostream& log);

/// resolution x resolution cell centres over [0, pi/2]^2, exact readout.
/// Throws std::invalid_argument for models that are not two-feature.
void cmd_boundary_grid(const std::filesystem::path& model_path, std::size_t resolution,
                       const std::filesystem::path& out_path, std::ostream& log);

void cmd_plan_currents(const std::filesystem::path& model_path, const std::filesystem::path& calibration_path,
                       const std::filesystem::path& out_path, std::ostream& log);

// CSV renderers used by the commands.
std::string format_confusion_csv(const ConfusionMatrix& cm);
std::string format_predictions_csv(const Dataset& raw, const EvaluationReport& report);
std::string format_boundary_grid_csv(const ModelFile& model, std::size_t resolution);
std::string format_current_plan_csv(std::span<const MeshParameters> layers, const CalibrationTable& table);

}  // namespace pvqc
