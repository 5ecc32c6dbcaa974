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

// End-to-end classifier: encode -> mesh cascade -> readout -> label, plus the
// GA training loop that fits the mesh phases to a labelled dataset.

#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "pvqc/datasets.hpp"
#include "pvqc/ga.hpp"
#include "pvqc/hardware.hpp"
#include "pvqc/photonic_core.hpp"
#include "pvqc/readout.hpp"
#include "pvqc/state.hpp"

namespace pvqc {

enum class ReadoutMode { kExact, kHardware };

/// How intensities are compared with the one-hot targets in the cost.
///   kDesignated: intensities restricted to the class modes and renormalized.
///   kRaw: all four raw intensities against zero-padded targets.
enum class CostNormalization { kDesignated, kRaw };

std::string_view readout_mode_name(ReadoutMode mode);
ReadoutMode parse_readout_mode(std::string_view name);
std::string_view cost_normalization_name(CostNormalization n);
CostNormalization parse_cost_normalization(std::string_view name);

struct ReadoutConfig {
  int n_classes = 2;
  ReadoutMode mode = ReadoutMode::kExact;
  CostNormalization normalization = CostNormalization::kDesignated;
  NoiseConfig noise;
};

/// Encodes every sample (features assumed already scaled).
std::vector<StateVector> encode_dataset(const Dataset& ds);

/// Readout of one encoded sample. In hardware mode `rng_seed` selects the
/// phase-error and photon-count draws.
IntensityVector readout(const StateVector& input, std::span<const MeshParameters> layers, const ReadoutConfig& config,
                        std::uint64_t rng_seed = 0);

struct SamplePrediction {
  std::size_t index = 0;
  int true_label = 0;
  int predicted_label = 0;
  IntensityVector intensities;
};

struct EvaluationReport {
  double accuracy = 0.0;
  ConfusionMatrix confusion{2};
  std::vector<SamplePrediction> predictions;
};

/// Per-sample encode -> forward -> intensities -> predict_label.
/// Hardware mode derives sample i's stream from (noise.rng_seed, i).
/// Throws std::invalid_argument on an empty set.
EvaluationReport evaluate(const Dataset& samples, std::span<const MeshParameters> layers, const ReadoutConfig& config);

/// Squared-error cost and accuracy of a parameter set on
/// pre-encoded samples, shared by training and evaluation.
class ClassificationObjective {
 public:
  ClassificationObjective(std::vector<StateVector> states, std::vector<int> labels, ReadoutConfig config,
                          std::size_t n_layers);

  std::size_t n_genes() const { return n_layers_ * kGenesPerMesh; }
  std::size_t n_samples() const { return states_.size(); }

  Evaluation operator()(std::span<const double> genes, std::uint64_t stream_seed) const;

 private:
  std::vector<StateVector> states_;
  std::vector<int> labels_;
  std::vector<OneHotTarget> targets_;
  ReadoutConfig config_;
  std::size_t n_layers_;
};

struct TrainResult {
  std::vector<MeshParameters> layers;
  TrainingHistory history;
  double best_cost = 0.0;
  double train_accuracy = 0.0;
};

/// Runs the GA on the (already scaled) training set. Throws
/// std::invalid_argument for an empty set or n_layers == 0.
TrainResult train(const Dataset& dataset, const GAConfig& ga_config, const ReadoutConfig& readout_config,
                  std::size_t n_layers = 1);

}  // namespace pvqc
