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

#include "pvqc/classifier.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "pvqc/encoding.hpp"
#include "pvqc/errors.hpp"

namespace pvqc {

std::string_view readout_mode_name(ReadoutMode mode) { return mode == ReadoutMode::kExact ? "exact" : "hardware"; }

ReadoutMode parse_readout_mode(std::string_view name) {
  if (name == "exact") return ReadoutMode::kExact;
  if (name == "hardware" || name == "hardware-emulation") return ReadoutMode::kHardware;
  throw ConfigError("unknown mode '" + std::string(name) + "' (expected exact or hardware-emulation)");
}

std::string_view cost_normalization_name(CostNormalization n) {
  return n == CostNormalization::kDesignated ? "designated" : "raw";
}

CostNormalization parse_cost_normalization(std::string_view name) {
  if (name == "designated") return CostNormalization::kDesignated;
  if (name == "raw") return CostNormalization::kRaw;
  throw ConfigError("unknown cost normalization '" + std::string(name) + "' (expected designated or raw)");
}

std::vector<StateVector> encode_dataset(const Dataset& ds) {
  std::vector<StateVector> states;
  states.reserve(ds.size());
  for (const auto& s : ds.samples) states.push_back(encode_features(s.features));
  return states;
}

IntensityVector readout(const StateVector& input, std::span<const MeshParameters> layers, const ReadoutConfig& config,
                        std::uint64_t rng_seed) {
  if (config.mode == ReadoutMode::kExact) return multi_layer_forward(input, layers);
  Rng rng(rng_seed);
  return noisy_multi_layer_forward(input, layers, config.noise, rng);
}

namespace {

/// Hardware runs program the chip once (one phase-error draw per layer) and
/// then count photons for every sample.
class LayerProgram {
 public:
  LayerProgram(std::span<const MeshParameters> layers, const ReadoutConfig& config, Rng& rng)
      : config_(config), rng_(rng) {
    unitaries_.reserve(layers.size());
    for (const auto& layer : layers) {
      const MeshParameters actual = config.mode == ReadoutMode::kHardware
                                        ? perturb_phases(layer, config.noise.phase_sigma, rng)
                                        : layer;
      unitaries_.push_back(compose_mesh(actual));
    }
  }

  IntensityVector run(const StateVector& input) {
    StateVector state = input;
    IntensityVector iv;
    for (std::size_t l = 0; l < unitaries_.size(); ++l) {
      iv = intensities_exact(StateVector(unitaries_[l] * state.amplitudes));
      if (config_.mode == ReadoutMode::kHardware) iv = intensities_sampled(iv, config_.noise.n_photons, rng_);
      if (l + 1 < unitaries_.size()) {
        for (std::size_t m = 0; m < kNumModes; ++m) {
          state.amplitudes(static_cast<Eigen::Index>(m)) = std::sqrt(iv[m]);
        }
      }
    }
    return iv;
  }

 private:
  std::vector<ComplexMatrix4> unitaries_;
  const ReadoutConfig& config_;
  Rng& rng_;
};

void validate_readout(const ReadoutConfig& config) {
  if (config.n_classes < 1 || config.n_classes > kMaxClasses) {
    throw std::invalid_argument("readout: n_classes must lie in 1..4");
  }
  if (config.mode == ReadoutMode::kHardware) {
    if (!(config.noise.phase_sigma >= 0.0)) throw std::invalid_argument("noise: phase_sigma must be >= 0");
    if (config.noise.n_photons == 0) throw std::invalid_argument("noise: n_photons must be >= 1");
  }
}

}  // namespace

EvaluationReport evaluate(const Dataset& samples, std::span<const MeshParameters> layers, const ReadoutConfig& config) {
  if (samples.empty()) throw std::invalid_argument("evaluate: empty sample set");
  if (layers.empty()) throw std::invalid_argument("evaluate: no layers");
  validate_readout(config);
  Rng rng(config.noise.rng_seed);
  LayerProgram program(layers, config, rng);
  EvaluationReport report;
  report.confusion = ConfusionMatrix(config.n_classes);
  report.predictions.reserve(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& s = samples.samples[i];
    SamplePrediction p;
    p.index = i;
    p.true_label = s.label;
    p.intensities = program.run(encode_features(s.features));
    p.predicted_label = predict_label(p.intensities, config.n_classes);
    report.confusion.add(p.true_label, p.predicted_label);
    report.predictions.push_back(p);
  }
  report.accuracy = report.confusion.accuracy();
  return report;
}

ClassificationObjective::ClassificationObjective(std::vector<StateVector> states, std::vector<int> labels,
                                                 ReadoutConfig config, std::size_t n_layers)
    : states_(std::move(states)), labels_(std::move(labels)), config_(config), n_layers_(n_layers) {
  if (states_.empty()) throw std::invalid_argument("objective: no samples");
  if (states_.size() != labels_.size()) throw std::invalid_argument("objective: states/labels length mismatch");
  if (n_layers_ == 0) throw std::invalid_argument("objective: need at least one layer");
  validate_readout(config_);
  targets_.reserve(labels_.size());
  for (int label : labels_) targets_.push_back(OneHotTarget::for_label(label, config_.n_classes));
}

Evaluation ClassificationObjective::operator()(std::span<const double> genes, std::uint64_t stream_seed) const {
  const auto layers = layers_from_genes(genes);
  if (layers.size() != n_layers_) throw std::invalid_argument("objective: wrong gene count");
  Rng rng(stream_seed);
  LayerProgram program(layers, config_, rng);
  double total = 0.0;
  std::size_t correct = 0;
  for (std::size_t i = 0; i < states_.size(); ++i) {
    const IntensityVector raw = program.run(states_[i]);
    if (predict_label(raw, config_.n_classes) == labels_[i]) ++correct;
    const IntensityVector iv =
        config_.normalization == CostNormalization::kDesignated ? renormalize_designated(raw, config_.n_classes) : raw;
    for (std::size_t m = 0; m < kNumModes; ++m) {
      const double d = iv[m] - targets_[i].values[m];
      total += d * d;
    }
  }
  return {total, static_cast<double>(correct) / static_cast<double>(states_.size())};
}

TrainResult train(const Dataset& dataset, const GAConfig& ga_config, const ReadoutConfig& readout_config,
                  std::size_t n_layers) {
  if (dataset.empty()) throw std::invalid_argument("train: empty training set");
  if (n_layers == 0) throw std::invalid_argument("train: need at least one layer");
  std::vector<int> labels;
  labels.reserve(dataset.size());
  for (const auto& s : dataset.samples) labels.push_back(s.label);
  const ClassificationObjective objective(encode_dataset(dataset), std::move(labels), readout_config, n_layers);
  const FitnessFunction fitness = [&objective](std::span<const double> genes, std::uint64_t stream) {
    return objective(genes, stream);
  };
  GAResult ga = run_ga(objective.n_genes(), fitness, ga_config);

  TrainResult out;
  out.layers = layers_from_genes(ga.best);
  out.history = std::move(ga.history);
  out.best_cost = ga.best_fitness.cost;
  out.train_accuracy = evaluate(dataset, out.layers, readout_config).accuracy;
  return out;
}

}  // namespace pvqc
