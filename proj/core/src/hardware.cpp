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

#include "pvqc/hardware.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "pvqc/readout.hpp"

namespace pvqc {

double current_to_phase(double current, const ShifterCalibration& cal) {
  if (!(current >= 0.0)) throw std::invalid_argument("current_to_phase: current must be non-negative");
  return wrap_phase(cal.phi0 + cal.alpha * current * current);
}

double phase_to_current(double target, const ShifterCalibration& cal) {
  if (!(cal.alpha > 0.0)) throw std::invalid_argument("phase_to_current: alpha must be positive");
  const double increment = wrap_phase(target - cal.phi0);
  return std::sqrt(increment / cal.alpha);
}

CalibrationTable load_calibration(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open calibration file " + path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  if (!doc.contains("shifters") || !doc["shifters"].is_array()) {
    throw ConfigError(path.string() + ": expected a \"shifters\" array");
  }
  CalibrationTable table{};
  std::array<bool, kGenesPerMesh> seen{};
  for (const auto& entry : doc["shifters"]) {
    if (!entry.is_object() || !entry.contains("index")) {
      throw ConfigError(path.string() + ": shifter entry without \"index\"");
    }
    if (!entry["index"].is_number_integer()) {
      throw ConfigError(path.string() + ": shifter index must be an integer");
    }
    const auto index = entry["index"].get<long long>();
    if (index < 1 || index > static_cast<long long>(kGenesPerMesh)) {
      throw ConfigError(path.string() + ": shifter index " + std::to_string(index) + " outside 1..12");
    }
    const auto k = static_cast<std::size_t>(index - 1);
    if (seen[k]) throw ConfigError(path.string() + ": duplicate shifter " + std::to_string(index));
    seen[k] = true;
    ShifterCalibration cal;
    try {
      cal.alpha = entry.value("alpha", cal.alpha);
      cal.phi0 = entry.value("phi0", cal.phi0);
    } catch (const nlohmann::json::exception&) {
      throw ConfigError(path.string() + ": shifter " + std::to_string(index) + " has a non-numeric alpha or phi0");
    }
    if (!(cal.alpha > 0.0)) {
      throw ConfigError(path.string() + ": shifter " + std::to_string(index) + " has non-positive alpha");
    }
    table[k] = cal;
  }
  for (std::size_t k = 0; k < kGenesPerMesh; ++k) {
    if (!seen[k]) throw ConfigError(path.string() + ": missing shifter " + std::to_string(k + 1));
  }
  return table;
}

std::vector<double> plan_currents(std::span<const MeshParameters> layers, const CalibrationTable& table) {
  std::vector<double> currents;
  currents.reserve(layers.size() * kGenesPerMesh);
  for (const auto& layer : layers) {
    const auto genes = layer.to_genes();
    for (std::size_t k = 0; k < kGenesPerMesh; ++k) currents.push_back(phase_to_current(genes[k], table[k]));
  }
  return currents;
}

MeshParameters perturb_phases(const MeshParameters& params, double sigma, Rng& rng) {
  if (sigma == 0.0) return params;
  std::normal_distribution<double> noise(0.0, sigma);
  MeshParameters out = params;
  for (std::size_t k = 0; k < kNumMzis; ++k) {
    const double theta = params.mzi(k).theta() + noise(rng);
    const double phi = params.mzi(k).phi() + noise(rng);
    out.mzi(k) = MZIParams(theta, phi);
  }
  return out;
}

namespace {

void validate_noise(const NoiseConfig& noise) {
  if (!(noise.phase_sigma >= 0.0)) throw std::invalid_argument("noise: phase_sigma must be >= 0");
  if (noise.n_photons == 0) throw std::invalid_argument("noise: n_photons must be >= 1");
}

}  // namespace

IntensityVector noisy_forward(const StateVector& input, const MeshParameters& params, const NoiseConfig& noise,
                              Rng& rng) {
  validate_noise(noise);
  const MeshParameters actual = perturb_phases(params, noise.phase_sigma, rng);
  return intensities_sampled(intensities_exact(forward(input, actual)), noise.n_photons, rng);
}

IntensityVector noisy_multi_layer_forward(const StateVector& input, std::span<const MeshParameters> layers,
                                          const NoiseConfig& noise, Rng& rng) {
  if (layers.empty()) throw std::invalid_argument("noisy_multi_layer_forward: no layers");
  validate_noise(noise);
  StateVector state = input;
  IntensityVector iv;
  for (std::size_t l = 0; l < layers.size(); ++l) {
    iv = noisy_forward(state, layers[l], noise, rng);
    if (l + 1 < layers.size()) {
      for (std::size_t m = 0; m < kNumModes; ++m) {
        state.amplitudes(static_cast<Eigen::Index>(m)) = std::sqrt(iv[m]);
      }
    }
  }
  return iv;
}

}  // namespace pvqc
