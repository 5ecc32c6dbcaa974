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

// Emulation of the chip control path: thermo-optic heaters whose phase grows
// with dissipated power (phase = phi0 + alpha * I^2), Gaussian phase-setting
// error and finite photon counts.

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "pvqc/photonic_core.hpp"
#include "pvqc/errors.hpp"
#include "pvqc/random.hpp"
#include "pvqc/state.hpp"

namespace pvqc {

struct ShifterCalibration {
  double alpha = kPi / 0.5;  // rad / A^2
  double phi0 = 0.0;         // rad
};

struct NoiseConfig {
  double phase_sigma = 0.02;
  std::uint64_t n_photons = 1000;
  std::uint64_t rng_seed = 0;
};

/// Throws std::invalid_argument for a negative current.
double current_to_phase(double current, const ShifterCalibration& cal);

/// Smallest non-negative current reaching `target` modulo 2*pi.
/// Throws std::invalid_argument unless alpha > 0.
double phase_to_current(double target, const ShifterCalibration& cal);

/// Twelve shifters per mesh, in gene order: shifter 2k-1 is phi_k, shifter 2k
/// is theta_k (one-based).
using CalibrationTable = std::array<ShifterCalibration, kGenesPerMesh>;

/// Reads a JSON calibration file:
///   {"shifters": [{"index": 1, "alpha": 6.28, "phi0": 0.0}, ...]}
/// Every index 1..12 must be present exactly once; a missing one raises
/// ConfigError naming it.
CalibrationTable load_calibration(const std::filesystem::path& path);

/// Heater currents for every shifter of every layer, in gene order.
std::vector<double> plan_currents(std::span<const MeshParameters> layers, const CalibrationTable& table);

/// Perturbs every phase by N(0, sigma^2).
MeshParameters perturb_phases(const MeshParameters& params, double sigma, Rng& rng);

/// Perturbed forward pass followed by shot-noise readout. Validates `noise`
/// (phase_sigma >= 0, n_photons >= 1) and throws std::invalid_argument otherwise.
IntensityVector noisy_forward(const StateVector& input, const MeshParameters& params, const NoiseConfig& noise,
                              Rng& rng);

/// Multi-layer variant: every layer is perturbed independently and
/// photon-counted; the counted frequencies seed the next layer's input.
IntensityVector noisy_multi_layer_forward(const StateVector& input, std::span<const MeshParameters> layers,
                                          const NoiseConfig& noise, Rng& rng);

}  // namespace pvqc
