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

#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <numbers>

#include <Eigen/Dense>

namespace pvqc {

using Complex = std::complex<double>;

inline constexpr std::size_t kNumModes = 4;
inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Reduces an angle into [0, 2*pi).
double wrap_phase(double radians);

/// Shortest distance between two angles on the circle, in [0, pi].
double circular_distance(double a, double b);

/// Single photon spread over the four waveguide modes.
struct StateVector {
  Eigen::Vector4cd amplitudes = Eigen::Vector4cd::Zero();

  StateVector() = default;
  explicit StateVector(const Eigen::Vector4cd& amps) : amplitudes(amps) {}

  static StateVector basis(std::size_t mode);
  static StateVector from_real(double a0, double a1, double a2, double a3);

  double norm() const { return amplitudes.norm(); }
  Complex operator[](std::size_t mode) const { return amplitudes(static_cast<Eigen::Index>(mode)); }
};

/// Per-mode detection probabilities (exact) or photon-count frequencies (sampled).
struct IntensityVector {
  std::array<double, kNumModes> values{};

  double operator[](std::size_t mode) const { return values[mode]; }
  double& operator[](std::size_t mode) { return values[mode]; }
  double sum() const;

  friend bool operator==(const IntensityVector&, const IntensityVector&) = default;
};

/// |amplitude_m|^2 for each mode.
IntensityVector intensities_exact(const StateVector& state);

}  // namespace pvqc
