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

// Detector readout: intensities, labels, the squared-error training cost and
// confusion matrices. Class c is read out on mode c (zero-based), so a
// C-class task uses modes 0..C-1.

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "pvqc/random.hpp"
#include "pvqc/state.hpp"

namespace pvqc {

inline constexpr int kMaxClasses = static_cast<int>(kNumModes);

/// Draws `n_photons` detections from |amplitude_m|^2 and returns counts / N.
/// Throws std::invalid_argument when n_photons == 0.
IntensityVector intensities_sampled(const StateVector& state, std::uint64_t n_photons, std::uint64_t rng_seed);
IntensityVector intensities_sampled(const IntensityVector& probabilities, std::uint64_t n_photons, Rng& rng);

/// Argmax over the first `n_classes` modes; ties go to the lowest mode.
int predict_label(const IntensityVector& iv, int n_classes);

/// Rescales the first `n_classes` entries to sum to 1 and zeroes the rest.
/// If no intensity reached the designated modes the result is uniform over them.
IntensityVector renormalize_designated(const IntensityVector& iv, int n_classes);

struct OneHotTarget {
  std::array<double, kNumModes> values{};

  /// Throws std::invalid_argument unless 0 <= label < n_classes <= 4.
  static OneHotTarget for_label(int label, int n_classes);
};

/// Sum over samples of the squared Euclidean distance between each
/// intensity vector and its target, over all four modes.
/// Throws std::invalid_argument on length mismatch or empty input.
double cost(std::span<const IntensityVector> ivs, std::span<const OneHotTarget> targets);

/// Rows are true classes, columns predictions.
class ConfusionMatrix {
 public:
  explicit ConfusionMatrix(int n_classes);

  void add(int true_label, int predicted_label);

  int n_classes() const { return n_classes_; }
  std::uint64_t at(int true_label, int predicted_label) const;
  std::uint64_t total() const;
  std::uint64_t trace() const;
  double accuracy() const;

 private:
  int n_classes_;
  std::vector<std::uint64_t> counts_;
};

}  // namespace pvqc
