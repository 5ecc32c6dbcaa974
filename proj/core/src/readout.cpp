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

#include "pvqc/readout.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <string>

namespace pvqc {

namespace {

void require_classes(int n_classes) {
  if (n_classes < 1 || n_classes > kMaxClasses) {
    throw std::invalid_argument("n_classes " + std::to_string(n_classes) + " outside 1..4");
  }
}

}  // namespace

IntensityVector intensities_sampled(const IntensityVector& probabilities, std::uint64_t n_photons, Rng& rng) {
  if (n_photons == 0) throw std::invalid_argument("intensities_sampled: n_photons must be >= 1");
  // Multinomial draw as a chain of conditional binomials.
  IntensityVector out;
  std::uint64_t remaining = n_photons;
  double mass_left = 1.0;
  for (std::size_t m = 0; m + 1 < kNumModes && remaining > 0; ++m) {
    const double p = std::max(0.0, probabilities[m]);
    const double q = mass_left > 0.0 ? std::clamp(p / mass_left, 0.0, 1.0) : 1.0;
    std::binomial_distribution<std::uint64_t> draw(remaining, q);
    const std::uint64_t k = draw(rng);
    out[m] = static_cast<double>(k);
    remaining -= k;
    mass_left -= p;
  }
  out[kNumModes - 1] = static_cast<double>(remaining);
  const double n = static_cast<double>(n_photons);
  for (auto& v : out.values) v /= n;
  return out;
}

IntensityVector intensities_sampled(const StateVector& state, std::uint64_t n_photons, std::uint64_t rng_seed) {
  Rng rng(rng_seed);
  return intensities_sampled(intensities_exact(state), n_photons, rng);
}

int predict_label(const IntensityVector& iv, int n_classes) {
  require_classes(n_classes);
  int best = 0;
  for (int m = 1; m < n_classes; ++m) {
    if (iv[static_cast<std::size_t>(m)] > iv[static_cast<std::size_t>(best)]) best = m;
  }
  return best;
}

IntensityVector renormalize_designated(const IntensityVector& iv, int n_classes) {
  require_classes(n_classes);
  const auto c = static_cast<std::size_t>(n_classes);
  double total = 0.0;
  for (std::size_t m = 0; m < c; ++m) total += iv[m];
  IntensityVector out;
  for (std::size_t m = 0; m < c; ++m) out[m] = total > 0.0 ? iv[m] / total : 1.0 / static_cast<double>(c);
  return out;
}

OneHotTarget OneHotTarget::for_label(int label, int n_classes) {
  require_classes(n_classes);
  if (label < 0 || label >= n_classes) {
    throw std::invalid_argument("label " + std::to_string(label) + " outside 0.." + std::to_string(n_classes - 1));
  }
  OneHotTarget t;
  t.values[static_cast<std::size_t>(label)] = 1.0;
  return t;
}

double cost(std::span<const IntensityVector> ivs, std::span<const OneHotTarget> targets) {
  if (ivs.size() != targets.size()) {
    throw std::invalid_argument("cost: " + std::to_string(ivs.size()) + " intensity vectors vs " +
                                std::to_string(targets.size()) + " targets");
  }
  if (ivs.empty()) throw std::invalid_argument("cost: no samples");
  double total = 0.0;
  for (std::size_t i = 0; i < ivs.size(); ++i) {
    for (std::size_t m = 0; m < kNumModes; ++m) {
      const double d = ivs[i][m] - targets[i].values[m];
      total += d * d;
    }
  }
  return total;
}

ConfusionMatrix::ConfusionMatrix(int n_classes) : n_classes_(n_classes) {
  require_classes(n_classes);
  counts_.assign(static_cast<std::size_t>(n_classes * n_classes), 0);
}

void ConfusionMatrix::add(int true_label, int predicted_label) {
  if (true_label < 0 || true_label >= n_classes_ || predicted_label < 0 || predicted_label >= n_classes_) {
    throw std::invalid_argument("confusion matrix label out of range");
  }
  ++counts_[static_cast<std::size_t>(true_label * n_classes_ + predicted_label)];
}

std::uint64_t ConfusionMatrix::at(int true_label, int predicted_label) const {
  return counts_.at(static_cast<std::size_t>(true_label * n_classes_ + predicted_label));
}

std::uint64_t ConfusionMatrix::total() const {
  std::uint64_t t = 0;
  for (auto c : counts_) t += c;
  return t;
}

std::uint64_t ConfusionMatrix::trace() const {
  std::uint64_t t = 0;
  for (int k = 0; k < n_classes_; ++k) t += at(k, k);
  return t;
}

double ConfusionMatrix::accuracy() const {
  const auto n = total();
  return n == 0 ? 0.0 : static_cast<double>(trace()) / static_cast<double>(n);
}

}  // namespace pvqc
