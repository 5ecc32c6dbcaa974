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

// Synthetic nonlinear-boundary tasks on [0, pi/2]^2, the Iris loader and
// train/test splitting.
//
// Boundaries (all centred on the quadrant, classes of equal area where the
// shape allows it):
//   square: label 1 iff max(|x1 - pi/4|, |x2 - pi/4|) <= L/2, L = (pi/2)/sqrt(2)
//   circle: label 1 iff (x1 - pi/4)^2 + (x2 - pi/4)^2 <= r^2, r = (pi/2)/sqrt(2 pi)
//   sine:   label 1 iff x2 > pi/4 + (pi/8) sin(8 x1)

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pvqc/errors.hpp"

namespace pvqc {

enum class Task { kSquare, kCircle, kSine, kIris };

std::string_view task_name(Task task);
/// Throws ConfigError for unknown names.
Task parse_task(std::string_view name);
bool is_synthetic(Task task);

/// Appendix-style migration fraction per task: 0.5 / 0.7 / 0.5, and 0.5 for Iris.
double default_migration_fraction(Task task);

struct LabeledSample {
  std::vector<double> features;
  int label = 0;

  friend bool operator==(const LabeledSample&, const LabeledSample&) = default;
};

struct Dataset {
  std::vector<LabeledSample> samples;
  int n_classes = 0;
  int feature_dim = 0;
  std::optional<Task> boundary;

  std::size_t size() const { return samples.size(); }
  bool empty() const { return samples.empty(); }
  std::vector<std::size_t> class_counts() const;
  std::vector<std::vector<double>> feature_rows() const;

  /// Throws std::logic_error if a sample violates the dimension/label
  /// invariants or some class has no sample.
  void validate() const;
};

struct SplitSpec {
  double train_fraction = 0.8;
  std::uint64_t rng_seed = 0;
  bool stratified = true;
};

int square_label(double x1, double x2);
int circle_label(double x1, double x2);
int sine_label(double x1, double x2);
/// Dispatches to the predicate for a synthetic task.
int synthetic_label(Task task, double x1, double x2);

/// Rejection-samples uniform points in the open quadrant (0, pi/2)^2 until
/// each class holds exactly `n_per_class`. Throws std::invalid_argument if
/// n_per_class == 0 or task is Iris.
Dataset generate_synthetic(Task task, std::size_t n_per_class, std::uint64_t seed);
Dataset generate_square(std::size_t n_per_class, std::uint64_t seed);
Dataset generate_circle(std::size_t n_per_class, std::uint64_t seed);
Dataset generate_sine(std::size_t n_per_class, std::uint64_t seed);

/// Canonical five-column Iris CSV (four numbers and the species name, no
/// header). Species map setosa -> 0, versicolor -> 1, virginica -> 2; the
/// "Iris-" prefix is optional. Throws ParseError naming the offending line.
Dataset load_iris(const std::filesystem::path& path);

/// Dataset CSV with header `x1,...,xD,label`.
Dataset read_dataset_csv(const std::filesystem::path& path);
/// Header-form CSV, or canonical Iris rows when the first line is not a header.
Dataset read_any_dataset(const std::filesystem::path& path);
/// Atomic write (temp file + rename). Throws IoError naming the path.
void write_dataset_csv(const Dataset& ds, const std::filesystem::path& path);
std::string format_dataset_csv(const Dataset& ds);

/// Seeded shuffle then split; stratified splits allocate train slots per
/// class by largest remainder so class proportions hold within one sample.
/// Original sample order is kept within each side. Throws
/// std::invalid_argument when either side would be empty.
std::pair<Dataset, Dataset> split(const Dataset& ds, const SplitSpec& spec);

/// Same as split() but returns the original indices of each side.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split_indices(const Dataset& ds, const SplitSpec& spec);

}  // namespace pvqc
