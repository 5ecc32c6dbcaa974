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

#include <span>
#include <vector>

#include "pvqc/state.hpp"

namespace pvqc {

struct Feature2D {
  double x1 = 0.0;
  double x2 = 0.0;
};

struct Feature4D {
  double x1 = 0.0;
  double x2 = 0.0;
  double x3 = 0.0;
  double x4 = 0.0;
};

struct ReducedFeature3D {
  double y1 = 0.0;
  double y2 = 0.0;
  double y3 = 0.0;
};

/// (cos x1 cos x2, cos x1 sin x2, sin x1 cos x2, sin x1 sin x2).
/// Throws std::invalid_argument on non-finite input.
StateVector encode_2d(const Feature2D& f);

/// y1 = x1, y2 = x2 + x3, y3 = x3 + x4.
ReducedFeature3D reduce_iris(const Feature4D& f);

/// (cos y1 cos y2, cos y1 sin y2, sin y1 cos y3, sin y1 sin y3).
StateVector encode_3d(const ReducedFeature3D& y);

/// Encodes a raw feature row: 2 features go through encode_2d, 4 features
/// through reduce_iris + encode_3d. Other widths throw std::invalid_argument.
StateVector encode_features(std::span<const double> features);

/// Affine map of each feature from [min, max] onto [0, target_max], clamping
/// values outside the range. Throws std::invalid_argument if min >= max for
/// any feature or the widths disagree.
std::vector<double> scale_features(std::span<const double> raw, std::span<const double> per_feature_min,
                                   std::span<const double> per_feature_max, double target_max);

/// Min-max statistics captured from a training set and replayed at inference.
struct FeatureScaler {
  std::vector<double> min;
  std::vector<double> max;
  double target_max = kPi / 4.0;

  /// Fits per-feature min/max over `rows`. Throws std::invalid_argument if
  /// `rows` is empty, ragged or some feature is constant.
  static FeatureScaler fit(std::span<const std::vector<double>> rows, double target_max);

  std::vector<double> apply(std::span<const double> raw) const {
    return scale_features(raw, min, max, target_max);
  }

  friend bool operator==(const FeatureScaler&, const FeatureScaler&) = default;
};

}  // namespace pvqc
