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

#include "pvqc/encoding.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace pvqc {

namespace {

void require_finite(std::initializer_list<double> values, const char* who) {
  for (double v : values) {
    if (!std::isfinite(v)) throw std::invalid_argument(std::string(who) + ": non-finite feature");
  }
}

}  // namespace

StateVector encode_2d(const Feature2D& f) {
  require_finite({f.x1, f.x2}, "encode_2d");
  const double c1 = std::cos(f.x1), s1 = std::sin(f.x1);
  const double c2 = std::cos(f.x2), s2 = std::sin(f.x2);
  return StateVector::from_real(c1 * c2, c1 * s2, s1 * c2, s1 * s2);
}

ReducedFeature3D reduce_iris(const Feature4D& f) { return {f.x1, f.x2 + f.x3, f.x3 + f.x4}; }

StateVector encode_3d(const ReducedFeature3D& y) {
  require_finite({y.y1, y.y2, y.y3}, "encode_3d");
  const double c1 = std::cos(y.y1), s1 = std::sin(y.y1);
  return StateVector::from_real(c1 * std::cos(y.y2), c1 * std::sin(y.y2), s1 * std::cos(y.y3), s1 * std::sin(y.y3));
}

StateVector encode_features(std::span<const double> features) {
  switch (features.size()) {
    case 2:
      return encode_2d({features[0], features[1]});
    case 4:
      return encode_3d(reduce_iris({features[0], features[1], features[2], features[3]}));
    default:
      throw std::invalid_argument("cannot encode " + std::to_string(features.size()) +
                                  " features; expected 2 or 4");
  }
}

std::vector<double> scale_features(std::span<const double> raw, std::span<const double> per_feature_min,
                                   std::span<const double> per_feature_max, double target_max) {
  if (raw.size() != per_feature_min.size() || raw.size() != per_feature_max.size()) {
    throw std::invalid_argument("scale_features: width mismatch");
  }
  std::vector<double> out(raw.size());
  for (std::size_t j = 0; j < raw.size(); ++j) {
    const double lo = per_feature_min[j];
    const double hi = per_feature_max[j];
    if (!(lo < hi)) {
      throw std::invalid_argument("scale_features: feature " + std::to_string(j + 1) + " has min >= max");
    }
    const double t = std::clamp((raw[j] - lo) / (hi - lo), 0.0, 1.0);
    out[j] = t * target_max;
  }
  return out;
}

FeatureScaler FeatureScaler::fit(std::span<const std::vector<double>> rows, double target_max) {
  if (rows.empty()) throw std::invalid_argument("FeatureScaler::fit: no rows");
  FeatureScaler s;
  s.target_max = target_max;
  s.min = rows.front();
  s.max = rows.front();
  for (const auto& row : rows) {
    if (row.size() != s.min.size()) throw std::invalid_argument("FeatureScaler::fit: ragged rows");
    for (std::size_t j = 0; j < row.size(); ++j) {
      s.min[j] = std::min(s.min[j], row[j]);
      s.max[j] = std::max(s.max[j], row[j]);
    }
  }
  for (std::size_t j = 0; j < s.min.size(); ++j) {
    if (!(s.min[j] < s.max[j])) {
      throw std::invalid_argument("FeatureScaler::fit: feature " + std::to_string(j + 1) + " is constant");
    }
  }
  return s;
}

}  // namespace pvqc
