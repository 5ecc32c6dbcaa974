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

#include "pvqc/state.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace pvqc {

double wrap_phase(double radians) {
  double r = std::fmod(radians, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  // fmod of a tiny negative number can round back up to exactly 2*pi.
  if (r >= kTwoPi) r = 0.0;
  return r;
}

double circular_distance(double a, double b) {
  const double d = wrap_phase(a - b);
  return d > kPi ? kTwoPi - d : d;
}

StateVector StateVector::basis(std::size_t mode) {
  if (mode >= kNumModes) throw std::invalid_argument("basis mode out of range");
  StateVector s;
  s.amplitudes(static_cast<Eigen::Index>(mode)) = 1.0;
  return s;
}

StateVector StateVector::from_real(double a0, double a1, double a2, double a3) {
  StateVector s;
  s.amplitudes << a0, a1, a2, a3;
  return s;
}

double IntensityVector::sum() const { return std::accumulate(values.begin(), values.end(), 0.0); }

IntensityVector intensities_exact(const StateVector& state) {
  IntensityVector iv;
  for (std::size_t m = 0; m < kNumModes; ++m) iv[m] = std::norm(state[m]);
  return iv;
}

}  // namespace pvqc
