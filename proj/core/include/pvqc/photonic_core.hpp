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

// Four-mode programmable interferometer built from six Mach-Zehnder units.
//
// Each MZI is two 50:50 beam splitters with an internal phase theta (sets
// the splitting ratio) and an external phase phi on its first input port:
//
//   U_MZI = i e^{i theta/2} [[e^{i phi} sin(theta/2),  cos(theta/2)],
//                            [e^{i phi} cos(theta/2), -sin(theta/2)]]
//
// The mesh applies MZI 1 first and MZI 6 last. MZIs act on the mode pairs
// (1,2), (3,4), (2,3), (1,2), (3,4), (2,3): two rectangular layers.

#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "pvqc/state.hpp"

namespace pvqc {

using ComplexMatrix2 = Eigen::Matrix2cd;
using ComplexMatrix4 = Eigen::Matrix4cd;

inline constexpr std::size_t kNumMzis = 6;
inline constexpr std::size_t kGenesPerMesh = 2 * kNumMzis;

/// Zero-based mode pair of each MZI, in application order.
inline constexpr std::array<std::pair<int, int>, kNumMzis> kMziModePairs = {{
    {0, 1}, {2, 3}, {1, 2}, {0, 1}, {2, 3}, {1, 2},
}};

/// Phase settings of one MZI; both angles are kept in [0, 2*pi).
class MZIParams {
 public:
  MZIParams() = default;
  MZIParams(double theta, double phi) : theta_(wrap_phase(theta)), phi_(wrap_phase(phi)) {}

  double theta() const { return theta_; }
  double phi() const { return phi_; }

  friend bool operator==(const MZIParams&, const MZIParams&) = default;

 private:
  double theta_ = 0.0;
  double phi_ = 0.0;
};

/// The twelve trainable phases of one mesh, indexed by MZI position.
class MeshParameters {
 public:
  MeshParameters() = default;
  explicit MeshParameters(const std::array<MZIParams, kNumMzis>& mzis) : mzis_(mzis) {}

  /// Genes are laid out [phi1, theta1, phi2, theta2, ..., phi6, theta6].
  static MeshParameters from_genes(std::span<const double> genes);
  std::array<double, kGenesPerMesh> to_genes() const;

  /// Zero-based access; mzi(0) is MZI 1.
  const MZIParams& mzi(std::size_t k) const { return mzis_.at(k); }
  MZIParams& mzi(std::size_t k) { return mzis_.at(k); }
  const std::array<MZIParams, kNumMzis>& mzis() const { return mzis_; }

  friend bool operator==(const MeshParameters&, const MeshParameters&) = default;

 private:
  std::array<MZIParams, kNumMzis> mzis_{};
};

/// Splits a flat gene vector (12 genes per layer) into per-layer meshes.
std::vector<MeshParameters> layers_from_genes(std::span<const double> genes);
std::vector<double> layers_to_genes(std::span<const MeshParameters> layers);

ComplexMatrix2 build_mzi(const MZIParams& params);

/// 4x4 direct sum of the MZI block on its mode pair with identity elsewhere.
/// `mzi_index` is one-based (1..6); out-of-range throws std::invalid_argument.
ComplexMatrix4 embed_mzi(int mzi_index, const MZIParams& params);

/// U6 * U5 * ... * U1.
ComplexMatrix4 compose_mesh(const MeshParameters& params);

/// compose_mesh(params) * input. Throws std::invalid_argument if the input
/// norm differs from 1 by more than 1e-6.
StateVector forward(const StateVector& input, const MeshParameters& params);

/// Cascade of meshes. After each layer the exact intensities are measured and
/// re-encoded as real amplitudes sqrt(I_m) for the next layer. Returns the
/// intensities after the last layer.
IntensityVector multi_layer_forward(const StateVector& input, std::span<const MeshParameters> layers);

/// Same cascade, reusing precomposed layer unitaries.
IntensityVector multi_layer_forward(const StateVector& input, std::span<const ComplexMatrix4> unitaries);

/// max_ij |(U^dagger U - I)_ij|
double unitarity_error(const ComplexMatrix4& u);

}  // namespace pvqc
