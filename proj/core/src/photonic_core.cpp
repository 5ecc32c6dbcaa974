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

#include "pvqc/photonic_core.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace pvqc {

MeshParameters MeshParameters::from_genes(std::span<const double> genes) {
  if (genes.size() != kGenesPerMesh) {
    throw std::invalid_argument("mesh needs " + std::to_string(kGenesPerMesh) + " genes, got " +
                                std::to_string(genes.size()));
  }
  MeshParameters p;
  for (std::size_t k = 0; k < kNumMzis; ++k) p.mzis_[k] = MZIParams(genes[2 * k + 1], genes[2 * k]);
  return p;
}

std::array<double, kGenesPerMesh> MeshParameters::to_genes() const {
  std::array<double, kGenesPerMesh> genes{};
  for (std::size_t k = 0; k < kNumMzis; ++k) {
    genes[2 * k] = mzis_[k].phi();
    genes[2 * k + 1] = mzis_[k].theta();
  }
  return genes;
}

std::vector<MeshParameters> layers_from_genes(std::span<const double> genes) {
  if (genes.empty() || genes.size() % kGenesPerMesh != 0) {
    throw std::invalid_argument("gene count " + std::to_string(genes.size()) + " is not a positive multiple of " +
                                std::to_string(kGenesPerMesh));
  }
  std::vector<MeshParameters> layers;
  layers.reserve(genes.size() / kGenesPerMesh);
  for (std::size_t off = 0; off < genes.size(); off += kGenesPerMesh) {
    layers.push_back(MeshParameters::from_genes(genes.subspan(off, kGenesPerMesh)));
  }
  return layers;
}

std::vector<double> layers_to_genes(std::span<const MeshParameters> layers) {
  std::vector<double> genes;
  genes.reserve(layers.size() * kGenesPerMesh);
  for (const auto& layer : layers) {
    const auto g = layer.to_genes();
    genes.insert(genes.end(), g.begin(), g.end());
  }
  return genes;
}

ComplexMatrix2 build_mzi(const MZIParams& params) {
  const double half = 0.5 * params.theta();
  const double s = std::sin(half);
  const double c = std::cos(half);
  const Complex ephi = std::polar(1.0, params.phi());
  const Complex global = Complex(0.0, 1.0) * std::polar(1.0, half);
  ComplexMatrix2 m;
  m << ephi * s, c, ephi * c, -s;
  return global * m;
}

ComplexMatrix4 embed_mzi(int mzi_index, const MZIParams& params) {
  if (mzi_index < 1 || mzi_index > static_cast<int>(kNumMzis)) {
    throw std::invalid_argument("MZI index " + std::to_string(mzi_index) + " outside 1..6");
  }
  const auto [a, b] = kMziModePairs[static_cast<std::size_t>(mzi_index - 1)];
  const ComplexMatrix2 block = build_mzi(params);
  ComplexMatrix4 u = ComplexMatrix4::Identity();
  u(a, a) = block(0, 0);
  u(a, b) = block(0, 1);
  u(b, a) = block(1, 0);
  u(b, b) = block(1, 1);
  return u;
}

ComplexMatrix4 compose_mesh(const MeshParameters& params) {
  // Left-multiplying by an embedded MZI only mixes rows a and b.
  ComplexMatrix4 u = ComplexMatrix4::Identity();
  for (std::size_t k = 0; k < kNumMzis; ++k) {
    const auto [a, b] = kMziModePairs[k];
    const ComplexMatrix2 m = build_mzi(params.mzi(k));
    const Eigen::RowVector4cd row_a = u.row(a);
    const Eigen::RowVector4cd row_b = u.row(b);
    u.row(a) = m(0, 0) * row_a + m(0, 1) * row_b;
    u.row(b) = m(1, 0) * row_a + m(1, 1) * row_b;
  }
  return u;
}

namespace {

void require_normalized(const StateVector& input, const char* who) {
  const double n = input.norm();
  if (!(std::abs(n - 1.0) <= 1e-6)) {
    throw std::invalid_argument(std::string(who) + ": input state norm " + std::to_string(n) + " is not 1");
  }
}

}  // namespace

StateVector forward(const StateVector& input, const MeshParameters& params) {
  require_normalized(input, "forward");
  return StateVector(compose_mesh(params) * input.amplitudes);
}

namespace {

StateVector reencode(const IntensityVector& iv) {
  StateVector s;
  for (std::size_t m = 0; m < kNumModes; ++m) s.amplitudes(static_cast<Eigen::Index>(m)) = std::sqrt(iv[m]);
  return s;
}

}  // namespace

IntensityVector multi_layer_forward(const StateVector& input, std::span<const ComplexMatrix4> unitaries) {
  if (unitaries.empty()) throw std::invalid_argument("multi_layer_forward: no layers");
  require_normalized(input, "multi_layer_forward");
  StateVector state = input;
  IntensityVector iv;
  for (std::size_t l = 0; l < unitaries.size(); ++l) {
    iv = intensities_exact(StateVector(unitaries[l] * state.amplitudes));
    if (l + 1 < unitaries.size()) state = reencode(iv);
  }
  return iv;
}

IntensityVector multi_layer_forward(const StateVector& input, std::span<const MeshParameters> layers) {
  if (layers.empty()) throw std::invalid_argument("multi_layer_forward: no layers");
  std::vector<ComplexMatrix4> unitaries;
  unitaries.reserve(layers.size());
  for (const auto& layer : layers) unitaries.push_back(compose_mesh(layer));
  return multi_layer_forward(input, std::span<const ComplexMatrix4>(unitaries));
}

double unitarity_error(const ComplexMatrix4& u) {
  return (u.adjoint() * u - ComplexMatrix4::Identity()).cwiseAbs().maxCoeff();
}

}  // namespace pvqc
