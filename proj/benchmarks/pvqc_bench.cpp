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

#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "pvqc/classifier.hpp"
#include "pvqc/datasets.hpp"
#include "pvqc/encoding.hpp"
#include "pvqc/ga.hpp"
#include "pvqc/photonic_core.hpp"

namespace {

std::vector<double> genes(std::size_t n, std::uint64_t seed) {
  pvqc::Rng rng(seed);
  std::uniform_real_distribution<double> u(0.0, pvqc::kTwoPi);
  std::vector<double> g(n);
  for (auto& x : g) x = u(rng);
  return g;
}

void BM_ComposeMesh(benchmark::State& state) {
  const auto p = pvqc::MeshParameters::from_genes(genes(pvqc::kGenesPerMesh, 1));
  for (auto _ : state) benchmark::DoNotOptimize(pvqc::compose_mesh(p));
}
BENCHMARK(BM_ComposeMesh);

void BM_Forward(benchmark::State& state) {
  const auto p = pvqc::MeshParameters::from_genes(genes(pvqc::kGenesPerMesh, 2));
  const auto s = pvqc::encode_2d({0.3, 1.1});
  for (auto _ : state) benchmark::DoNotOptimize(pvqc::forward(s, p));
}
BENCHMARK(BM_Forward);

// One fitness call over a 600-sample training set.
void BM_Objective(benchmark::State& state) {
  const auto mode = state.range(0) == 0 ? pvqc::ReadoutMode::kExact : pvqc::ReadoutMode::kHardware;
  const pvqc::Dataset ds = pvqc::generate_sine(300, 3);
  std::vector<int> labels;
  for (const auto& s : ds.samples) labels.push_back(s.label);
  pvqc::ReadoutConfig rc;
  rc.mode = mode;
  const pvqc::ClassificationObjective objective(pvqc::encode_dataset(ds), labels, rc, 1);
  const auto g = genes(pvqc::kGenesPerMesh, 4);
  std::uint64_t stream = 0;
  for (auto _ : state) benchmark::DoNotOptimize(objective(g, stream++));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(ds.size()));
}
BENCHMARK(BM_Objective)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

void BM_Generation(benchmark::State& state) {
  const pvqc::Dataset ds = pvqc::generate_circle(300, 5);
  std::vector<int> labels;
  for (const auto& s : ds.samples) labels.push_back(s.label);
  const pvqc::ClassificationObjective objective(pvqc::encode_dataset(ds), labels, pvqc::ReadoutConfig{}, 1);
  const pvqc::FitnessFunction fitness = [&](std::span<const double> g, std::uint64_t s) { return objective(g, s); };
  pvqc::GAConfig config;
  pvqc::Rng rng(6);
  pvqc::Population pop = pvqc::init_population(config, objective.n_genes(), rng);
  pvqc::evaluate_population(pop, fitness, config, 0);
  std::size_t generation = 1;
  for (auto _ : state) pop = pvqc::step_generation(pop, fitness, config, rng, generation++);
}
BENCHMARK(BM_Generation)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
