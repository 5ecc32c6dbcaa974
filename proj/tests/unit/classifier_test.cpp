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

#include <cmath>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "pvqc/classifier.hpp"
#include "pvqc/datasets.hpp"
#include "pvqc/encoding.hpp"
#include "pvqc/readout.hpp"
#include "test_util.hpp"

namespace pvqc {
namespace {

std::vector<MeshParameters> random_layers(std::uint64_t seed, std::size_t n) {
  Rng rng(seed);
  return layers_from_genes(test::random_genes(rng, n * kGenesPerMesh));
}

GAConfig small_ga(std::uint64_t seed) {
  GAConfig c;
  c.population_size = 12;
  c.n_generations = 6;
  c.rng_seed = seed;
  return c;
}

TEST(ReadoutNames, RoundTrip) {
  EXPECT_EQ(parse_readout_mode("exact"), ReadoutMode::kExact);
  EXPECT_EQ(parse_readout_mode("hardware-emulation"), ReadoutMode::kHardware);
  EXPECT_EQ(parse_readout_mode(readout_mode_name(ReadoutMode::kHardware)), ReadoutMode::kHardware);
  EXPECT_EQ(parse_cost_normalization("raw"), CostNormalization::kRaw);
  EXPECT_THROW(parse_readout_mode("quantum"), ConfigError);
  EXPECT_THROW(parse_cost_normalization("softmax"), ConfigError);
}

TEST(Evaluate, AccuracyMatchesPerSampleOracle) {
  const Dataset ds = generate_circle(40, 1);
  for (std::size_t depth : {1u, 2u}) {
    const auto layers = random_layers(10 + depth, depth);
    const EvaluationReport r = evaluate(ds, layers, ReadoutConfig{});
    std::size_t correct = 0;
    for (const auto& s : ds.samples) {
      correct += predict_label(multi_layer_forward(encode_features(s.features), layers), 2) == s.label;
    }
    EXPECT_DOUBLE_EQ(r.accuracy, static_cast<double>(correct) / static_cast<double>(ds.size()));
    EXPECT_EQ(r.confusion.trace(), correct);
    EXPECT_EQ(r.predictions.size(), ds.size());
  }
}

TEST(Evaluate, SelfLabelledDataIsPerfect) {
  Dataset ds = generate_sine(30, 2);
  const auto layers = random_layers(3, 1);
  for (auto& s : ds.samples) s.label = predict_label(multi_layer_forward(encode_features(s.features), layers), 2);
  EXPECT_DOUBLE_EQ(evaluate(ds, layers, ReadoutConfig{}).accuracy, 1.0);
  for (auto& s : ds.samples) s.label = 1 - s.label;
  EXPECT_DOUBLE_EQ(evaluate(ds, layers, ReadoutConfig{}).accuracy, 0.0);
}

TEST(Evaluate, HardwareDeterministicPerSeedAndRejectsEmpty) {
  const Dataset ds = generate_square(20, 3);
  const auto layers = random_layers(4, 1);
  ReadoutConfig rc;
  rc.mode = ReadoutMode::kHardware;
  EXPECT_EQ(evaluate(ds, layers, rc).accuracy, evaluate(ds, layers, rc).accuracy);
  EXPECT_THROW(evaluate(Dataset{}, layers, rc), std::invalid_argument);
}

TEST(Objective, ExactCostMatchesReadoutCost) {
  const Dataset ds = generate_circle(25, 5);
  std::vector<int> labels;
  std::vector<OneHotTarget> targets;
  for (const auto& s : ds.samples) {
    labels.push_back(s.label);
    targets.push_back(OneHotTarget::for_label(s.label, 2));
  }
  Rng rng(6);
  const auto genes = test::random_genes(rng, kGenesPerMesh);
  const auto layers = layers_from_genes(genes);
  for (CostNormalization norm : {CostNormalization::kDesignated, CostNormalization::kRaw}) {
    ReadoutConfig rc;
    rc.normalization = norm;
    const ClassificationObjective objective(encode_dataset(ds), labels, rc, 1);
    std::vector<IntensityVector> ivs;
    for (const auto& s : ds.samples) {
      const IntensityVector iv = multi_layer_forward(encode_features(s.features), layers);
      ivs.push_back(norm == CostNormalization::kDesignated ? renormalize_designated(iv, 2) : iv);
    }
    const Evaluation e = objective(genes, 0);
    EXPECT_NEAR(e.cost, cost(ivs, targets), 1e-9);
    EXPECT_DOUBLE_EQ(e.accuracy, evaluate(ds, layers, rc).accuracy);
    EXPECT_EQ(objective(genes, 99).cost, e.cost) << "exact mode ignores the stream";
  }
}

TEST(Objective, HardwareDependsOnlyOnStream) {
  const Dataset ds = generate_sine(25, 7);
  std::vector<int> labels;
  for (const auto& s : ds.samples) labels.push_back(s.label);
  ReadoutConfig rc;
  rc.mode = ReadoutMode::kHardware;
  const ClassificationObjective objective(encode_dataset(ds), labels, rc, 2);
  Rng rng(8);
  const auto genes = test::random_genes(rng, 2 * kGenesPerMesh);
  EXPECT_EQ(objective.n_genes(), 24u);
  EXPECT_EQ(objective(genes, 5).cost, objective(genes, 5).cost);
  EXPECT_NE(objective(genes, 5).cost, objective(genes, 6).cost);
  EXPECT_THROW(objective(test::random_genes(rng, kGenesPerMesh), 0), std::invalid_argument);
}

TEST(Train, DeterministicMonotoneAndConsistent) {
  const Dataset ds = generate_circle(30, 9);
  const TrainResult a = train(ds, small_ga(3), ReadoutConfig{});
  const TrainResult b = train(ds, small_ga(3), ReadoutConfig{});
  EXPECT_EQ(a.layers, b.layers);
  EXPECT_EQ(a.history.records, b.history.records);
  ASSERT_EQ(a.history.records.size(), 6u);
  EXPECT_TRUE(a.history.best_cost_non_increasing());
  EXPECT_DOUBLE_EQ(a.best_cost, a.history.records.back().best_cost);
  EXPECT_DOUBLE_EQ(a.train_accuracy, evaluate(ds, a.layers, ReadoutConfig{}).accuracy);
}

TEST(Train, MultiLayerAndErrors) {
  const Dataset ds = generate_square(10, 1);
  EXPECT_EQ(train(ds, small_ga(1), ReadoutConfig{}, 3).layers.size(), 3u);
  EXPECT_THROW(train(ds, small_ga(1), ReadoutConfig{}, 0), std::invalid_argument);
  EXPECT_THROW(train(Dataset{}, small_ga(1), ReadoutConfig{}), std::invalid_argument);
}

}  // namespace
}  // namespace pvqc
