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

// Island-model genetic algorithm over real-valued phase chromosomes.
//
// Each generation, per island: the elite_count lowest-cost individuals pass
// through unchanged, round(crossover_fraction * rest) children come from
// single-point crossover of tournament-selected parents and the remainder
// are Gaussian mutants of tournament-selected parents. Every
// migration_interval generations each island sends copies of its best
// individuals to the next island in a ring.
//
// Genes live on the circle [0, 2*pi). Fitness is a cost: lower is better.

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pvqc/random.hpp"

namespace pvqc {

struct GAConfig {
  std::size_t population_size = 50;
  std::size_t n_generations = 100;
  double crossover_fraction = 0.3;
  double migration_fraction = 0.5;
  std::size_t migration_interval = 20;
  std::size_t n_islands = 2;
  std::size_t elite_count = 2;
  std::size_t tournament_size = 2;
  double mutation_sigma = 0.3;
  std::uint64_t rng_seed = 0;
  /// Worker threads for fitness evaluation; results do not depend on it.
  std::size_t n_threads = 1;
  /// Re-score surviving individuals every generation (useful when fitness is
  /// noisy). Off by default, so cached elites keep the best cost monotone.
  bool reevaluate_survivors = false;

  /// Throws std::invalid_argument on inconsistent settings.
  void validate() const;
  std::size_t island_size(std::size_t island) const;
};

using Chromosome = std::vector<double>;

struct Evaluation {
  double cost = std::numeric_limits<double>::infinity();
  double accuracy = std::numeric_limits<double>::quiet_NaN();
};

/// Called with the genes and a stream seed unique to (generation, slot);
/// must be safe to call concurrently.
using FitnessFunction = std::function<Evaluation(std::span<const double> genes, std::uint64_t stream_seed)>;

struct Individual {
  Chromosome chromosome;
  Evaluation fitness;
  bool evaluated = false;
};

using Island = std::vector<Individual>;

struct Population {
  std::vector<Island> islands;

  std::size_t size() const;
  /// Lowest-cost evaluated individual over all islands (first on ties).
  const Individual& best() const;
};

struct GenerationRecord {
  std::size_t generation = 0;
  double best_cost = 0.0;
  double mean_cost = 0.0;
  double best_accuracy = 0.0;
  double mean_accuracy = 0.0;

  friend bool operator==(const GenerationRecord&, const GenerationRecord&) = default;
};

struct TrainingHistory {
  std::vector<GenerationRecord> records;

  /// CSV with header generation,best_cost,mean_cost,best_accuracy,mean_accuracy.
  std::string to_csv() const;
  bool best_cost_non_increasing() const;
};

GenerationRecord summarize(const Population& pop, std::size_t generation);

/// Uniform genes in [0, 2*pi), islands sized as evenly as possible.
/// Throws std::invalid_argument if population_size < 2 or the config is invalid.
Population init_population(const GAConfig& config, std::size_t n_genes, Rng& rng);
Population init_population(const GAConfig& config, std::size_t n_genes);

/// Scores every individual not yet evaluated (all of them when `force`).
/// Individual j of the flattened population receives stream seed
/// rng_seed + generation * population_size + j.
void evaluate_population(Population& pop, const FitnessFunction& fitness, const GAConfig& config,
                         std::size_t generation, bool force = false);

/// Tournament of `tournament_size` uniform draws with replacement; the
/// lowest cost wins, first draw on ties. Throws std::invalid_argument on an
/// empty island.
const Individual& select_parent(std::span<const Individual> island, Rng& rng, std::size_t tournament_size = 2);

/// Single-point crossover at cut c: child1 = a[0..c) ++ b[c..), child2 = b[0..c) ++ a[c..).
std::pair<Chromosome, Chromosome> crossover_at(const Chromosome& a, const Chromosome& b, std::size_t cut);
/// Cut drawn uniformly from 1..n-1 (no-op copy for chromosomes shorter than 2).
std::pair<Chromosome, Chromosome> crossover(const Chromosome& a, const Chromosome& b, Rng& rng);

/// Each gene is perturbed by N(0, sigma^2) with probability 1/n, then wrapped.
/// Throws std::invalid_argument on negative sigma.
Chromosome mutate(const Chromosome& c, double sigma, Rng& rng);

/// One generation of elitism + crossover + mutation; new individuals are
/// evaluated before returning. Island sizes are preserved.
Population step_generation(const Population& pop, const FitnessFunction& fitness, const GAConfig& config, Rng& rng,
                           std::size_t generation);

/// Ring exchange: island i's best ceil(migration_fraction * size) copies
/// compete with island i+1's equally many worst individuals and the better
/// half of that pool stays. No-op with one island or a zero fraction.
Population migrate(const Population& pop, const GAConfig& config);

bool migration_due(std::size_t generation, const GAConfig& config);

struct GAResult {
  Chromosome best;
  Evaluation best_fitness;
  TrainingHistory history;
  Population final_population;
};

/// init -> [step, periodic migrate] x n_generations. History rows are
/// numbered 1..n_generations.
GAResult run_ga(std::size_t n_genes, const FitnessFunction& fitness, const GAConfig& config);

}  // namespace pvqc
