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

#include "pvqc/ga.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "io_util.hpp"
#include "pvqc/state.hpp"

namespace pvqc {

void GAConfig::validate() const {
  if (population_size < 2) throw std::invalid_argument("GA: population_size must be >= 2");
  if (n_islands < 1) throw std::invalid_argument("GA: n_islands must be >= 1");
  if (n_islands > population_size / 2) {
    throw std::invalid_argument("GA: every island needs at least two individuals");
  }
  if (elite_count >= island_size(n_islands - 1)) {
    throw std::invalid_argument("GA: elite_count must be smaller than the island size");
  }
  if (!(crossover_fraction >= 0.0 && crossover_fraction <= 1.0)) {
    throw std::invalid_argument("GA: crossover_fraction must lie in [0, 1]");
  }
  if (!(migration_fraction >= 0.0 && migration_fraction <= 1.0)) {
    throw std::invalid_argument("GA: migration_fraction must lie in [0, 1]");
  }
  if (migration_interval < 1) throw std::invalid_argument("GA: migration_interval must be >= 1");
  if (tournament_size < 1) throw std::invalid_argument("GA: tournament_size must be >= 1");
  if (!(mutation_sigma >= 0.0)) throw std::invalid_argument("GA: mutation_sigma must be >= 0");
}

std::size_t GAConfig::island_size(std::size_t island) const {
  const std::size_t base = population_size / n_islands;
  return base + (island < population_size % n_islands ? 1 : 0);
}

std::size_t Population::size() const {
  std::size_t n = 0;
  for (const auto& island : islands) n += island.size();
  return n;
}

const Individual& Population::best() const {
  const Individual* best = nullptr;
  for (const auto& island : islands) {
    for (const auto& ind : island) {
      if (!ind.evaluated) continue;
      if (best == nullptr || ind.fitness.cost < best->fitness.cost) best = &ind;
    }
  }
  if (best == nullptr) throw std::logic_error("Population::best: nothing evaluated");
  return *best;
}

std::string TrainingHistory::to_csv() const {
  std::ostringstream out;
  out << "generation,best_cost,mean_cost,best_accuracy,mean_accuracy\n";
  for (const auto& r : records) {
    out << r.generation << ',' << detail::format_decimal(r.best_cost) << ',' << detail::format_decimal(r.mean_cost)
        << ',' << detail::format_decimal(r.best_accuracy) << ',' << detail::format_decimal(r.mean_accuracy) << '\n';
  }
  return out.str();
}

bool TrainingHistory::best_cost_non_increasing() const {
  for (std::size_t i = 1; i < records.size(); ++i) {
    if (records[i].best_cost > records[i - 1].best_cost) return false;
  }
  return true;
}

GenerationRecord summarize(const Population& pop, std::size_t generation) {
  GenerationRecord r;
  r.generation = generation;
  r.best_cost = std::numeric_limits<double>::infinity();
  r.best_accuracy = std::numeric_limits<double>::quiet_NaN();
  double cost_sum = 0.0;
  double acc_sum = 0.0;
  std::size_t n = 0;
  std::size_t n_acc = 0;
  for (const auto& island : pop.islands) {
    for (const auto& ind : island) {
      r.best_cost = std::min(r.best_cost, ind.fitness.cost);
      cost_sum += ind.fitness.cost;
      ++n;
      if (!std::isnan(ind.fitness.accuracy)) {
        r.best_accuracy = std::isnan(r.best_accuracy) ? ind.fitness.accuracy
                                                      : std::max(r.best_accuracy, ind.fitness.accuracy);
        acc_sum += ind.fitness.accuracy;
        ++n_acc;
      }
    }
  }
  r.mean_cost = n > 0 ? cost_sum / static_cast<double>(n) : 0.0;
  r.mean_accuracy = n_acc > 0 ? acc_sum / static_cast<double>(n_acc) : std::numeric_limits<double>::quiet_NaN();
  return r;
}

Population init_population(const GAConfig& config, std::size_t n_genes, Rng& rng) {
  config.validate();
  std::uniform_real_distribution<double> gene(0.0, kTwoPi);
  Population pop;
  pop.islands.resize(config.n_islands);
  for (std::size_t i = 0; i < config.n_islands; ++i) {
    auto& island = pop.islands[i];
    island.resize(config.island_size(i));
    for (auto& ind : island) {
      ind.chromosome.resize(n_genes);
      for (auto& g : ind.chromosome) g = wrap_phase(gene(rng));
    }
  }
  return pop;
}

Population init_population(const GAConfig& config, std::size_t n_genes) {
  Rng rng(config.rng_seed);
  return init_population(config, n_genes, rng);
}

namespace {

template <typename Fn>
void parallel_for(std::size_t n, std::size_t n_threads, Fn&& fn) {
  n_threads = std::max<std::size_t>(1, std::min(n_threads, n));
  if (n_threads == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> workers;
  workers.reserve(n_threads);
  for (std::size_t t = 0; t < n_threads; ++t) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  }
  for (auto& w : workers) w.join();
}

}  // namespace

void evaluate_population(Population& pop, const FitnessFunction& fitness, const GAConfig& config,
                         std::size_t generation, bool force) {
  std::vector<std::pair<Individual*, std::size_t>> todo;
  std::size_t flat = 0;
  for (auto& island : pop.islands) {
    for (auto& ind : island) {
      if (force || !ind.evaluated) todo.emplace_back(&ind, flat);
      ++flat;
    }
  }
  const std::uint64_t base = config.rng_seed + generation * config.population_size;
  parallel_for(todo.size(), config.n_threads, [&](std::size_t k) {
    auto [ind, slot] = todo[k];
    ind->fitness = fitness(ind->chromosome, base + slot);
    ind->evaluated = true;
  });
}

const Individual& select_parent(std::span<const Individual> island, Rng& rng, std::size_t tournament_size) {
  if (island.empty()) throw std::invalid_argument("select_parent: empty island");
  std::uniform_int_distribution<std::size_t> pick(0, island.size() - 1);
  const Individual* winner = &island[pick(rng)];
  for (std::size_t t = 1; t < tournament_size; ++t) {
    const Individual* rival = &island[pick(rng)];
    if (rival->fitness.cost < winner->fitness.cost) winner = rival;
  }
  return *winner;
}

std::pair<Chromosome, Chromosome> crossover_at(const Chromosome& a, const Chromosome& b, std::size_t cut) {
  if (a.size() != b.size()) throw std::invalid_argument("crossover: chromosome lengths differ");
  cut = std::min(cut, a.size());
  Chromosome c1(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(cut));
  c1.insert(c1.end(), b.begin() + static_cast<std::ptrdiff_t>(cut), b.end());
  Chromosome c2(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(cut));
  c2.insert(c2.end(), a.begin() + static_cast<std::ptrdiff_t>(cut), a.end());
  return {std::move(c1), std::move(c2)};
}

std::pair<Chromosome, Chromosome> crossover(const Chromosome& a, const Chromosome& b, Rng& rng) {
  if (a.size() < 2) return crossover_at(a, b, a.size());
  std::uniform_int_distribution<std::size_t> cut(1, a.size() - 1);
  return crossover_at(a, b, cut(rng));
}

Chromosome mutate(const Chromosome& c, double sigma, Rng& rng) {
  if (!(sigma >= 0.0)) throw std::invalid_argument("mutate: sigma must be >= 0");
  Chromosome out = c;
  if (c.empty()) return out;
  const double rate = 1.0 / static_cast<double>(c.size());
  std::bernoulli_distribution hit(rate);
  std::normal_distribution<double> noise(0.0, 1.0);
  for (auto& g : out) {
    if (hit(rng)) g = wrap_phase(g + sigma * noise(rng));
  }
  return out;
}

Population step_generation(const Population& pop, const FitnessFunction& fitness, const GAConfig& config, Rng& rng,
                           std::size_t generation) {
  Population next;
  next.islands.resize(pop.islands.size());
  for (std::size_t i = 0; i < pop.islands.size(); ++i) {
    const auto& island = pop.islands[i];
    const std::size_t size = island.size();
    std::vector<std::size_t> order(size);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return island[a].fitness.cost < island[b].fitness.cost;
    });

    auto& out = next.islands[i];
    out.reserve(size);
    const std::size_t elites = std::min(config.elite_count, size);
    for (std::size_t e = 0; e < elites; ++e) out.push_back(island[order[e]]);

    const std::size_t rest = size - elites;
    const auto n_cross =
        std::min(rest, static_cast<std::size_t>(std::lround(config.crossover_fraction * static_cast<double>(rest))));
    while (out.size() < elites + n_cross) {
      const auto& pa = select_parent(island, rng, config.tournament_size);
      const auto& pb = select_parent(island, rng, config.tournament_size);
      auto [c1, c2] = crossover(pa.chromosome, pb.chromosome, rng);
      out.push_back({std::move(c1), {}, false});
      if (out.size() < elites + n_cross) out.push_back({std::move(c2), {}, false});
    }
    while (out.size() < size) {
      const auto& parent = select_parent(island, rng, config.tournament_size);
      Individual child{mutate(parent.chromosome, config.mutation_sigma, rng), {}, false};
      if (child.chromosome == parent.chromosome) {
        child.fitness = parent.fitness;
        child.evaluated = parent.evaluated;
      }
      out.push_back(std::move(child));
    }
  }
  evaluate_population(next, fitness, config, generation, config.reevaluate_survivors);
  return next;
}

bool migration_due(std::size_t generation, const GAConfig& config) {
  return config.n_islands >= 2 && config.migration_fraction > 0.0 && generation > 0 &&
         generation % config.migration_interval == 0;
}

Population migrate(const Population& pop, const GAConfig& config) {
  const std::size_t n = pop.islands.size();
  if (n < 2 || config.migration_fraction <= 0.0) return pop;

  auto ranked = [](const Island& island) {
    std::vector<std::size_t> order(island.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return island[a].fitness.cost < island[b].fitness.cost;
    });
    return order;
  };

  Population out = pop;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& donor = pop.islands[i];
    const std::size_t j = (i + 1) % n;
    auto& recipient = out.islands[j];
    const auto k = std::min(
        {static_cast<std::size_t>(std::ceil(config.migration_fraction * static_cast<double>(donor.size()) - 1e-12)),
         donor.size(), recipient.size()});
    if (k == 0) continue;

    const auto donor_order = ranked(donor);
    const auto recipient_order = ranked(pop.islands[j]);
    // Residents first so they survive ties.
    std::vector<Individual> pool;
    std::vector<std::size_t> slots;
    for (std::size_t r = 0; r < k; ++r) {
      const auto slot = recipient_order[recipient.size() - 1 - r];
      slots.push_back(slot);
      pool.push_back(pop.islands[j][slot]);
    }
    for (std::size_t r = 0; r < k; ++r) pool.push_back(donor[donor_order[r]]);
    std::stable_sort(pool.begin(), pool.end(),
                     [](const Individual& a, const Individual& b) { return a.fitness.cost < b.fitness.cost; });
    for (std::size_t r = 0; r < k; ++r) recipient[slots[r]] = pool[r];
  }
  return out;
}

GAResult run_ga(std::size_t n_genes, const FitnessFunction& fitness, const GAConfig& config) {
  config.validate();
  Rng rng(config.rng_seed);
  GAResult result;
  Population pop = init_population(config, n_genes, rng);
  evaluate_population(pop, fitness, config, 0);
  for (std::size_t g = 1; g <= config.n_generations; ++g) {
    pop = step_generation(pop, fitness, config, rng, g);
    if (migration_due(g, config)) pop = migrate(pop, config);
    result.history.records.push_back(summarize(pop, g));
  }
  const auto& best = pop.best();
  result.best = best.chromosome;
  result.best_fitness = best.fitness;
  result.final_population = std::move(pop);
  return result;
}

}  // namespace pvqc
