#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "analogen/config.hpp"
#include "analogen/kb.hpp"
#include "analogen/semnet.hpp"
#include "analogen/sme.hpp"

namespace analogen {

class Rng;

struct Individual {
  SemanticNetwork genome;
  /// Fitness against the run's base network; cleared whenever the genome changes.
  std::optional<double> cached_fitness;
};

using Population = std::vector<Individual>;

struct GenerationStats {
  std::size_t generation = 0;
  double best_fitness = 0.0;
  double avg_fitness = 0.0;
  std::size_t best_size = 0;
  double avg_size = 0.0;
};

struct RunStats {
  std::vector<GenerationStats> generations;

  /// `generation,best_fitness,avg_fitness,best_size,avg_size` with one row
  /// per generation.
  std::string to_csv() const;

  /// Inverse of to_csv(). Throws Error(Parse).
  static RunStats from_csv(std::string_view text);
};

Population initialize(const EvolutionConfig& cfg, const KnowledgeBase& kb, Rng& rng);

/// Fills every missing cached fitness. Work is spread over `cfg.threads`
/// workers; scores land in population order.
void evaluate(Population& pop, const SemanticNetwork& base, const EvolutionConfig& cfg);

/// Index of the tournament winner. Draws `s_size` entrants uniformly with
/// replacement, then pairs them off round by round; in each pairing the
/// fitter entrant (the earlier one on ties) wins with probability `s_prob`.
std::size_t tournament_select(std::span<const double> fitnesses, std::size_t s_size, double s_prob,
                              Rng& rng);

/// Index of the best individual (first on ties). Fitnesses must be cached.
std::size_t best_index(const Population& pop);

GenerationStats generation_stats(const Population& pop, std::size_t generation);

struct StepResult {
  Population next;
  GenerationStats stats;  // of the input population
};

/// One generation: evaluate, select, vary, and apply elitism.
StepResult step(Population pop, const SemanticNetwork& base, const EvolutionConfig& cfg,
                const KnowledgeBase& kb, Rng& rng, std::size_t generation = 0);

/// Number of offspring produced by crossover for a population.
std::size_t crossover_quota(const EvolutionConfig& cfg);

struct RunResult {
  Individual best;
  MappingResult mapping;
  RunStats stats;
};

/// Called with each evaluated generation before variation.
using GenerationObserver = std::function<void(std::size_t generation, const Population& pop)>;

/// Full run seeded from `cfg.rng_seed`. Stops after `cfg.max_generations`
/// generations or when the best fitness stalls for `cfg.stall_generations`.
RunResult run(const SemanticNetwork& base, const EvolutionConfig& cfg, const KnowledgeBase& kb,
              const GenerationObserver& observer = {});

}  // namespace analogen
