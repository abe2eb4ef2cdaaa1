#include "analogen/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <thread>

#include "analogen/error.hpp"
#include "analogen/operators.hpp"
#include "analogen/rng.hpp"

namespace analogen {

namespace {

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

std::string RunStats::to_csv() const {
  std::string out = "generation,best_fitness,avg_fitness,best_size,avg_size\n";
  for (const auto& g : generations) {
    out += std::to_string(g.generation) + "," + fixed6(g.best_fitness) + "," + fixed6(g.avg_fitness) + "," +
           std::to_string(g.best_size) + "," + fixed6(g.avg_size) + "\n";
  }
  return out;
}

RunStats RunStats::from_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line != "generation,best_fitness,avg_fitness,best_size,avg_size")
    throw Error(ErrorCode::Parse, "stats: missing header");
  RunStats stats;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    GenerationStats g;
    char tail = 0;
    if (std::sscanf(line.c_str(), "%zu,%lf,%lf,%zu,%lf%c", &g.generation, &g.best_fitness, &g.avg_fitness,
                    &g.best_size, &g.avg_size, &tail) != 5)
      throw Error(ErrorCode::Parse, "stats: bad row at line " + std::to_string(lineno));
    stats.generations.push_back(g);
  }
  return stats;
}

Population initialize(const EvolutionConfig& cfg, const KnowledgeBase& kb, Rng& rng) {
  Population pop;
  pop.reserve(cfg.pop_size);
  for (std::size_t i = 0; i < cfg.pop_size; ++i)
    pop.push_back({grow_random(kb, {}, cfg.c_max, cfg.timeout, rng), std::nullopt});
  return pop;
}

void evaluate(Population& pop, const SemanticNetwork& base, const EvolutionConfig& cfg) {
  std::vector<std::size_t> todo;
  for (std::size_t i = 0; i < pop.size(); ++i)
    if (!pop[i].cached_fitness) todo.push_back(i);
  auto work = [&](std::size_t first, std::size_t stride) {
    for (std::size_t k = first; k < todo.size(); k += stride) {
      auto& ind = pop[todo[k]];
      ind.cached_fitness = fitness(base, ind.genome, cfg.score_weights, cfg.search_limits);
    }
  };
  std::size_t workers = std::min(cfg.threads, todo.size());
  if (workers <= 1) {
    work(0, 1);
    return;
  }
  std::vector<std::jthread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work, w, workers);
  work(0, workers);
}

std::size_t tournament_select(std::span<const double> fitnesses, std::size_t s_size, double s_prob, Rng& rng) {
  if (fitnesses.empty()) throw Error(ErrorCode::InvalidArgument, "tournament on an empty population");
  std::vector<std::size_t> entrants(std::max<std::size_t>(s_size, 1));
  for (auto& e : entrants) e = rng.index(fitnesses.size());
  while (entrants.size() > 1) {
    std::vector<std::size_t> winners;
    winners.reserve((entrants.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < entrants.size(); i += 2) {
      auto x = entrants[i], y = entrants[i + 1];
      bool x_fitter = fitnesses[x] >= fitnesses[y];
      auto fitter = x_fitter ? x : y;
      auto weaker = x_fitter ? y : x;
      winners.push_back(rng.bernoulli(s_prob) ? fitter : weaker);
    }
    if (entrants.size() % 2 == 1) winners.push_back(entrants.back());
    entrants = std::move(winners);
  }
  return entrants.front();
}

std::size_t best_index(const Population& pop) {
  if (pop.empty()) throw Error(ErrorCode::InvalidArgument, "empty population");
  std::size_t best = 0;
  for (std::size_t i = 1; i < pop.size(); ++i)
    if (pop[i].cached_fitness.value() > pop[best].cached_fitness.value()) best = i;
  return best;
}

GenerationStats generation_stats(const Population& pop, std::size_t generation) {
  GenerationStats g;
  g.generation = generation;
  if (pop.empty()) return g;
  auto b = best_index(pop);
  g.best_fitness = *pop[b].cached_fitness;
  g.best_size = pop[b].genome.size();
  double fit_sum = 0.0, size_sum = 0.0;
  for (const auto& ind : pop) {
    fit_sum += *ind.cached_fitness;
    size_sum += static_cast<double>(ind.genome.size());
  }
  g.avg_fitness = fit_sum / static_cast<double>(pop.size());
  g.avg_size = size_sum / static_cast<double>(pop.size());
  return g;
}

std::size_t crossover_quota(const EvolutionConfig& cfg) {
  auto n = static_cast<std::size_t>(std::llround(static_cast<double>(cfg.pop_size) * cfg.p_c));
  return std::min(n, cfg.pop_size);
}

StepResult step(Population pop, const SemanticNetwork& base, const EvolutionConfig& cfg, const KnowledgeBase& kb,
                Rng& rng, std::size_t generation) {
  if (pop.empty()) throw Error(ErrorCode::InvalidArgument, "empty population");
  evaluate(pop, base, cfg);
  StepResult result;
  result.stats = generation_stats(pop, generation);

  std::vector<double> fit;
  fit.reserve(pop.size());
  for (const auto& ind : pop) fit.push_back(*ind.cached_fitness);
  auto select = [&] { return tournament_select(fit, cfg.s_size, cfg.s_prob, rng); };

  const std::size_t size = pop.size();
  const std::size_t n_cross = std::min(crossover_quota(cfg), size);
  auto& next = result.next;
  next.reserve(size);
  while (next.size() < n_cross) {
    auto i = select();
    auto j = select();
    auto children = crossover(pop[i].genome, pop[j].genome, kb, rng, cfg.min_shared);
    if (next.size() + 2 <= n_cross) {
      next.push_back({std::move(children.first), std::nullopt});
      next.push_back({std::move(children.second), std::nullopt});
    } else {
      next.push_back({rng.bernoulli(0.5) ? std::move(children.first) : std::move(children.second), std::nullopt});
    }
  }
  while (next.size() < size) {
    const auto& parent = pop[select()];
    auto m = mutate(parent.genome, kb, cfg.timeout, rng, cfg.min_shared);
    next.push_back({std::move(m.network), m.applied ? std::nullopt : parent.cached_fitness});
  }
  if (cfg.elitism) next[rng.index(size)] = pop[best_index(pop)];
  return result;
}

RunResult run(const SemanticNetwork& base, const EvolutionConfig& cfg, const KnowledgeBase& kb,
              const GenerationObserver& observer) {
  cfg.validate();
  if (base.empty()) throw Error(ErrorCode::InvalidArgument, "base network is empty");
  if (kb.empty()) throw Error(ErrorCode::InvalidArgument, "knowledge base has no concepts");

  Rng rng(cfg.rng_seed);
  Population pop = initialize(cfg, kb, rng);
  RunResult result;
  std::size_t stall = 0;
  for (std::size_t gen = 0;; ++gen) {
    evaluate(pop, base, cfg);
    result.stats.generations.push_back(generation_stats(pop, gen));
    if (observer) observer(gen, pop);

    const auto& top = pop[best_index(pop)];
    if (gen == 0 || *top.cached_fitness > *result.best.cached_fitness + 1e-12) {
      result.best = top;
      stall = 0;
    } else {
      ++stall;
    }
    if (gen >= cfg.max_generations) break;
    if (cfg.stall_generations > 0 && stall >= cfg.stall_generations) break;
    pop = step(std::move(pop), base, cfg, kb, rng, gen).next;
  }
  result.mapping = best_gmap(base, result.best.genome, cfg.score_weights, cfg.search_limits);
  return result;
}

}  // namespace analogen
