#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>

#include <nlohmann/json.hpp>

#include "analogen/sme.hpp"

namespace analogen {

/// Run parameters. Defaults are the reference experiment settings.
struct EvolutionConfig {
  std::size_t pop_size = 200;
  double p_c = 0.85;
  double p_m = 0.15;
  std::size_t c_max = 5;
  double r_min = 2.0;
  std::size_t timeout = 10;
  std::size_t s_size = 8;
  double s_prob = 0.8;
  bool elitism = true;
  std::size_t max_generations = 50;
  /// Stop after this many generations without a best-fitness improvement;
  /// 0 disables the check.
  std::size_t stall_generations = 20;
  std::uint64_t rng_seed = 1;
  ScoreWeights score_weights;
  SearchLimits search_limits;
  std::size_t min_shared = 1;
  /// Worker threads for fitness evaluation. Results do not depend on it.
  std::size_t threads = 1;

  /// Throws Error(Config) on out-of-range values or p_c + p_m != 1.
  void validate() const;
};

/// Flat JSON object with the field names above (`w_base`, `w_conn`,
/// `exact_limit` and `beam_width` are flattened). Unknown keys are rejected.
nlohmann::json to_json(const EvolutionConfig& cfg);

/// Overlays the keys present in `j` onto `cfg`; no validation.
void apply_config(EvolutionConfig& cfg, const nlohmann::json& j);

EvolutionConfig load_config(const std::filesystem::path& path, EvolutionConfig base = {});

}  // namespace analogen
