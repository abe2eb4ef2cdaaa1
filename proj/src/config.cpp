#include "analogen/config.hpp"

#include <cmath>

#include "analogen/error.hpp"
#include "analogen/io.hpp"

namespace analogen {

using nlohmann::json;

namespace {

Error config_error(const std::string& what) { return Error(ErrorCode::Config, what); }

std::size_t as_count(const json& v, const std::string& key) {
  if (v.is_number_unsigned()) return v.get<std::size_t>();
  if (v.is_number_integer() && v.get<long long>() >= 0) return static_cast<std::size_t>(v.get<long long>());
  throw config_error("'" + key + "' must be a non-negative integer");
}

double as_real(const json& v, const std::string& key) {
  if (!v.is_number()) throw config_error("'" + key + "' must be a number");
  double d = v.get<double>();
  if (!std::isfinite(d)) throw config_error("'" + key + "' must be finite");
  return d;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw config_error(what);
}

}  // namespace

void EvolutionConfig::validate() const {
  require(pop_size >= 1, "pop_size must be at least 1");
  require(p_c >= 0.0 && p_c <= 1.0, "p_c must lie in [0, 1]");
  require(p_m >= 0.0 && p_m <= 1.0, "p_m must lie in [0, 1]");
  require(std::abs(p_c + p_m - 1.0) <= 1e-9, "p_c + p_m must equal 1");
  require(c_max >= 1, "c_max must be at least 1");
  require(std::isfinite(r_min), "r_min must be finite");
  require(timeout >= 1, "timeout must be at least 1");
  require(s_size >= 1, "s_size must be at least 1");
  require(s_prob >= 0.5 && s_prob <= 1.0, "s_prob must lie in [0.5, 1]");
  require(score_weights.w_base > 0.0, "w_base must be positive");
  require(score_weights.w_conn >= 0.0, "w_conn must be non-negative");
  require(search_limits.beam_width >= 1, "beam_width must be at least 1");
  require(min_shared >= 1, "min_shared must be at least 1");
  require(threads >= 1, "threads must be at least 1");
}

json to_json(const EvolutionConfig& cfg) {
  return {
      {"pop_size", cfg.pop_size},
      {"p_c", cfg.p_c},
      {"p_m", cfg.p_m},
      {"c_max", cfg.c_max},
      {"r_min", cfg.r_min},
      {"timeout", cfg.timeout},
      {"s_size", cfg.s_size},
      {"s_prob", cfg.s_prob},
      {"elitism", cfg.elitism},
      {"max_generations", cfg.max_generations},
      {"stall_generations", cfg.stall_generations},
      {"rng_seed", cfg.rng_seed},
      {"w_base", cfg.score_weights.w_base},
      {"w_conn", cfg.score_weights.w_conn},
      {"exact_limit", cfg.search_limits.exact_limit},
      {"beam_width", cfg.search_limits.beam_width},
      {"min_shared", cfg.min_shared},
      {"threads", cfg.threads},
  };
}

void apply_config(EvolutionConfig& cfg, const json& j) {
  if (!j.is_object()) throw config_error("config must be a flat JSON object");
  for (const auto& [key, v] : j.items()) {
    if (key == "pop_size") cfg.pop_size = as_count(v, key);
    else if (key == "p_c") cfg.p_c = as_real(v, key);
    else if (key == "p_m") cfg.p_m = as_real(v, key);
    else if (key == "c_max") cfg.c_max = as_count(v, key);
    else if (key == "r_min") cfg.r_min = as_real(v, key);
    else if (key == "timeout") cfg.timeout = as_count(v, key);
    else if (key == "s_size") cfg.s_size = as_count(v, key);
    else if (key == "s_prob") cfg.s_prob = as_real(v, key);
    else if (key == "elitism") {
      if (!v.is_boolean()) throw config_error("'elitism' must be true or false");
      cfg.elitism = v.get<bool>();
    }
    else if (key == "max_generations") cfg.max_generations = as_count(v, key);
    else if (key == "stall_generations") cfg.stall_generations = as_count(v, key);
    else if (key == "rng_seed") cfg.rng_seed = as_count(v, key);
    else if (key == "w_base") cfg.score_weights.w_base = as_real(v, key);
    else if (key == "w_conn") cfg.score_weights.w_conn = as_real(v, key);
    else if (key == "exact_limit") cfg.search_limits.exact_limit = as_count(v, key);
    else if (key == "beam_width") cfg.search_limits.beam_width = as_count(v, key);
    else if (key == "min_shared") cfg.min_shared = as_count(v, key);
    else if (key == "threads") cfg.threads = as_count(v, key);
    else throw config_error("unknown config key '" + key + "'");
  }
}

EvolutionConfig load_config(const std::filesystem::path& path, EvolutionConfig base) {
  json j = json::parse(read_file(path), nullptr, false, true);
  if (j.is_discarded()) throw config_error(path.string() + ": invalid JSON");
  try {
    apply_config(base, j);
  } catch (const Error& e) {
    throw config_error(path.string() + ": " + e.what());
  }
  return base;
}

}  // namespace analogen
