#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "analogen/config.hpp"
#include "analogen/evolution.hpp"

namespace analogen {

/// Inputs recorded next to a run's outputs so the run can be repeated.
struct RunManifest {
  EvolutionConfig config;
  std::string kb_digest;
  std::string base_digest;
  std::string tool_version;
  double wall_clock_seconds = 0.0;
  std::size_t generations = 0;
};

nlohmann::json to_json(const RunManifest& m);

/// Writes stats.csv, best.json, best.dot, mapping.json and manifest.json into
/// `dir`, creating it if needed.
void write_run_artifacts(const std::filesystem::path& dir, const RunResult& result,
                         const RunManifest& manifest);

}  // namespace analogen
