#include "analogen/artifacts.hpp"

#include "analogen/error.hpp"
#include "analogen/io.hpp"

namespace analogen {

using nlohmann::json;

json to_json(const RunManifest& m) {
  return {
      {"tool_version", m.tool_version},
      {"config", to_json(m.config)},
      {"kb_digest", m.kb_digest},
      {"base_digest", m.base_digest},
      {"generations", m.generations},
      {"wall_clock_seconds", m.wall_clock_seconds},
  };
}

void write_run_artifacts(const std::filesystem::path& dir, const RunResult& result, const RunManifest& manifest) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create " + dir.string() + ": " + ec.message());
  write_file(dir / "stats.csv", result.stats.to_csv());
  save_network(result.best.genome, dir / "best.json");
  write_file(dir / "best.dot", to_dot(result.best.genome, "best"));
  write_file(dir / "mapping.json", mapping_report(result.mapping, manifest.config.score_weights).dump(2) + "\n");
  write_file(dir / "manifest.json", to_json(manifest).dump(2) + "\n");
}

}  // namespace analogen
