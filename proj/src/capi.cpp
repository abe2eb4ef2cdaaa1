#include "analogen/analogen.h"

#include <chrono>
#include <cstdlib>
#include <cstring>
#include <string>

#include "analogen/artifacts.hpp"
#include "analogen/conceptnet.hpp"
#include "analogen/error.hpp"
#include "analogen/evolution.hpp"
#include "analogen/io.hpp"

struct an_kb {
  analogen::KnowledgeBase kb;
  analogen::LoadReport report;
};

struct an_network {
  analogen::SemanticNetwork net;
};

struct an_config {
  analogen::EvolutionConfig cfg;
};

struct an_run {
  analogen::RunResult result;
  analogen::RunManifest manifest;
};

namespace {

thread_local std::string g_last_error;

an_status fail(an_status s, std::string msg) {
  g_last_error = std::move(msg);
  return s;
}

an_status from_code(analogen::ErrorCode c) {
  using analogen::ErrorCode;
  switch (c) {
    case ErrorCode::InvalidArgument: return AN_ERR_INVALID_ARGUMENT;
    case ErrorCode::Io: return AN_ERR_IO;
    case ErrorCode::Parse: return AN_ERR_PARSE;
    case ErrorCode::Config: return AN_ERR_CONFIG;
    case ErrorCode::NotFound: return AN_ERR_NOT_FOUND;
    case ErrorCode::Internal: return AN_ERR_INTERNAL;
  }
  return AN_ERR_INTERNAL;
}

template <typename F>
an_status guarded(F&& f) {
  try {
    f();
    g_last_error.clear();
    return AN_OK;
  } catch (const analogen::Error& e) {
    return fail(from_code(e.code()), e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(AN_ERR_PARSE, e.what());
  } catch (const std::bad_alloc&) {
    return fail(AN_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(AN_ERR_INTERNAL, e.what());
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

#define AN_REQUIRE(cond)                                                   \
  do {                                                                     \
    if (!(cond)) return fail(AN_ERR_INVALID_ARGUMENT, "null argument: " #cond); \
  } while (0)

an_status set_config_key(an_config* cfg, const char* key, nlohmann::json value) {
  AN_REQUIRE(cfg && key);
  return guarded([&] { analogen::apply_config(cfg->cfg, nlohmann::json{{key, std::move(value)}}); });
}

}  // namespace

extern "C" {

const char* an_version(void) { return ANALOGEN_VERSION; }

const char* an_last_error(void) { return g_last_error.c_str(); }

const char* an_status_name(an_status status) {
  switch (status) {
    case AN_OK: return "ok";
    case AN_ERR_INVALID_ARGUMENT: return "invalid argument";
    case AN_ERR_IO: return "i/o error";
    case AN_ERR_PARSE: return "parse error";
    case AN_ERR_CONFIG: return "config error";
    case AN_ERR_NOT_FOUND: return "not found";
    case AN_ERR_INTERNAL: return "internal error";
  }
  return "unknown";
}

void an_string_free(char* s) { std::free(s); }

an_status an_kb_load(const char* path, double r_min, an_kb** out) {
  AN_REQUIRE(path && out);
  *out = nullptr;
  return guarded([&] {
    auto handle = std::make_unique<an_kb>();
    handle->kb = analogen::KnowledgeBase::load(path, r_min, &handle->report);
    *out = handle.release();
  });
}

size_t an_kb_assertion_count(const an_kb* kb) { return kb ? kb->kb.size() : 0; }
size_t an_kb_concept_count(const an_kb* kb) { return kb ? kb->kb.concepts().size() : 0; }
size_t an_kb_warning_count(const an_kb* kb) { return kb ? kb->report.warnings : 0; }
void an_kb_free(an_kb* kb) { delete kb; }

an_status an_convert_conceptnet(const char* csv_path, const char* tsv_path, double r_min,
                                an_convert_report* report) {
  AN_REQUIRE(csv_path && tsv_path);
  return guarded([&] {
    auto rep = analogen::convert_conceptnet_file(csv_path, tsv_path, r_min);
    if (report) *report = {rep.rows, rep.malformed, rep.below_threshold, rep.duplicates, rep.written};
  });
}

an_status an_network_load(const char* path, an_network** out) {
  AN_REQUIRE(path && out);
  *out = nullptr;
  return guarded([&] { *out = new an_network{analogen::load_network(path)}; });
}

an_status an_network_parse(const char* json_text, an_network** out) {
  AN_REQUIRE(json_text && out);
  *out = nullptr;
  return guarded([&] { *out = new an_network{analogen::deserialize(json_text)}; });
}

an_status an_network_save(const an_network* net, const char* path) {
  AN_REQUIRE(net && path);
  return guarded([&] { analogen::save_network(net->net, path); });
}

an_status an_network_to_json(const an_network* net, char** out) {
  AN_REQUIRE(net && out);
  return guarded([&] { *out = dup_string(analogen::serialize(net->net)); });
}

an_status an_network_to_dot(const an_network* net, char** out) {
  AN_REQUIRE(net && out);
  return guarded([&] { *out = dup_string(analogen::to_dot(net->net)); });
}

size_t an_network_concept_count(const an_network* net) { return net ? net->net.concept_count() : 0; }
size_t an_network_relation_count(const an_network* net) { return net ? net->net.size() : 0; }
void an_network_free(an_network* net) { delete net; }

an_status an_config_new(an_config** out) {
  AN_REQUIRE(out);
  return guarded([&] { *out = new an_config{}; });
}

an_status an_config_load(an_config* cfg, const char* path) {
  AN_REQUIRE(cfg && path);
  return guarded([&] { cfg->cfg = analogen::load_config(path, cfg->cfg); });
}

an_status an_config_set_int(an_config* cfg, const char* key, int64_t value) {
  return set_config_key(cfg, key, value);
}

an_status an_config_set_double(an_config* cfg, const char* key, double value) {
  return set_config_key(cfg, key, value);
}

an_status an_config_set_bool(an_config* cfg, const char* key, int value) {
  return set_config_key(cfg, key, value != 0);
}

an_status an_config_get_int(const an_config* cfg, const char* key, int64_t* out) {
  AN_REQUIRE(cfg && key && out);
  return guarded([&] {
    auto j = analogen::to_json(cfg->cfg);
    if (!j.contains(key) || !j.at(key).is_number_integer())
      throw analogen::Error(analogen::ErrorCode::NotFound, std::string("no integer config key '") + key + "'");
    *out = j.at(key).get<int64_t>();
  });
}

an_status an_config_get_double(const an_config* cfg, const char* key, double* out) {
  AN_REQUIRE(cfg && key && out);
  return guarded([&] {
    auto j = analogen::to_json(cfg->cfg);
    if (!j.contains(key) || !j.at(key).is_number())
      throw analogen::Error(analogen::ErrorCode::NotFound, std::string("no numeric config key '") + key + "'");
    *out = j.at(key).get<double>();
  });
}

an_status an_config_validate(const an_config* cfg) {
  AN_REQUIRE(cfg);
  return guarded([&] { cfg->cfg.validate(); });
}

an_status an_config_to_json(const an_config* cfg, char** out) {
  AN_REQUIRE(cfg && out);
  return guarded([&] { *out = dup_string(analogen::to_json(cfg->cfg).dump(2)); });
}

void an_config_free(an_config* cfg) { delete cfg; }

an_status an_match(const an_network* base, const an_network* target, const an_config* cfg, char** report_json,
                   double* fitness) {
  AN_REQUIRE(base && target && report_json);
  return guarded([&] {
    analogen::EvolutionConfig defaults;
    const auto& c = cfg ? cfg->cfg : defaults;
    auto result = analogen::best_gmap(base->net, target->net, c.score_weights, c.search_limits);
    *report_json = dup_string(analogen::mapping_report(result, c.score_weights).dump(2));
    if (fitness) *fitness = result.fitness;
  });
}

an_status an_evolve(const an_kb* kb, const an_network* base, const an_config* cfg, an_run** out) {
  AN_REQUIRE(kb && base && cfg && out);
  *out = nullptr;
  return guarded([&] {
    auto started = std::chrono::steady_clock::now();
    auto handle = std::make_unique<an_run>();
    handle->result = analogen::run(base->net, cfg->cfg, kb->kb);
    std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - started;
    auto& m = handle->manifest;
    m.config = cfg->cfg;
    m.kb_digest = kb->kb.digest();
    m.base_digest = analogen::sha256_hex(analogen::serialize(base->net));
    m.tool_version = ANALOGEN_VERSION;
    m.wall_clock_seconds = elapsed.count();
    m.generations = handle->result.stats.generations.size();
    *out = handle.release();
  });
}

double an_run_best_fitness(const an_run* run) { return run ? run->result.mapping.fitness : 0.0; }
size_t an_run_mapped_relations(const an_run* run) { return run ? run->result.mapping.mapped_relations() : 0; }
size_t an_run_generation_count(const an_run* run) { return run ? run->result.stats.generations.size() : 0; }

an_status an_run_best_network(const an_run* run, an_network** out) {
  AN_REQUIRE(run && out);
  return guarded([&] { *out = new an_network{run->result.best.genome}; });
}

an_status an_run_stats_csv(const an_run* run, char** out) {
  AN_REQUIRE(run && out);
  return guarded([&] { *out = dup_string(run->result.stats.to_csv()); });
}

an_status an_run_write_artifacts(const an_run* run, const char* out_dir) {
  AN_REQUIRE(run && out_dir);
  return guarded([&] { analogen::write_run_artifacts(out_dir, run->result, run->manifest); });
}

void an_run_free(an_run* run) { delete run; }

}  // extern "C"
