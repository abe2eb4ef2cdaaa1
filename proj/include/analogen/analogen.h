/*
 * analogen C API.
 *
 * Every handle is opaque and owned by the caller once returned; release it
 * with the matching *_free function. Functions returning an_status report
 * failures through the code and leave a message in an_last_error() for the
 * calling thread. Strings returned through char** must be released with
 * an_string_free.
 */
#ifndef ANALOGEN_H
#define ANALOGEN_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(ANALOGEN_BUILDING_LIBRARY)
#    define ANALOGEN_API __declspec(dllexport)
#  else
#    define ANALOGEN_API __declspec(dllimport)
#  endif
#elif defined(__GNUC__) && __GNUC__ >= 4
#  define ANALOGEN_API __attribute__((visibility("default")))
#else
#  define ANALOGEN_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum an_status {
  AN_OK = 0,
  AN_ERR_INVALID_ARGUMENT = 1,
  AN_ERR_IO = 2,
  AN_ERR_PARSE = 3,
  AN_ERR_CONFIG = 4,
  AN_ERR_NOT_FOUND = 5,
  AN_ERR_INTERNAL = 6
} an_status;

typedef struct an_kb an_kb;
typedef struct an_network an_network;
typedef struct an_config an_config;
typedef struct an_run an_run;

typedef struct an_convert_report {
  size_t rows;
  size_t malformed;
  size_t below_threshold;
  size_t duplicates;
  size_t written;
} an_convert_report;

ANALOGEN_API const char* an_version(void);
/* Message for the last failed call on this thread ("" if none). */
ANALOGEN_API const char* an_last_error(void);
ANALOGEN_API const char* an_status_name(an_status status);
ANALOGEN_API void an_string_free(char* s);

/* Knowledge base (TSV: label<TAB>head<TAB>tail<TAB>score). */
ANALOGEN_API an_status an_kb_load(const char* path, double r_min, an_kb** out);
ANALOGEN_API size_t an_kb_assertion_count(const an_kb* kb);
ANALOGEN_API size_t an_kb_concept_count(const an_kb* kb);
ANALOGEN_API size_t an_kb_warning_count(const an_kb* kb);
ANALOGEN_API void an_kb_free(an_kb* kb);

/* ConceptNet CSV dump -> KB TSV. `report` may be NULL. */
ANALOGEN_API an_status an_convert_conceptnet(const char* csv_path, const char* tsv_path, double r_min,
                                             an_convert_report* report);

/* Semantic networks (JSON). */
ANALOGEN_API an_status an_network_load(const char* path, an_network** out);
ANALOGEN_API an_status an_network_parse(const char* json_text, an_network** out);
ANALOGEN_API an_status an_network_save(const an_network* net, const char* path);
ANALOGEN_API an_status an_network_to_json(const an_network* net, char** out);
ANALOGEN_API an_status an_network_to_dot(const an_network* net, char** out);
ANALOGEN_API size_t an_network_concept_count(const an_network* net);
ANALOGEN_API size_t an_network_relation_count(const an_network* net);
ANALOGEN_API void an_network_free(an_network* net);

/* Run configuration. Setters take the flat config key names. */
ANALOGEN_API an_status an_config_new(an_config** out);
ANALOGEN_API an_status an_config_load(an_config* cfg, const char* path);
ANALOGEN_API an_status an_config_set_int(an_config* cfg, const char* key, int64_t value);
ANALOGEN_API an_status an_config_set_double(an_config* cfg, const char* key, double value);
ANALOGEN_API an_status an_config_set_bool(an_config* cfg, const char* key, int value);
ANALOGEN_API an_status an_config_get_int(const an_config* cfg, const char* key, int64_t* out);
ANALOGEN_API an_status an_config_get_double(const an_config* cfg, const char* key, double* out);
ANALOGEN_API an_status an_config_validate(const an_config* cfg);
ANALOGEN_API an_status an_config_to_json(const an_config* cfg, char** out);
ANALOGEN_API void an_config_free(an_config* cfg);

/* Mapping report JSON for base vs target. `cfg` may be NULL for defaults.
 * `fitness` may be NULL. */
ANALOGEN_API an_status an_match(const an_network* base, const an_network* target, const an_config* cfg,
                                char** report_json, double* fitness);

/* Evolution. */
ANALOGEN_API an_status an_evolve(const an_kb* kb, const an_network* base, const an_config* cfg, an_run** out);
ANALOGEN_API double an_run_best_fitness(const an_run* run);
ANALOGEN_API size_t an_run_mapped_relations(const an_run* run);
ANALOGEN_API size_t an_run_generation_count(const an_run* run);
ANALOGEN_API an_status an_run_best_network(const an_run* run, an_network** out);
ANALOGEN_API an_status an_run_stats_csv(const an_run* run, char** out);
/* Writes stats.csv, best.json, best.dot, mapping.json, manifest.json. */
ANALOGEN_API an_status an_run_write_artifacts(const an_run* run, const char* out_dir);
ANALOGEN_API void an_run_free(an_run* run);

#ifdef __cplusplus
}
#endif

#endif /* ANALOGEN_H */
