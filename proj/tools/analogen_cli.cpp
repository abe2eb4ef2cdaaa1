// analogen command-line front end. Talks to the library only through the C API.

#include <cstdio>
#include <memory>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "analogen/analogen.h"

namespace {

struct Freer {
  void operator()(an_kb* p) const { an_kb_free(p); }
  void operator()(an_network* p) const { an_network_free(p); }
  void operator()(an_config* p) const { an_config_free(p); }
  void operator()(an_run* p) const { an_run_free(p); }
  void operator()(char* p) const { an_string_free(p); }
};

template <typename T>
using Owned = std::unique_ptr<T, Freer>;

bool check(an_status s, const std::string& what) {
  if (s == AN_OK) return true;
  std::fprintf(stderr, "analogen: %s: %s (%s)\n", what.c_str(), an_last_error(), an_status_name(s));
  return false;
}

struct EvolveArgs {
  std::string kb;
  std::string base;
  std::string config;
  std::string out = "analogen-out";
  std::optional<std::int64_t> seed;
  std::optional<std::int64_t> generations;
  std::optional<std::int64_t> pop_size;
  std::optional<std::int64_t> threads;
  std::optional<double> pc;
  std::optional<double> pm;
};

int cmd_evolve(const EvolveArgs& a) {
  an_config* raw_cfg = nullptr;
  if (!check(an_config_new(&raw_cfg), "config")) return 1;
  Owned<an_config> cfg(raw_cfg);
  if (!a.config.empty() && !check(an_config_load(cfg.get(), a.config.c_str()), "config " + a.config)) return 1;

  auto set_int = [&](const char* key, const std::optional<std::int64_t>& v) {
    return !v || check(an_config_set_int(cfg.get(), key, *v), std::string("--") + key);
  };
  auto set_real = [&](const char* key, const std::optional<double>& v) {
    return !v || check(an_config_set_double(cfg.get(), key, *v), std::string("--") + key);
  };
  if (!set_int("rng_seed", a.seed) || !set_int("max_generations", a.generations) ||
      !set_int("pop_size", a.pop_size) || !set_int("threads", a.threads) || !set_real("p_c", a.pc) ||
      !set_real("p_m", a.pm))
    return 1;
  if (!check(an_config_validate(cfg.get()), "config")) return 1;

  double r_min = 0.0;
  if (!check(an_config_get_double(cfg.get(), "r_min", &r_min), "config")) return 1;

  an_kb* raw_kb = nullptr;
  if (!check(an_kb_load(a.kb.c_str(), r_min, &raw_kb), "knowledge base " + a.kb)) return 1;
  Owned<an_kb> kb(raw_kb);
  if (an_kb_warning_count(kb.get()) > 0)
    std::fprintf(stderr, "analogen: warning: knowledge base %s has no assertions at r_min %g\n", a.kb.c_str(), r_min);

  an_network* raw_base = nullptr;
  if (!check(an_network_load(a.base.c_str(), &raw_base), "base network " + a.base)) return 1;
  Owned<an_network> base(raw_base);

  an_run* raw_run = nullptr;
  if (!check(an_evolve(kb.get(), base.get(), cfg.get(), &raw_run), "evolve")) return 1;
  Owned<an_run> run(raw_run);
  if (!check(an_run_write_artifacts(run.get(), a.out.c_str()), "writing " + a.out)) return 1;

  std::printf("generations: %zu\n", an_run_generation_count(run.get()));
  std::printf("best fitness: %.6f\n", an_run_best_fitness(run.get()));
  std::printf("mapped relations: %zu\n", an_run_mapped_relations(run.get()));
  std::printf("artifacts: %s\n", a.out.c_str());
  return 0;
}

int cmd_convert(const std::string& in, const std::string& out, double r_min) {
  an_convert_report rep{};
  if (!check(an_convert_conceptnet(in.c_str(), out.c_str(), r_min, &rep), "convert " + in)) return 1;
  std::printf("rows: %zu, written: %zu, below r_min: %zu, duplicates: %zu, malformed (skipped): %zu\n", rep.rows,
              rep.written, rep.below_threshold, rep.duplicates, rep.malformed);
  if (rep.rows == 0) std::fprintf(stderr, "analogen: warning: %s contains no rows\n", in.c_str());
  return 0;
}

int cmd_match(const std::string& base_path, const std::string& target_path) {
  an_network* raw = nullptr;
  if (!check(an_network_load(base_path.c_str(), &raw), "base network " + base_path)) return 1;
  Owned<an_network> base(raw);
  if (!check(an_network_load(target_path.c_str(), &raw), "target network " + target_path)) return 1;
  Owned<an_network> target(raw);
  char* report = nullptr;
  if (!check(an_match(base.get(), target.get(), nullptr, &report, nullptr), "match")) return 1;
  Owned<char> text(report);
  std::printf("%s\n", text.get());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Evolve semantic networks analogous to a base network"};
  app.set_version_flag("--version", std::string(an_version()));
  app.require_subcommand(1);

  EvolveArgs ev;
  auto* evolve = app.add_subcommand("evolve", "Run the memetic algorithm and write run artifacts");
  evolve->add_option("--kb", ev.kb, "Knowledge base TSV")->required()->check(CLI::ExistingFile);
  evolve->add_option("--base", ev.base, "Base network JSON")->required()->check(CLI::ExistingFile);
  evolve->add_option("--config", ev.config, "Flat JSON config file")->check(CLI::ExistingFile);
  evolve->add_option("--out", ev.out, "Output directory")->capture_default_str();
  evolve->add_option("--seed", ev.seed, "Random seed");
  evolve->add_option("--generations", ev.generations, "Maximum number of generations");
  evolve->add_option("--pop-size", ev.pop_size, "Population size");
  evolve->add_option("--pc", ev.pc, "Crossover probability");
  evolve->add_option("--pm", ev.pm, "Mutation probability");
  evolve->add_option("--threads", ev.threads, "Fitness evaluation threads");

  std::string csv_in, tsv_out;
  double r_min = 2.0;
  auto* convert = app.add_subcommand("convert-conceptnet", "Convert a ConceptNet CSV dump to KB TSV");
  convert->add_option("input", csv_in, "ConceptNet CSV")->required()->check(CLI::ExistingFile);
  convert->add_option("output", tsv_out, "KB TSV to write")->required();
  convert->add_option("--r-min", r_min, "Minimum assertion score")->capture_default_str();

  std::string base_path, target_path;
  auto* match = app.add_subcommand("match", "Print the analogical mapping between two networks");
  match->add_option("base", base_path, "Base network JSON")->required()->check(CLI::ExistingFile);
  match->add_option("target", target_path, "Target network JSON")->required()->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  if (*evolve) return cmd_evolve(ev);
  if (*convert) return cmd_convert(csv_in, tsv_out, r_min);
  if (*match) return cmd_match(base_path, target_path);
  return 1;
}
