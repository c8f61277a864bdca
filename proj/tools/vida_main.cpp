// SPDX-License-Identifier: Apache-2.0
// Command line front end. Talks to the simulator exclusively through the
// C API in vida.h.
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vida.h"

namespace {

struct CommonOpts {
  std::string config;
  std::vector<std::string> profiles;
  std::string out_dir;
  int threads = 0;
  bool threads_given = false;
  std::vector<std::string> sets;
  // Typed overrides; *_given tracks flag presence.
  std::uint64_t seed = 0;
  bool seed_given = false;
  int replications = 0;
  bool replications_given = false;
  int steps = 0;
  bool steps_given = false;
  bool deterrence = false;
  bool deterrence_given = false;
  bool distancing = false;
  bool distancing_given = false;
};

void add_common_flags(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--config", o.config, "Config file (key = value lines)");
  cmd->add_option("--profiles", o.profiles,
                  "Area-profile CSV file(s); overrides the config")
      ->expected(-1);
  cmd->add_option("--out-dir", o.out_dir,
                  "Output directory (default: config out_dir or 'out')");
  cmd->add_option("--threads", o.threads,
                  "Worker threads, 0 = machine parallelism "
                  "(env VIDA_THREADS)")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--seed", o.seed, "Master seed (master_seed)");
  cmd->add_option("--replications", o.replications,
                  "Replications per cell");
  cmd->add_option("--steps", o.steps, "Steps per replication");
  cmd->add_option("--deterrence", o.deterrence,
                  "Deterrence system on/off (true/false)");
  cmd->add_option("--distancing", o.distancing,
                  "Social distancing on/off (true/false)");
  cmd->add_option("--set", o.sets,
                  "Extra parameter override, name=value (repeatable)")
      ->expected(-1);
}

void capture_presence(CLI::App* cmd, CommonOpts& o) {
  o.seed_given = cmd->count("--seed") > 0;
  o.replications_given = cmd->count("--replications") > 0;
  o.steps_given = cmd->count("--steps") > 0;
  o.deterrence_given = cmd->count("--deterrence") > 0;
  o.distancing_given = cmd->count("--distancing") > 0;
  o.threads_given = cmd->count("--threads") > 0;
}

int fail_status() {
  std::fprintf(stderr, "error: %s\n", vida_last_error());
  return 1;
}

#define CHECK(call)                     \
  do {                                  \
    if ((call) != VIDA_OK) return fail_status(); \
  } while (0)

// RAII for the C handles.
struct ParamsHandle {
  vida_params* p = vida_params_create();
  ~ParamsHandle() { vida_params_destroy(p); }
};
struct ProfilesHandle {
  vida_profiles* p = nullptr;
  ~ProfilesHandle() { vida_profiles_destroy(p); }
};
struct ResultsHandle {
  vida_results* p = nullptr;
  ~ResultsHandle() { vida_results_destroy(p); }
};

int resolve_threads_opt(CommonOpts& o) {
  if (o.threads_given) return 0;
  const char* env = std::getenv("VIDA_THREADS");
  if (!env || !*env) return 0;
  char* end = nullptr;
  long v = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || v < 0) {
    std::fprintf(stderr, "error: VIDA_THREADS: cannot parse '%s'\n", env);
    return 1;
  }
  o.threads = static_cast<int>(v);
  return 0;
}

// Build params and profiles from config + flags. Returns 0 on success.
int prepare(CommonOpts& o, ParamsHandle& params, ProfilesHandle& profiles) {
  if (!params.p) {
    std::fprintf(stderr, "error: out of memory\n");
    return 1;
  }
  if (!o.config.empty()) {
    CHECK(vida_params_load(params.p, o.config.c_str()));
  }
  if (o.seed_given) {
    CHECK(vida_params_set(params.p, "master_seed",
                          std::to_string(o.seed).c_str()));
  }
  if (o.replications_given) {
    CHECK(vida_params_set(params.p, "replications",
                          std::to_string(o.replications).c_str()));
  }
  if (o.steps_given) {
    CHECK(vida_params_set(params.p, "steps_per_run",
                          std::to_string(o.steps).c_str()));
  }
  if (o.deterrence_given) {
    CHECK(vida_params_set(params.p, "deterrence_enabled",
                          o.deterrence ? "true" : "false"));
  }
  if (o.distancing_given) {
    CHECK(vida_params_set(params.p, "distancing_enabled",
                          o.distancing ? "true" : "false"));
  }
  for (const auto& kv : o.sets) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) {
      std::fprintf(stderr, "error: --set expects name=value, got '%s'\n",
                   kv.c_str());
      return 1;
    }
    CHECK(vida_params_set(params.p, kv.substr(0, eq).c_str(),
                          kv.substr(eq + 1).c_str()));
  }
  CHECK(vida_params_validate(params.p));

  std::vector<std::string> paths = o.profiles;
  if (paths.empty() && !o.config.empty()) {
    int n = 0;
    CHECK(vida_config_profile_count(o.config.c_str(), &n));
    for (int i = 0; i < n; ++i) {
      char buf[4096];
      CHECK(vida_config_profile_path(o.config.c_str(), i, buf, sizeof buf));
      paths.push_back(buf);
    }
  }
  if (paths.empty()) {
    std::fprintf(stderr,
                 "error: no area profiles; pass --profiles or set "
                 "'profiles =' in the config\n");
    return 1;
  }
  std::vector<const char*> cpaths;
  for (const auto& s : paths) cpaths.push_back(s.c_str());
  CHECK(vida_profiles_load_many(cpaths.data(), cpaths.size(), &profiles.p));

  if (o.out_dir.empty()) {
    o.out_dir = "out";
    if (!o.config.empty()) {
      char buf[4096];
      CHECK(vida_config_out_dir(o.config.c_str(), buf, sizeof buf));
      o.out_dir = buf;
    }
  }
  std::error_code ec;
  std::filesystem::create_directories(o.out_dir, ec);
  if (ec) {
    std::fprintf(stderr, "error: cannot create output directory '%s': %s\n",
                 o.out_dir.c_str(), ec.message().c_str());
    return 1;
  }
  return resolve_threads_opt(o);
}

void print_cell(const vida_cell_stats& s) {
  if (s.has_parameter_value) {
    std::printf("%s=%g: ", s.cell_id, s.parameter_value);
  } else {
    std::printf("%s: ", s.cell_id);
  }
  std::printf(
      "cases/100k mean %.2f (median %.2f, sd %.2f), "
      "denounces/100k mean %.2f (median %.2f, sd %.2f) "
      "[replications %d, seed %llu]\n",
      s.cases_mean, s.cases_median, s.cases_sd, s.denounces_mean,
      s.denounces_median, s.denounces_sd, s.replications,
      static_cast<unsigned long long>(s.seed));
}

int write_outputs(const ResultsHandle& results, const ProfilesHandle& profiles,
                  const std::string& out_dir, const std::string& prefix,
                  bool with_geojson) {
  namespace fs = std::filesystem;
  std::string report = (fs::path(out_dir) / (prefix + "report.csv")).string();
  std::string metrics =
      (fs::path(out_dir) / (prefix + "metrics.csv")).string();
  CHECK(vida_results_write_report_csv(results.p, report.c_str()));
  CHECK(vida_results_write_metrics_csv(results.p, metrics.c_str()));
  std::printf("wrote %s\n", report.c_str());
  std::printf("wrote %s\n", metrics.c_str());
  if (with_geojson) {
    std::string geo = (fs::path(out_dir) / (prefix + "areas.geojson")).string();
    int warnings = 0;
    CHECK(vida_results_write_geojson(results.p, profiles.p, geo.c_str(),
                                     &warnings));
    std::printf("wrote %s\n", geo.c_str());
    if (warnings > 0) {
      std::fprintf(stderr, "note: %d area(s) emitted without geometry\n",
                   warnings);
    }
  }
  return 0;
}

int cmd_run(CommonOpts& o) {
  ParamsHandle params;
  ProfilesHandle profiles;
  if (int rc = prepare(o, params, profiles)) return rc;
  ResultsHandle results;
  CHECK(vida_run_batch(params.p, profiles.p, o.threads, &results.p));
  vida_cell_stats s;
  CHECK(vida_results_cell_stats(results.p, 0, &s));
  print_cell(s);
  return write_outputs(results, profiles, o.out_dir, "", true);
}

int cmd_design(CommonOpts& o) {
  ParamsHandle params;
  ProfilesHandle profiles;
  if (int rc = prepare(o, params, profiles)) return rc;
  ResultsHandle results;
  CHECK(vida_run_design(params.p, profiles.p, o.threads, &results.p));
  int n = vida_results_cell_count(results.p);
  for (int i = 0; i < n; ++i) {
    vida_cell_stats s;
    CHECK(vida_results_cell_stats(results.p, i, &s));
    print_cell(s);
  }
  return write_outputs(results, profiles, o.out_dir, "design_", false);
}

int cmd_sweep(CommonOpts& o, const std::string& parameter,
              const std::vector<double>& grid) {
  ParamsHandle params;
  ProfilesHandle profiles;
  if (int rc = prepare(o, params, profiles)) return rc;
  ResultsHandle results;
  CHECK(vida_run_sweep(params.p, profiles.p, parameter.c_str(), grid.data(),
                       grid.size(), o.threads, &results.p));
  int n = vida_results_cell_count(results.p);
  for (int i = 0; i < n; ++i) {
    vida_cell_stats s;
    CHECK(vida_results_cell_stats(results.p, i, &s));
    print_cell(s);
  }
  return write_outputs(results, profiles, o.out_dir,
                       "sweep_" + parameter + "_", false);
}

int cmd_gen_fixture(const std::string& out_path, int areas, int families,
                    std::uint64_t seed, bool no_geometry) {
  ProfilesHandle profiles;
  CHECK(vida_profiles_generate(areas, families, seed, no_geometry ? 0 : 1,
                               &profiles.p));
  CHECK(vida_profiles_write(profiles.p, out_path.c_str()));
  std::printf("wrote %d area profile(s) to %s\n",
              vida_profiles_count(profiles.p), out_path.c_str());
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"VIDA: agent-based simulator of domestic-violence dynamics"};
  app.set_version_flag("--version", vida_version());
  app.require_subcommand(1);

  CommonOpts run_opts;
  CLI::App* run = app.add_subcommand(
      "run", "Run one batch of replications and write reports");
  add_common_flags(run, run_opts);

  CommonOpts design_opts;
  CLI::App* design = app.add_subcommand(
      "design", "Run the 2x2 deterrence x distancing design");
  add_common_flags(design, design_opts);

  CommonOpts sweep_opts;
  std::string sweep_parameter;
  std::vector<double> sweep_grid;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "Sweep one parameter over a grid of values");
  add_common_flags(sweep, sweep_opts);
  sweep->add_option("--parameter", sweep_parameter,
                    "Parameter to sweep (gender_stress_male, pct_employed, "
                    "pct_gun, pct_addicted)")
      ->required();
  sweep->add_option("--grid", sweep_grid, "Comma-separated grid of values")
      ->required()
      ->delimiter(',');

  std::string fixture_out;
  int fixture_areas = 4;
  int fixture_families = 500;
  std::uint64_t fixture_seed = 1;
  bool fixture_no_geometry = false;
  CLI::App* gen = app.add_subcommand(
      "gen-fixture", "Generate a synthetic area-profile CSV");
  gen->add_option("--out", fixture_out, "Output CSV path")->required();
  gen->add_option("--areas", fixture_areas, "Number of areas (default 4)")
      ->check(CLI::PositiveNumber);
  gen->add_option("--families", fixture_families,
                  "Families sampled per area (default 500)")
      ->check(CLI::PositiveNumber);
  gen->add_option("--seed", fixture_seed, "Generator seed (default 1)");
  gen->add_flag("--no-geometry", fixture_no_geometry,
                "Omit polygon geometry");

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) {
    capture_presence(run, run_opts);
    return cmd_run(run_opts);
  }
  if (design->parsed()) {
    capture_presence(design, design_opts);
    return cmd_design(design_opts);
  }
  if (sweep->parsed()) {
    capture_presence(sweep, sweep_opts);
    return cmd_sweep(sweep_opts, sweep_parameter, sweep_grid);
  }
  if (gen->parsed()) {
    return cmd_gen_fixture(fixture_out, fixture_areas, fixture_families,
                           fixture_seed, fixture_no_geometry);
  }
  return 1;
}
