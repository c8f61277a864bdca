// SPDX-License-Identifier: Apache-2.0
// Exercises the shared-library interface the way an external caller
// would: through vida.h only, no C++ internals.
#include <unistd.h>

#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <doctest.h>

#include "vida.h"

namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& name) {
  static int counter = 0;
  fs::path dir = fs::temp_directory_path() /
                 ("vida_capi_tests_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir / (std::to_string(counter++) + "_" + name);
}

struct ParamsGuard {
  vida_params* p = vida_params_create();
  ~ParamsGuard() { vida_params_destroy(p); }
};

struct ProfilesGuard {
  vida_profiles* p = nullptr;
  ~ProfilesGuard() { vida_profiles_destroy(p); }
};

struct ResultsGuard {
  vida_results* r = nullptr;
  ~ResultsGuard() { vida_results_destroy(r); }
};

} // namespace

TEST_CASE("version and error strings are always present") {
  CHECK(std::string(vida_version()) == "1.0.0");
  CHECK(vida_last_error() != nullptr);
}

TEST_CASE("parameter lifecycle: create, set, get, validate") {
  ParamsGuard g;
  REQUIRE(g.p != nullptr);

  CHECK(vida_params_validate(g.p) == VIDA_OK);

  CHECK(vida_params_set(g.p, "pct_gun", "0.35") == VIDA_OK);
  char buf[64];
  CHECK(vida_params_get(g.p, "pct_gun", buf, sizeof buf) == VIDA_OK);
  CHECK(std::string(buf) == "0.35");

  CHECK(vida_params_set(g.p, "deterrence_enabled", "false") == VIDA_OK);
  CHECK(vida_params_get(g.p, "deterrence_enabled", buf, sizeof buf) == VIDA_OK);
  CHECK(std::string(buf) == "false");

  CHECK(vida_params_set(g.p, "master_seed", "18446744073709551615") == VIDA_OK);
  CHECK(vida_params_get(g.p, "master_seed", buf, sizeof buf) == VIDA_OK);
  CHECK(std::string(buf) == "18446744073709551615");

  SUBCASE("bad values are validation errors with a message") {
    CHECK(vida_params_set(g.p, "pct_gun", "1.5") == VIDA_ERR_VALIDATION);
    CHECK(std::string(vida_last_error()).find("pct_gun") != std::string::npos);
    CHECK(vida_params_set(g.p, "no_such_field", "1") == VIDA_ERR_VALIDATION);
    CHECK(std::string(vida_last_error()).find("no_such_field") !=
          std::string::npos);
    // The failed sets left the old values in place.
    CHECK(vida_params_get(g.p, "pct_gun", buf, sizeof buf) == VIDA_OK);
    CHECK(std::string(buf) == "0.35");
  }

  SUBCASE("a too-small buffer is an invalid argument") {
    char tiny[3];
    CHECK(vida_params_get(g.p, "master_seed", tiny, sizeof tiny) ==
          VIDA_ERR_INVALID_ARGUMENT);
  }

  SUBCASE("null pointers are invalid arguments, not crashes") {
    CHECK(vida_params_set(nullptr, "pct_gun", "0.1") ==
          VIDA_ERR_INVALID_ARGUMENT);
    CHECK(vida_params_set(g.p, nullptr, "0.1") == VIDA_ERR_INVALID_ARGUMENT);
    CHECK(vida_params_set(g.p, "pct_gun", nullptr) ==
          VIDA_ERR_INVALID_ARGUMENT);
    CHECK(vida_params_get(g.p, "pct_gun", nullptr, 64) ==
          VIDA_ERR_INVALID_ARGUMENT);
    CHECK(vida_params_validate(nullptr) == VIDA_ERR_INVALID_ARGUMENT);
    vida_params_destroy(nullptr); // must be a no-op
  }
}

TEST_CASE("config helpers re-read the file each call") {
  auto path = temp_file("run.conf");
  {
    std::ofstream out(path);
    out << "profiles = a.csv\nprofiles = b.csv\nout_dir = results\n"
        << "replications = 4\nmaster_seed = 7\n";
  }
  int count = -1;
  CHECK(vida_config_profile_count(path.string().c_str(), &count) == VIDA_OK);
  CHECK(count == 2);
  char buf[256];
  CHECK(vida_config_profile_path(path.string().c_str(), 1, buf, sizeof buf) ==
        VIDA_OK);
  CHECK(std::string(buf) == "b.csv");
  CHECK(vida_config_profile_path(path.string().c_str(), 2, buf, sizeof buf) ==
        VIDA_ERR_INVALID_ARGUMENT);
  CHECK(vida_config_out_dir(path.string().c_str(), buf, sizeof buf) == VIDA_OK);
  CHECK(std::string(buf) == "results");

  ParamsGuard g;
  REQUIRE(g.p != nullptr);
  CHECK(vida_params_load(g.p, path.string().c_str()) == VIDA_OK);
  CHECK(vida_params_get(g.p, "replications", buf, sizeof buf) == VIDA_OK);
  CHECK(std::string(buf) == "4");

  SUBCASE("missing config file is an io error naming the path") {
    CHECK(vida_params_load(g.p, "/nonexistent/x.conf") == VIDA_ERR_IO);
    CHECK(std::string(vida_last_error()).find("/nonexistent/x.conf") !=
          std::string::npos);
    CHECK(vida_config_profile_count("/nonexistent/x.conf", &count) ==
          VIDA_ERR_IO);
  }
  SUBCASE("malformed config is a parse error") {
    auto bad = temp_file("bad.conf");
    std::ofstream(bad) << "what is this\n";
    CHECK(vida_params_load(g.p, bad.string().c_str()) == VIDA_ERR_PARSE);
  }
}

TEST_CASE("profiles: generate, write, load, inspect") {
  ProfilesGuard gen;
  REQUIRE(vida_profiles_generate(4, 25, 9, 1, &gen.p) == VIDA_OK);
  CHECK(vida_profiles_count(gen.p) == 4);

  char buf[96];
  REQUIRE(vida_profiles_area_id(gen.p, 0, buf, sizeof buf) == VIDA_OK);
  std::string first_id = buf;
  CHECK_FALSE(first_id.empty());
  CHECK(vida_profiles_area_id(gen.p, 4, buf, sizeof buf) ==
        VIDA_ERR_INVALID_ARGUMENT);
  CHECK(vida_profiles_area_id(gen.p, -1, buf, sizeof buf) ==
        VIDA_ERR_INVALID_ARGUMENT);

  auto csv = temp_file("areas.csv");
  REQUIRE(vida_profiles_write(gen.p, csv.string().c_str()) == VIDA_OK);

  ProfilesGuard loaded;
  REQUIRE(vida_profiles_load(csv.string().c_str(), &loaded.p) == VIDA_OK);
  CHECK(vida_profiles_count(loaded.p) == 4);
  REQUIRE(vida_profiles_area_id(loaded.p, 0, buf, sizeof buf) == VIDA_OK);
  CHECK(std::string(buf) == first_id);

  SUBCASE("load_many concatenates and rejects duplicate ids") {
    const std::string p1 = csv.string();
    const std::string p2 = std::string(VIDA_DATA_DIR) + "/demo_areas.csv";
    const char* both[] = {p1.c_str(), p2.c_str()};
    ProfilesGuard two;
    REQUIRE(vida_profiles_load_many(both, 2, &two.p) == VIDA_OK);
    ProfilesGuard demo;
    REQUIRE(vida_profiles_load(p2.c_str(), &demo.p) == VIDA_OK);
    CHECK(vida_profiles_count(two.p) ==
          4 + vida_profiles_count(demo.p));

    const char* both_dup[] = {p1.c_str(), p1.c_str()};
    ProfilesGuard dup;
    CHECK(vida_profiles_load_many(both_dup, 2, &dup.p) == VIDA_ERR_VALIDATION);
    CHECK(dup.p == nullptr);
  }

  SUBCASE("missing csv is an io error; malformed csv is a parse error") {
    ProfilesGuard bad;
    CHECK(vida_profiles_load("/nonexistent/areas.csv", &bad.p) == VIDA_ERR_IO);
    auto broken = temp_file("broken.csv");
    std::ofstream(broken) << "not,a,real,header\n1,2,3,4\n";
    CHECK(vida_profiles_load(broken.string().c_str(), &bad.p) ==
          VIDA_ERR_PARSE);
  }

  SUBCASE("generator argument validation") {
    ProfilesGuard bad;
    CHECK(vida_profiles_generate(0, 25, 9, 1, &bad.p) == VIDA_ERR_VALIDATION);
    CHECK(vida_profiles_generate(2, 25, 9, 1, nullptr) ==
          VIDA_ERR_INVALID_ARGUMENT);
  }
}

TEST_CASE("experiments through the C interface") {
  ParamsGuard params;
  REQUIRE(params.p != nullptr);
  REQUIRE(vida_params_set(params.p, "replications", "6") == VIDA_OK);
  REQUIRE(vida_params_set(params.p, "master_seed", "31415") == VIDA_OK);

  ProfilesGuard profiles;
  REQUIRE(vida_profiles_generate(3, 30, 12, 1, &profiles.p) == VIDA_OK);

  SUBCASE("batch: one cell, stable stats across thread counts") {
    ResultsGuard serial, parallel;
    REQUIRE(vida_run_batch(params.p, profiles.p, 1, &serial.r) == VIDA_OK);
    REQUIRE(vida_run_batch(params.p, profiles.p, 2, &parallel.r) == VIDA_OK);
    REQUIRE(vida_results_cell_count(serial.r) == 1);

    vida_cell_stats a, b;
    REQUIRE(vida_results_cell_stats(serial.r, 0, &a) == VIDA_OK);
    REQUIRE(vida_results_cell_stats(parallel.r, 0, &b) == VIDA_OK);
    CHECK(std::string(a.cell_id) == "run");
    CHECK(a.has_parameter_value == 0);
    CHECK(a.replications == 6);
    CHECK(a.seed == 31415);
    CHECK(a.cases_mean == b.cases_mean);
    CHECK(a.cases_sd == b.cases_sd);
    CHECK(a.denounces_median == b.denounces_median);
    CHECK(a.cases_mean > 0.0);

    CHECK(vida_results_cell_stats(serial.r, 1, &a) ==
          VIDA_ERR_INVALID_ARGUMENT);
  }

  SUBCASE("design: four cells, csv and geojson writers") {
    ResultsGuard design;
    REQUIRE(vida_run_design(params.p, profiles.p, 0, &design.r) == VIDA_OK);
    REQUIRE(vida_results_cell_count(design.r) == 4);
    vida_cell_stats s;
    REQUIRE(vida_results_cell_stats(design.r, 2, &s) == VIDA_OK);
    CHECK(std::string(s.cell_id) == "deterrence=1;distancing=0");

    auto report = temp_file("report.csv");
    auto metrics = temp_file("metrics.csv");
    auto geo = temp_file("areas.geojson");
    CHECK(vida_results_write_report_csv(design.r, report.string().c_str()) ==
          VIDA_OK);
    CHECK(vida_results_write_metrics_csv(design.r, metrics.string().c_str()) ==
          VIDA_OK);
    int warnings = -1;
    CHECK(vida_results_write_geojson(design.r, profiles.p,
                                     geo.string().c_str(),
                                     &warnings) == VIDA_OK);
    CHECK(warnings == 0);
    CHECK(fs::file_size(report) > 0);
    CHECK(fs::file_size(metrics) > 0);
    CHECK(fs::file_size(geo) > 0);

    CHECK(vida_results_write_report_csv(design.r, "/nonexistent/x.csv") ==
          VIDA_ERR_IO);
    CHECK(std::string(vida_last_error()).find("/nonexistent/x.csv") !=
          std::string::npos);
  }

  SUBCASE("sweep: one cell per grid value, bad parameter rejected") {
    ResultsGuard sweep;
    const double grid[] = {0.1, 0.5, 0.9};
    REQUIRE(vida_run_sweep(params.p, profiles.p, "pct_gun", grid, 3, 1,
                           &sweep.r) == VIDA_OK);
    REQUIRE(vida_results_cell_count(sweep.r) == 3);
    vida_cell_stats s;
    REQUIRE(vida_results_cell_stats(sweep.r, 1, &s) == VIDA_OK);
    CHECK(std::string(s.cell_id) == "pct_gun");
    CHECK(s.has_parameter_value == 1);
    CHECK(s.parameter_value == 0.5);

    ResultsGuard bad;
    CHECK(vida_run_sweep(params.p, profiles.p, "model_scale", grid, 3, 1,
                         &bad.r) == VIDA_ERR_VALIDATION);
    CHECK(bad.r == nullptr);
    CHECK(vida_run_sweep(params.p, profiles.p, "pct_gun", nullptr, 3, 1,
                         &bad.r) == VIDA_ERR_INVALID_ARGUMENT);
  }

  SUBCASE("invalid settings never make it into the handle") {
    // Setters range-check, so the handle can only hold a runnable state.
    CHECK(vida_params_set(params.p, "replications", "0") ==
          VIDA_ERR_VALIDATION);
    char buf[32];
    REQUIRE(vida_params_get(params.p, "replications", buf, sizeof buf) ==
            VIDA_OK);
    CHECK(std::string(buf) == "6");
    CHECK(vida_params_validate(params.p) == VIDA_OK);

    // An empty profile list is caught before any replication runs.
    auto empty_csv = temp_file("empty.csv");
    ProfilesGuard none;
    {
      ProfilesGuard one;
      REQUIRE(vida_profiles_generate(1, 10, 1, 0, &one.p) == VIDA_OK);
      REQUIRE(vida_profiles_write(one.p, empty_csv.string().c_str()) ==
              VIDA_OK);
      // Keep only the header.
      std::ifstream in(empty_csv);
      std::string header;
      std::getline(in, header);
      in.close();
      std::ofstream(empty_csv, std::ios::binary) << header << "\n";
    }
    REQUIRE(vida_profiles_load(empty_csv.string().c_str(), &none.p) ==
            VIDA_OK);
    CHECK(vida_profiles_count(none.p) == 0);
    ResultsGuard r;
    CHECK(vida_run_batch(params.p, none.p, 1, &r.r) == VIDA_ERR_VALIDATION);
    CHECK(r.r == nullptr);
  }

  SUBCASE("null handles are invalid arguments") {
    ResultsGuard r;
    CHECK(vida_run_batch(nullptr, profiles.p, 1, &r.r) ==
          VIDA_ERR_INVALID_ARGUMENT);
    CHECK(vida_run_batch(params.p, nullptr, 1, &r.r) ==
          VIDA_ERR_INVALID_ARGUMENT);
    CHECK(vida_run_batch(params.p, profiles.p, 1, nullptr) ==
          VIDA_ERR_INVALID_ARGUMENT);
    CHECK(vida_results_cell_count(nullptr) == 0);
    vida_profiles_destroy(nullptr);
    vida_results_destroy(nullptr);
  }
}
