// SPDX-License-Identifier: Apache-2.0
#include "vida.h"

#include <cstring>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "vida/config.hpp"
#include "vida/domain.hpp"
#include "vida/engine.hpp"
#include "vida/errors.hpp"
#include "vida/experiments.hpp"
#include "vida/population.hpp"

struct vida_params {
  vida::SimParams p;
};

struct vida_profiles {
  std::vector<vida::AreaProfile> profiles;
};

struct vida_results {
  std::vector<vida::ExperimentReport> reports;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& message) { g_last_error = message; }

vida_status fail(vida_status status, const std::string& message) {
  set_error(message);
  return status;
}

// Run `body`, translating exceptions into status codes.
template <typename F>
vida_status guarded(F&& body) noexcept {
  try {
    return body();
  } catch (const vida::ValidationError& e) {
    return fail(VIDA_ERR_VALIDATION, e.what());
  } catch (const vida::ParseError& e) {
    return fail(VIDA_ERR_PARSE, e.what());
  } catch (const vida::IoError& e) {
    return fail(VIDA_ERR_IO, e.what());
  } catch (const std::bad_alloc&) {
    return fail(VIDA_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(VIDA_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(VIDA_ERR_INTERNAL, "unknown error");
  }
}

vida_status copy_string(const std::string& s, char* buf, size_t bufsize) {
  if (!buf || bufsize == 0) {
    return fail(VIDA_ERR_INVALID_ARGUMENT, "output buffer is null or empty");
  }
  if (s.size() + 1 > bufsize) {
    return fail(VIDA_ERR_INVALID_ARGUMENT,
                "buffer too small: need " + std::to_string(s.size() + 1) +
                    " bytes, have " + std::to_string(bufsize));
  }
  std::memcpy(buf, s.c_str(), s.size() + 1);
  return VIDA_OK;
}

} // namespace

extern "C" {

const char* vida_version(void) { return "1.0.0"; }

const char* vida_last_error(void) { return g_last_error.c_str(); }

vida_params* vida_params_create(void) {
  return new (std::nothrow) vida_params{};
}

void vida_params_destroy(vida_params* params) { delete params; }

vida_status vida_params_load(vida_params* params, const char* config_path) {
  if (!params || !config_path) {
    return fail(VIDA_ERR_INVALID_ARGUMENT, "params and config_path required");
  }
  return guarded([&] {
    vida::RunConfig cfg = vida::load_config(config_path);
    params->p = cfg.params;
    return VIDA_OK;
  });
}

vida_status vida_params_set(vida_params* params, const char* name,
                            const char* value) {
  if (!params || !name || !value) {
    return fail(VIDA_ERR_INVALID_ARGUMENT, "params, name and value required");
  }
  return guarded([&] {
    vida::set_param_text(params->p, name, value);
    return VIDA_OK;
  });
}

vida_status vida_params_get(const vida_params* params, const char* name,
                            char* buf, size_t bufsize) {
  if (!params || !name) {
    return fail(VIDA_ERR_INVALID_ARGUMENT, "params and name required");
  }
  return guarded([&] {
    return copy_string(vida::get_param_text(params->p, name), buf, bufsize);
  });
}

vida_status vida_params_validate(const vida_params* params) {
  if (!params) {
    return fail(VIDA_ERR_INVALID_ARGUMENT, "params required");
  }
  return guarded([&] {
    vida::validate(params->p);
    return VIDA_OK;
  });
}

vida_status vida_config_profile_count(const char* config_path, int* out) {
  if (!config_path || !out) {
    return fail(VIDA_ERR_INVALID_ARGUMENT, "config_path and out required");
  }
  return guarded([&] {
    vida::RunConfig cfg = vida::load_config(config_path);
    *out = static_cast<int>(cfg.profile_paths.size());
    return VIDA_OK;
  });
}

vida_status vida_config_profile_path(const char* config_path, int index,
                                     char* buf, size_t bufsize) {
  if (!config_path) {
    return fail(VIDA_ERR_INVALID_ARGUMENT, "config_path required");
  }
  return guarded([&] {
    vida::RunConfig cfg = vida::load_config(config_path);
    if (index < 0 ||
        static_cast<size_t>(index) >= cfg.profile_paths.size()) {
      return fail(VIDA_ERR_INVALID_ARGUMENT,
                  "profile index " + std::to_string(index) + " out of range");
    }
    return copy_string(cfg.profile_paths[index], buf, bufsize);
  });
}

vida_status vida_config_out_dir(const char* config_path, char* buf,
                                size_t bufsize) {
  if (!config_path) {
    return fail(VIDA_ERR_INVALID_ARGUMENT, "config_path required");
  }
  return guarded([&] {
    vida::RunConfig cfg = vida::load_config(config_path);
    return copy_string(cfg.out_dir, buf, bufsize);
  });
}

vida_status vida_profiles_load(const char* csv_path, vida_profiles** out) {
  if (!csv_path || !out) {
    return fail(VIDA_ERR_INVALID_ARGUMENT, "csv_path and out required");
  }
  return vida_profiles_load_many(&csv_path, 1, out);
}

vida_status vida_profiles_load_many(const char* const* csv_paths,
                                    size_t n_paths, vida_profiles** out) {
  if (!csv_paths || n_paths == 0 || !out) {
    return fail(VIDA_ERR_INVALID_ARGUMENT,
                "csv_paths (non-empty) and out required");
  }
  *out = nullptr;
  return guarded([&] {
    auto handle = std::make_unique<vida_profiles>();
    for (size_t i = 0; i < n_paths; ++i) {
      if (!csv_paths[i]) {
        return fail(VIDA_ERR_INVALID_ARGUMENT,
                    "csv_paths[" + std::to_string(i) + "] is null");
      }
      auto loaded = vida::load_area_profiles(csv_paths[i]);
      for (auto& p : loaded) {
        for (const auto& existing : handle->profiles) {
          if (existing.area_id == p.area_id) {
            return fail(VIDA_ERR_VALIDATION,
                        "duplicate area_id '" + p.area_id + "' in " +
                            csv_paths[i]);
          }
        }
        handle->profiles.push_back(std::move(p));
      }
    }
    *out = handle.release();
    return VIDA_OK;
  });
}

vida_status vida_profiles_generate(int areas, int families_per_area,
                                   uint64_t seed, int with_geometry,
                                   vida_profiles** out) {
  if (!out) {
    return fail(VIDA_ERR_INVALID_ARGUMENT, "out required");
  }
  *out = nullptr;
  return guarded([&] {
    auto handle = std::make_unique<vida_profiles>();
    handle->profiles = vida::generate_fixture(areas, families_per_area, seed,
                                              with_geometry != 0);
    *out = handle.release();
    return VIDA_OK;
  });
}

vida_status vida_profiles_write(const vida_profiles* profiles,
                                const char* csv_path) {
  if (!profiles || !csv_path) {
    return fail(VIDA_ERR_INVALID_ARGUMENT, "profiles and csv_path required");
  }
  return guarded([&] {
    vida::write_area_profiles(profiles->profiles, csv_path);
    return VIDA_OK;
  });
}

void vida_profiles_destroy(vida_profiles* profiles) { delete profiles; }

int vida_profiles_count(const vida_profiles* profiles) {
  return profiles ? static_cast<int>(profiles->profiles.size()) : 0;
}

vida_status vida_profiles_area_id(const vida_profiles* profiles, int index,
                                  char* buf, size_t bufsize) {
  if (!profiles) {
    return fail(VIDA_ERR_INVALID_ARGUMENT, "profiles required");
  }
  if (index < 0 || static_cast<size_t>(index) >= profiles->profiles.size()) {
    return fail(VIDA_ERR_INVALID_ARGUMENT,
                "profile index " + std::to_string(index) + " out of range");
  }
  return copy_string(profiles->profiles[index].area_id, buf, bufsize);
}

vida_status vida_run_batch(const vida_params* params,
                           const vida_profiles* profiles, int threads,
                           vida_results** out) {
  if (!params || !profiles || !out) {
    return fail(VIDA_ERR_INVALID_ARGUMENT,
                "params, profiles and out required");
  }
  *out = nullptr;
  return guarded([&] {
    auto raw = vida::run_batch(profiles->profiles, params->p, threads);
    auto handle = std::make_unique<vida_results>();
    handle->reports.push_back(
        vida::aggregate_cell("run", std::move(raw), params->p));
    *out = handle.release();
    return VIDA_OK;
  });
}

vida_status vida_run_design(const vida_params* params,
                            const vida_profiles* profiles, int threads,
                            vida_results** out) {
  if (!params || !profiles || !out) {
    return fail(VIDA_ERR_INVALID_ARGUMENT,
                "params, profiles and out required");
  }
  *out = nullptr;
  return guarded([&] {
    auto handle = std::make_unique<vida_results>();
    handle->reports =
        vida::run_design(profiles->profiles, params->p, threads);
    *out = handle.release();
    return VIDA_OK;
  });
}

vida_status vida_run_sweep(const vida_params* params,
                           const vida_profiles* profiles,
                           const char* parameter, const double* grid,
                           size_t grid_len, int threads, vida_results** out) {
  if (!params || !profiles || !parameter || !out) {
    return fail(VIDA_ERR_INVALID_ARGUMENT,
                "params, profiles, parameter and out required");
  }
  if (!grid || grid_len == 0) {
    return fail(VIDA_ERR_INVALID_ARGUMENT, "grid must not be empty");
  }
  *out = nullptr;
  return guarded([&] {
    vida::SweepSpec spec;
    spec.parameter = parameter;
    spec.grid.assign(grid, grid + grid_len);
    auto handle = std::make_unique<vida_results>();
    handle->reports =
        vida::run_sweep(profiles->profiles, params->p, spec, threads);
    *out = handle.release();
    return VIDA_OK;
  });
}

void vida_results_destroy(vida_results* results) { delete results; }

int vida_results_cell_count(const vida_results* results) {
  return results ? static_cast<int>(results->reports.size()) : 0;
}

vida_status vida_results_cell_stats(const vida_results* results, int index,
                                    vida_cell_stats* out) {
  if (!results || !out) {
    return fail(VIDA_ERR_INVALID_ARGUMENT, "results and out required");
  }
  if (index < 0 || static_cast<size_t>(index) >= results->reports.size()) {
    return fail(VIDA_ERR_INVALID_ARGUMENT,
                "cell index " + std::to_string(index) + " out of range");
  }
  const vida::ExperimentReport& r = results->reports[index];
  vida_cell_stats s{};
  std::strncpy(s.cell_id, r.cell_id.c_str(), sizeof s.cell_id - 1);
  s.has_parameter_value = r.has_parameter_value ? 1 : 0;
  s.parameter_value = r.parameter_value;
  s.cases_mean = r.cases.mean;
  s.cases_median = r.cases.median;
  s.cases_sd = r.cases.sd;
  s.denounces_mean = r.denounces.mean;
  s.denounces_median = r.denounces.median;
  s.denounces_sd = r.denounces.sd;
  s.replications = r.replications;
  s.seed = r.seed;
  *out = s;
  return VIDA_OK;
}

vida_status vida_results_write_report_csv(const vida_results* results,
                                          const char* path) {
  if (!results || !path) {
    return fail(VIDA_ERR_INVALID_ARGUMENT, "results and path required");
  }
  return guarded([&] {
    vida::write_report_csv(results->reports, path);
    return VIDA_OK;
  });
}

vida_status vida_results_write_metrics_csv(const vida_results* results,
                                           const char* path) {
  if (!results || !path) {
    return fail(VIDA_ERR_INVALID_ARGUMENT, "results and path required");
  }
  return guarded([&] {
    vida::write_metrics_csv(results->reports, path);
    return VIDA_OK;
  });
}

vida_status vida_results_write_geojson(const vida_results* results,
                                       const vida_profiles* profiles,
                                       const char* path, int* warnings_out) {
  if (!results || !profiles || !path) {
    return fail(VIDA_ERR_INVALID_ARGUMENT,
                "results, profiles and path required");
  }
  return guarded([&] {
    // Pool every raw row across cells, then aggregate per area.
    vida::ExperimentReport pooled;
    pooled.cell_id = "pooled";
    for (const auto& r : results->reports) {
      pooled.seed = r.seed;
      pooled.replications = r.replications;
      pooled.raw.insert(pooled.raw.end(), r.raw.begin(), r.raw.end());
    }
    auto per_area = vida::aggregate_by_area(pooled);
    auto summary =
        vida::write_area_geojson(per_area, profiles->profiles, path);
    if (warnings_out) {
      *warnings_out = static_cast<int>(summary.warnings.size());
    }
    return VIDA_OK;
  });
}

} // extern "C"
