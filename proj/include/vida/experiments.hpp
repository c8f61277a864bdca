// SPDX-License-Identifier: Apache-2.0
#ifndef VIDA_EXPERIMENTS_HPP
#define VIDA_EXPERIMENTS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "vida/domain.hpp"

namespace vida {

// One sensitivity sweep: vary a single parameter over a grid, everything
// else (including the seed plan) held fixed.
struct SweepSpec {
  std::string parameter; // one of sweepable_parameters()
  std::vector<double> grid;
};

// Parameters run_sweep accepts.
const std::vector<std::string>& sweepable_parameters();

struct CellStats {
  double mean = 0.0;
  double median = 0.0;
  double sd = 0.0; // sample standard deviation, 0 for a single value
};

// Aggregated outcome of one experiment cell, with the raw rows kept so
// every statistic can be recomputed independently.
struct ExperimentReport {
  std::string cell_id;
  bool has_parameter_value = false;
  double parameter_value = 0.0;
  std::uint64_t seed = 0;
  int replications = 0;
  CellStats cases;     // cases_per_100k over raw rows
  CellStats denounces; // denounces_per_100k over raw rows
  std::vector<RunMetrics> raw;
};

CellStats stats_of(const std::vector<double>& values);

// Aggregate raw per-replication metrics into one report cell.
ExperimentReport aggregate_cell(std::string cell_id,
                                std::vector<RunMetrics> raw,
                                const SimParams& params);

// Split one cell's raw rows by area and aggregate each; cell_id of each
// output is the area_id. Input order of first appearance is preserved.
std::vector<ExperimentReport> aggregate_by_area(const ExperimentReport& cell);

// One cell per grid value; cell_id is the parameter name and
// parameter_value carries the grid value. Seed plans are identical across
// cells, so differences between cells are paired comparisons.
std::vector<ExperimentReport> run_sweep(const std::vector<AreaProfile>& profiles,
                                        const SimParams& base,
                                        const SweepSpec& spec,
                                        int threads = 0);

// The four (deterrence, distancing) cells, in the order (off,off),
// (off,on), (on,off), (on,on), identical seed plans throughout.
std::vector<ExperimentReport> run_design(const std::vector<AreaProfile>& profiles,
                                         const SimParams& base,
                                         int threads = 0);

// CSV with one row per cell: cell_id, parameter_value, cases mean/median/
// sd, denounces mean/median/sd, replications, seed. Doubles are printed
// with enough digits to round-trip exactly.
void write_report_csv(const std::vector<ExperimentReport>& reports,
                      const std::string& path);

// CSV with one row per raw replication across all cells.
void write_metrics_csv(const std::vector<ExperimentReport>& reports,
                       const std::string& path);

struct GeoJsonSummary {
  int feature_count = 0;
  std::vector<std::string> warnings; // missing/unparseable geometry notes
};

// GeoJSON FeatureCollection with one feature per per-area report
// (cell_id = area_id). Areas without usable geometry get a null geometry
// and a recorded warning.
GeoJsonSummary write_area_geojson(const std::vector<ExperimentReport>& per_area,
                                  const std::vector<AreaProfile>& profiles,
                                  const std::string& path);

} // namespace vida

#endif
