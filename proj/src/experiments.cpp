// SPDX-License-Identifier: Apache-2.0
#include "vida/experiments.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>

#include <json.hpp>

#include "csv.hpp"
#include "vida/engine.hpp"
#include "vida/errors.hpp"

namespace vida {

namespace {

// Shortest decimal form that parses back to exactly the same double.
std::string fmt_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
  }
  return std::string(buf, end);
}

// Minimal WKT POLYGON reader: returns GeoJSON-style ring lists.
std::vector<std::vector<std::array<double, 2>>> parse_wkt_polygon(
    const std::string& wkt) {
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < wkt.size() && std::isspace(static_cast<unsigned char>(wkt[i])))
      ++i;
  };
  auto expect = [&](char c) {
    skip_ws();
    if (i >= wkt.size() || wkt[i] != c) {
      throw ParseError("WKT: expected '" + std::string(1, c) + "' at offset " +
                           std::to_string(i),
                       0, i + 1);
    }
    ++i;
  };
  skip_ws();
  const std::string tag = "POLYGON";
  if (wkt.compare(i, tag.size(), tag) != 0) {
    throw ParseError("WKT: only POLYGON geometries are supported", 0, i + 1);
  }
  i += tag.size();
  expect('(');
  std::vector<std::vector<std::array<double, 2>>> rings;
  for (;;) {
    expect('(');
    std::vector<std::array<double, 2>> ring;
    for (;;) {
      skip_ws();
      char* end = nullptr;
      double x = std::strtod(wkt.c_str() + i, &end);
      if (end == wkt.c_str() + i) {
        throw ParseError("WKT: expected a coordinate at offset " +
                             std::to_string(i),
                         0, i + 1);
      }
      i = end - wkt.c_str();
      skip_ws();
      double y = std::strtod(wkt.c_str() + i, &end);
      if (end == wkt.c_str() + i) {
        throw ParseError("WKT: expected a y coordinate at offset " +
                             std::to_string(i),
                         0, i + 1);
      }
      i = end - wkt.c_str();
      ring.push_back({x, y});
      skip_ws();
      if (i < wkt.size() && wkt[i] == ',') {
        ++i;
        continue;
      }
      break;
    }
    expect(')');
    if (ring.size() < 4) {
      throw ParseError("WKT: a polygon ring needs at least 4 points", 0, i);
    }
    rings.push_back(std::move(ring));
    skip_ws();
    if (i < wkt.size() && wkt[i] == ',') {
      ++i;
      continue;
    }
    break;
  }
  expect(')');
  skip_ws();
  if (i != wkt.size()) {
    throw ParseError("WKT: trailing characters after polygon", 0, i + 1);
  }
  return rings;
}

} // namespace

const std::vector<std::string>& sweepable_parameters() {
  static const std::vector<std::string> names = {
      "gender_stress_male", "pct_employed", "pct_gun", "pct_addicted"};
  return names;
}

CellStats stats_of(const std::vector<double>& values) {
  CellStats s;
  if (values.empty()) return s;
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / values.size();

  std::vector<double> sorted(values);
  std::sort(sorted.begin(), sorted.end());
  std::size_t n = sorted.size();
  s.median = n % 2 ? sorted[n / 2]
                   : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);

  if (n > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.sd = std::sqrt(ss / (n - 1));
  }
  return s;
}

ExperimentReport aggregate_cell(std::string cell_id,
                                std::vector<RunMetrics> raw,
                                const SimParams& params) {
  ExperimentReport r;
  r.cell_id = std::move(cell_id);
  r.seed = params.master_seed;
  r.replications = params.replications;
  std::vector<double> cases, denounces;
  cases.reserve(raw.size());
  denounces.reserve(raw.size());
  for (const auto& m : raw) {
    cases.push_back(m.cases_per_100k);
    denounces.push_back(m.denounces_per_100k);
  }
  r.cases = stats_of(cases);
  r.denounces = stats_of(denounces);
  r.raw = std::move(raw);
  return r;
}

std::vector<ExperimentReport> aggregate_by_area(const ExperimentReport& cell) {
  std::vector<std::string> order;
  for (const auto& m : cell.raw) {
    if (std::find(order.begin(), order.end(), m.area_id) == order.end()) {
      order.push_back(m.area_id);
    }
  }
  std::vector<ExperimentReport> out;
  out.reserve(order.size());
  for (const auto& area : order) {
    std::vector<RunMetrics> rows;
    for (const auto& m : cell.raw) {
      if (m.area_id == area) rows.push_back(m);
    }
    ExperimentReport r;
    r.cell_id = area;
    r.seed = cell.seed;
    r.replications = cell.replications;
    std::vector<double> cases, denounces;
    for (const auto& m : rows) {
      cases.push_back(m.cases_per_100k);
      denounces.push_back(m.denounces_per_100k);
    }
    r.cases = stats_of(cases);
    r.denounces = stats_of(denounces);
    r.raw = std::move(rows);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<ExperimentReport> run_sweep(const std::vector<AreaProfile>& profiles,
                                        const SimParams& base,
                                        const SweepSpec& spec,
                                        int threads) {
  const auto& names = sweepable_parameters();
  if (std::find(names.begin(), names.end(), spec.parameter) == names.end()) {
    std::string valid;
    for (const auto& n : names) {
      if (!valid.empty()) valid += ", ";
      valid += n;
    }
    throw ValidationError("parameter", "'" + spec.parameter +
                                           "' is not sweepable; valid "
                                           "names: " +
                                           valid);
  }
  if (spec.grid.empty()) {
    throw ValidationError("grid", "sweep grid must not be empty");
  }
  std::vector<ExperimentReport> out;
  out.reserve(spec.grid.size());
  for (double value : spec.grid) {
    SimParams params = base;
    set_param_double(params, spec.parameter, value); // range-checks
    auto raw = run_batch(profiles, params, threads);
    ExperimentReport r =
        aggregate_cell(spec.parameter, std::move(raw), params);
    r.has_parameter_value = true;
    r.parameter_value = value;
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<ExperimentReport> run_design(const std::vector<AreaProfile>& profiles,
                                         const SimParams& base,
                                         int threads) {
  std::vector<ExperimentReport> out;
  out.reserve(4);
  for (int det = 0; det < 2; ++det) {
    for (int dist = 0; dist < 2; ++dist) {
      SimParams params = base;
      params.deterrence_enabled = det == 1;
      params.distancing_enabled = dist == 1;
      auto raw = run_batch(profiles, params, threads);
      std::string id = std::string("deterrence=") + (det ? "1" : "0") +
                       ";distancing=" + (dist ? "1" : "0");
      out.push_back(aggregate_cell(std::move(id), std::move(raw), params));
    }
  }
  return out;
}

void write_report_csv(const std::vector<ExperimentReport>& reports,
                      const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot write report file: " + path);
  }
  out << "cell_id,parameter_value,cases_mean,cases_median,cases_sd,"
         "denounces_mean,denounces_median,denounces_sd,replications,seed\n";
  for (const auto& r : reports) {
    out << csv::quote(r.cell_id) << ','
        << (r.has_parameter_value ? fmt_double(r.parameter_value) : "") << ','
        << fmt_double(r.cases.mean) << ',' << fmt_double(r.cases.median)
        << ',' << fmt_double(r.cases.sd) << ',' << fmt_double(r.denounces.mean)
        << ',' << fmt_double(r.denounces.median) << ','
        << fmt_double(r.denounces.sd) << ',' << r.replications << ','
        << r.seed << '\n';
  }
  if (!out) {
    throw IoError("error while writing report file: " + path);
  }
}

void write_metrics_csv(const std::vector<ExperimentReport>& reports,
                       const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot write metrics file: " + path);
  }
  out << "cell_id,parameter_value,area_id,replication_id,women_count,"
         "attacks,denounces,protections,convictions,cases_per_100k,"
         "denounces_per_100k\n";
  for (const auto& r : reports) {
    for (const auto& m : r.raw) {
      out << csv::quote(r.cell_id) << ','
          << (r.has_parameter_value ? fmt_double(r.parameter_value) : "")
          << ',' << csv::quote(m.area_id) << ',' << m.replication_id << ','
          << m.women_count << ',' << m.attacks << ',' << m.denounces << ','
          << m.protections << ',' << m.convictions << ','
          << fmt_double(m.cases_per_100k) << ','
          << fmt_double(m.denounces_per_100k) << '\n';
    }
  }
  if (!out) {
    throw IoError("error while writing metrics file: " + path);
  }
}

GeoJsonSummary write_area_geojson(const std::vector<ExperimentReport>& per_area,
                                  const std::vector<AreaProfile>& profiles,
                                  const std::string& path) {
  GeoJsonSummary summary;
  nlohmann::ordered_json features = nlohmann::ordered_json::array();
  for (const auto& r : per_area) {
    const AreaProfile* profile = nullptr;
    for (const auto& p : profiles) {
      if (p.area_id == r.cell_id) {
        profile = &p;
        break;
      }
    }
    nlohmann::ordered_json feature;
    feature["type"] = "Feature";
    feature["geometry"] = nullptr;
    if (!profile) {
      summary.warnings.push_back("area '" + r.cell_id +
                                 "' has no profile; feature has no geometry");
    } else if (profile->geometry_wkt.empty()) {
      summary.warnings.push_back("area '" + r.cell_id +
                                 "' has no geometry in its profile");
    } else {
      try {
        auto rings = parse_wkt_polygon(profile->geometry_wkt);
        nlohmann::ordered_json coords = nlohmann::ordered_json::array();
        for (const auto& ring : rings) {
          nlohmann::ordered_json jring = nlohmann::ordered_json::array();
          for (const auto& pt : ring) {
            jring.push_back({pt[0], pt[1]});
          }
          coords.push_back(std::move(jring));
        }
        feature["geometry"] = {{"type", "Polygon"},
                               {"coordinates", std::move(coords)}};
      } catch (const ParseError& e) {
        summary.warnings.push_back("area '" + r.cell_id +
                                   "': " + e.what());
      }
    }
    feature["properties"] = {
        {"area_id", r.cell_id},
        {"name", profile ? profile->name : ""},
        {"cases_per_100k_mean", r.cases.mean},
        {"denounces_per_100k_mean", r.denounces.mean},
    };
    features.push_back(std::move(feature));
    summary.feature_count += 1;
  }
  nlohmann::ordered_json doc;
  doc["type"] = "FeatureCollection";
  doc["features"] = std::move(features);

  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot write GeoJSON file: " + path);
  }
  out << doc.dump(2) << '\n';
  if (!out) {
    throw IoError("error while writing GeoJSON file: " + path);
  }
  return summary;
}

} // namespace vida
