// SPDX-License-Identifier: Apache-2.0
#include "vida/population.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <unordered_set>

#include "csv.hpp"
#include "vida/errors.hpp"
#include "vida/stress.hpp"

namespace vida {

namespace {

constexpr const char* kHeader[] = {
    "area_id",        "region_id",     "name",
    "num_families_sample", "pct_female_black", "pct_male_black",
    "age_mean",       "age_sd",        "schooling_mean",
    "schooling_sd",   "income_mean",   "income_sd",
    "avg_children",   "geometry",
};
constexpr std::size_t kColumns = sizeof kHeader / sizeof kHeader[0];

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

double parse_double_field(const std::string& text, const char* field,
                          std::size_t row, std::size_t col) {
  char* end = nullptr;
  double v = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0') {
    throw ParseError("row " + std::to_string(row) + ", column '" + field +
                         "': cannot parse '" + text + "' as a number",
                     row, col);
  }
  return v;
}

int parse_int_field(const std::string& text, const char* field,
                    std::size_t row, std::size_t col) {
  char* end = nullptr;
  long v = std::strtol(text.c_str(), &end, 10);
  if (end == text.c_str() || *end != '\0') {
    throw ParseError("row " + std::to_string(row) + ", column '" + field +
                         "': cannot parse '" + text + "' as an integer",
                     row, col);
  }
  return static_cast<int>(v);
}

} // namespace

double normalize(double v, const MinMaxBounds& b) {
  if (b.max <= b.min) return 0.5;
  return std::clamp((v - b.min) / (b.max - b.min), 0.0, 1.0);
}

std::vector<AreaProfile> load_area_profiles(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open area-profile file: " + path);
  }
  std::vector<AreaProfile> profiles;
  std::unordered_set<std::string> seen_ids;
  std::string line;
  std::size_t row = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto fields = csv::split_record(line, row);
    if (!header_seen) {
      if (fields.size() != kColumns) {
        throw ParseError("row " + std::to_string(row) + ": header has " +
                             std::to_string(fields.size()) +
                             " columns, expected " + std::to_string(kColumns),
                         row);
      }
      for (std::size_t i = 0; i < kColumns; ++i) {
        if (fields[i] != kHeader[i]) {
          throw ParseError("row " + std::to_string(row) +
                               ": header column " + std::to_string(i + 1) +
                               " is '" + fields[i] + "', expected '" +
                               kHeader[i] + "'",
                           row, i + 1);
        }
      }
      header_seen = true;
      continue;
    }
    if (fields.size() != kColumns) {
      throw ParseError("row " + std::to_string(row) + ": has " +
                           std::to_string(fields.size()) +
                           " columns, expected " + std::to_string(kColumns),
                       row);
    }
    AreaProfile p;
    p.area_id = fields[0];
    p.region_id = fields[1];
    p.name = fields[2];
    p.num_families_sample =
        parse_int_field(fields[3], "num_families_sample", row, 4);
    p.pct_female_black =
        parse_double_field(fields[4], "pct_female_black", row, 5);
    p.pct_male_black = parse_double_field(fields[5], "pct_male_black", row, 6);
    p.age_mean = parse_double_field(fields[6], "age_mean", row, 7);
    p.age_sd = parse_double_field(fields[7], "age_sd", row, 8);
    p.schooling_mean =
        parse_double_field(fields[8], "schooling_mean", row, 9);
    p.schooling_sd = parse_double_field(fields[9], "schooling_sd", row, 10);
    p.income_mean = parse_double_field(fields[10], "income_mean", row, 11);
    p.income_sd = parse_double_field(fields[11], "income_sd", row, 12);
    p.avg_children = parse_double_field(fields[12], "avg_children", row, 13);
    p.geometry_wkt = fields[13];
    try {
      validate(p);
    } catch (const ValidationError& e) {
      throw ValidationError(e.field(),
                            "row " + std::to_string(row) + ": " + e.what());
    }
    if (!seen_ids.insert(p.area_id).second) {
      throw ValidationError("area_id", "row " + std::to_string(row) +
                                           ": duplicate area_id '" +
                                           p.area_id + "'");
    }
    profiles.push_back(std::move(p));
  }
  if (!header_seen) {
    throw ParseError("file has no header row: " + path, 0);
  }
  return profiles;
}

void write_area_profiles(const std::vector<AreaProfile>& profiles,
                         const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot write area-profile file: " + path);
  }
  for (std::size_t i = 0; i < kColumns; ++i) {
    out << (i ? "," : "") << kHeader[i];
  }
  out << '\n';
  for (const auto& p : profiles) {
    validate(p);
    out << csv::quote(p.area_id) << ',' << csv::quote(p.region_id) << ','
        << csv::quote(p.name) << ',' << p.num_families_sample << ','
        << fmt_double(p.pct_female_black) << ','
        << fmt_double(p.pct_male_black) << ',' << fmt_double(p.age_mean)
        << ',' << fmt_double(p.age_sd) << ',' << fmt_double(p.schooling_mean)
        << ',' << fmt_double(p.schooling_sd) << ','
        << fmt_double(p.income_mean) << ',' << fmt_double(p.income_sd) << ','
        << fmt_double(p.avg_children) << ',' << csv::quote(p.geometry_wkt)
        << '\n';
  }
  if (!out) {
    throw IoError("error while writing area-profile file: " + path);
  }
}

PopulationSample sample_population(const AreaProfile& profile,
                                   const SimParams& params,
                                   RandomStream& rng) {
  validate(profile);
  validate(params);
  const double inf = std::numeric_limits<double>::infinity();
  const int n = profile.num_families_sample;

  PopulationSample world;
  world.area_id = profile.area_id;
  world.agents.reserve(2 * n);
  world.families.reserve(n);

  // Draw order per family is fixed: male attributes, female attributes,
  // children, victim group. Changing a probability parameter never shifts
  // which deviate feeds which attribute.
  for (int f = 0; f < n; ++f) {
    Family fam;
    fam.id = static_cast<FamilyId>(f);
    fam.area_id = profile.area_id;
    fam.male_id = static_cast<AgentId>(2 * f);
    fam.female_id = static_cast<AgentId>(2 * f + 1);

    for (int which = 0; which < 2; ++which) {
      PersonAgent a;
      a.id = static_cast<AgentId>(2 * f + which);
      a.family_id = fam.id;
      a.gender = which == 0 ? Gender::Male : Gender::Female;
      a.age = static_cast<int>(std::lround(
          rng.truncated_normal(profile.age_mean, profile.age_sd, 18, 120)));
      a.years_schooling = static_cast<int>(std::lround(rng.truncated_normal(
          profile.schooling_mean, profile.schooling_sd, 0, 17)));
      a.raw_income =
          rng.truncated_normal(profile.income_mean, profile.income_sd, 0, inf);
      a.is_black = rng.bernoulli(which == 0 ? profile.pct_male_black
                                            : profile.pct_female_black);
      a.employed = rng.bernoulli(params.pct_employed);
      a.has_gun = rng.bernoulli(params.pct_gun);
      a.is_addicted = rng.bernoulli(params.pct_addicted);
      world.agents.push_back(a);
    }

    fam.num_children = std::min(rng.poisson(profile.avg_children), 30);
    switch (rng.uniform_int(3)) {
      case 0: fam.victim_group = VictimGroup::NeverDenounces; break;
      case 1: fam.victim_group = VictimGroup::DenouncesAfterFirst; break;
      default: fam.victim_group = VictimGroup::DenouncesAfterThird; break;
    }
    const PersonAgent& male = world.agents[fam.male_id];
    const PersonAgent& female = world.agents[fam.female_id];
    fam.raw_household_income = male.raw_income + female.raw_income;
    fam.raw_income_pc = fam.raw_household_income / (2.0 + fam.num_children);
    world.families.push_back(std::move(fam));
  }

  // Freeze normalization bounds over the whole sample, then normalize.
  auto bounds_of = [](auto&& values) {
    MinMaxBounds b{values.front(), values.front()};
    for (double v : values) {
      b.min = std::min(b.min, v);
      b.max = std::max(b.max, v);
    }
    return b;
  };
  std::vector<double> individual, household, per_capita;
  individual.reserve(world.agents.size());
  household.reserve(world.families.size());
  per_capita.reserve(world.families.size());
  for (const auto& a : world.agents) individual.push_back(a.raw_income);
  for (const auto& f : world.families) {
    household.push_back(f.raw_household_income);
    per_capita.push_back(f.raw_income_pc);
  }
  world.income_bounds.individual = bounds_of(individual);
  world.income_bounds.household = bounds_of(household);
  world.income_bounds.per_capita = bounds_of(per_capita);

  for (auto& a : world.agents) {
    a.income_norm = normalize(a.raw_income, world.income_bounds.individual);
  }
  for (auto& f : world.families) {
    f.household_income_norm =
        normalize(f.raw_household_income, world.income_bounds.household);
    f.income_pc_norm =
        normalize(f.raw_income_pc, world.income_bounds.per_capita);
  }

  // Initial stress, before any events; the addiction component is a
  // per-step draw, so it contributes 0 here.
  for (auto& f : world.families) {
    for (AgentId id : {f.male_id, f.female_id}) {
      PersonAgent& a = world.agents[id];
      a.base_stress = compute_stress(a, f, params, 0.0).total;
      a.current_stress = a.base_stress;
    }
  }
  return world;
}

AreaProfile synthetic_profile() {
  AreaProfile p;
  p.area_id = "synthetic-1";
  p.region_id = "synthetic";
  p.name = "Synthetic Area 1";
  p.num_families_sample = 500;
  p.pct_female_black = 0.5;
  p.pct_male_black = 0.5;
  p.age_mean = 38;
  p.age_sd = 12;
  p.schooling_mean = 9;
  p.schooling_sd = 3;
  p.income_mean = 2200;
  p.income_sd = 600;
  p.avg_children = 1.0;
  p.geometry_wkt =
      "POLYGON ((-48.00 -16.00, -47.90 -16.00, -47.90 -15.90, "
      "-48.00 -15.90, -48.00 -16.00))";
  validate(p);
  return p;
}

std::vector<AreaProfile> generate_fixture(int areas, int families_per_area,
                                          std::uint64_t seed,
                                          bool with_geometry) {
  if (areas < 1) {
    throw ValidationError("areas", "expected >= 1, got " +
                                       std::to_string(areas));
  }
  if (families_per_area < 1) {
    throw ValidationError("families_per_area",
                          "expected >= 1, got " +
                              std::to_string(families_per_area));
  }
  RandomStream rng(mix_seed(seed, 0x66697874));
  std::vector<AreaProfile> out;
  out.reserve(areas);
  for (int i = 0; i < areas; ++i) {
    AreaProfile p;
    char buf[64];
    std::snprintf(buf, sizeof buf, "A%03d", i + 1);
    p.area_id = buf;
    std::snprintf(buf, sizeof buf, "R%d", i % 2 + 1);
    p.region_id = buf;
    std::snprintf(buf, sizeof buf, "Synthetic Area %d", i + 1);
    p.name = buf;
    p.num_families_sample = families_per_area;
    p.pct_female_black = rng.uniform_range(0.3, 0.7);
    p.pct_male_black = rng.uniform_range(0.3, 0.7);
    p.age_mean = rng.uniform_range(32, 48);
    p.age_sd = rng.uniform_range(8, 15);
    p.schooling_mean = rng.uniform_range(7, 12);
    p.schooling_sd = rng.uniform_range(2, 4);
    p.income_mean = rng.uniform_range(1500, 4000);
    p.income_sd = rng.uniform_range(300, 900);
    p.avg_children = rng.uniform_range(0.5, 1.5);
    if (with_geometry) {
      int col = i % 4;
      int rowi = i / 4;
      double x0 = -48.2 + 0.1 * col;
      double y0 = -16.1 + 0.1 * rowi;
      std::snprintf(buf, sizeof buf, "%.4f", x0);
      std::string sx0 = buf;
      std::snprintf(buf, sizeof buf, "%.4f", x0 + 0.1);
      std::string sx1 = buf;
      std::snprintf(buf, sizeof buf, "%.4f", y0);
      std::string sy0 = buf;
      std::snprintf(buf, sizeof buf, "%.4f", y0 + 0.1);
      std::string sy1 = buf;
      p.geometry_wkt = "POLYGON ((" + sx0 + " " + sy0 + ", " + sx1 + " " +
                       sy0 + ", " + sx1 + " " + sy1 + ", " + sx0 + " " + sy1 +
                       ", " + sx0 + " " + sy0 + "))";
    }
    validate(p);
    out.push_back(std::move(p));
  }
  return out;
}

} // namespace vida
