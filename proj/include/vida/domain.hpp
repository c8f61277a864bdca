// SPDX-License-Identifier: Apache-2.0
#ifndef VIDA_DOMAIN_HPP
#define VIDA_DOMAIN_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace vida {

enum class Gender : std::uint8_t { Male, Female };

// How a victim responds to repeated violence. Sampled uniformly across
// the three groups when the population is built.
enum class VictimGroup : std::uint8_t {
  NeverDenounces,
  DenouncesAfterFirst,
  DenouncesAfterThird,
};

using AgentId = std::uint32_t;
using FamilyId = std::uint32_t;

// One adult. Children are counted on the family and never act.
struct PersonAgent {
  AgentId id = 0;
  FamilyId family_id = 0;
  Gender gender = Gender::Male;
  int age = 0;              // >= 18
  int years_schooling = 0;  // [0, 17]
  bool is_black = false;
  bool employed = false;
  bool has_gun = false;
  bool is_addicted = false;
  double raw_income = 0.0;  // currency units, >= 0
  double income_norm = 0.0; // min-max normalized within the sample, [0, 1]
  double base_stress = 0.0; // stress at sampling time, before any events
  double current_stress = 0.0;
};

/// A household: one male, one female, zero or more inert children.
struct Family {
  FamilyId id = 0;
  std::string area_id;
  AgentId male_id = 0;
  AgentId female_id = 0;
  int num_children = 0;
  double raw_household_income = 0.0;
  double raw_income_pc = 0.0; // household income / (2 + num_children)
  double household_income_norm = 0.0;
  double income_pc_norm = 0.0;
  VictimGroup victim_group = VictimGroup::NeverDenounces;
  int violence_history = 0; // attacks suffered so far
  int denounce_count = 0;
  bool protection_granted = false; // absorbing
  bool conviction = false;         // absorbing, implies protection
};

// Aggregate statistics describing one geographic area. Populations are
// sampled from these moments, never from microdata.
struct AreaProfile {
  std::string area_id;
  std::string region_id;
  std::string name;
  int num_families_sample = 0;
  double pct_female_black = 0.0;
  double pct_male_black = 0.0;
  double age_mean = 0.0;
  double age_sd = 0.0;
  double schooling_mean = 0.0;
  double schooling_sd = 0.0;
  double income_mean = 0.0;
  double income_sd = 0.0;
  double avg_children = 0.0;
  std::string geometry_wkt; // optional WKT POLYGON, empty when absent
};

// Everything tunable about a run. Field names double as config keys,
// sweep parameter names and C API keys; see param_fields().
struct SimParams {
  double gender_stress_male = 0.8;
  double gender_stress_female = 0.2;
  double pct_employed = 0.8;
  double pct_gun = 0.1;
  double pct_addicted = 0.1;
  double weight_high = 10.0;
  double weight_medium = 5.0;
  double divisor_constant = 10.0;
  double model_scale = 1000.0;
  double home_term_no_work = 0.67;
  double home_term_work = 0.34;
  int low_schooling_threshold = 6;
  double low_schooling_uplift = 0.60;
  double race_uplift = 0.30;
  double chance_protection = 0.5;
  double chance_conviction = 0.5;
  double denounce_access_distancing = 0.65;
  bool deterrence_enabled = true;
  bool distancing_enabled = false;
  double employment_volatility = 0.05;
  double income_volatility = 0.05;
  int steps_per_run = 10;
  int replications = 200;
  std::uint64_t master_seed = 1;
};

// Outcome counters for one replication of one area.
struct RunMetrics {
  int replication_id = 0;
  std::string area_id;
  int women_count = 0;
  std::int64_t attacks = 0;
  std::int64_t denounces = 0;
  std::int64_t protections = 0;
  std::int64_t convictions = 0;
  double cases_per_100k = 0.0;
  double denounces_per_100k = 0.0;
};

// Compute the per-100k rates from the raw counters.
void finalize_rates(RunMetrics& m);

// Validation. Each check throws ValidationError naming the field.
void validate(const PersonAgent& a);
void validate(const Family& f);
void validate(const AreaProfile& p);
void validate(const RunMetrics& m);
void validate(const SimParams& p);

// ---- parameter registry -------------------------------------------------

enum class ParamKind : std::uint8_t { Double, Int, Bool, UInt64 };

struct ParamFieldInfo {
  std::string_view name;
  ParamKind kind;
  double lo = 0.0; // numeric bounds, inclusive unless exclusive_lo
  double hi = 0.0;
  bool exclusive_lo = false;
  std::variant<double SimParams::*, int SimParams::*, bool SimParams::*,
               std::uint64_t SimParams::*>
      ptr{};
};

// Every SimParams field, in declaration order.
const std::vector<ParamFieldInfo>& param_fields();

// Lookup by name; throws ValidationError("parameter", ...) listing the
// valid names when `name` is unknown.
const ParamFieldInfo& param_field(std::string_view name);

// Set a field from text ("0.4", "true", "20260818"); parses according to
// the field kind and range-checks the result.
void set_param_text(SimParams& p, std::string_view name,
                    std::string_view value);

// Set a numeric field. Only Double fields accept this (sweeps use it).
void set_param_double(SimParams& p, std::string_view name, double value);

// Current value rendered as text, inverse of set_param_text.
std::string get_param_text(const SimParams& p, std::string_view name);

} // namespace vida

#endif
