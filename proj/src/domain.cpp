// SPDX-License-Identifier: Apache-2.0
#include "vida/domain.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <string>

#include "vida/errors.hpp"

namespace vida {

namespace {

void check_range(std::string_view field, double v, double lo, double hi) {
  if (!(v >= lo && v <= hi) || std::isnan(v)) {
    throw ValidationError(std::string(field),
                          "value " + std::to_string(v) + " outside [" +
                              std::to_string(lo) + ", " + std::to_string(hi) +
                              "]");
  }
}

void check_nonneg(std::string_view field, double v) {
  if (!(v >= 0.0) || !std::isfinite(v)) {
    throw ValidationError(std::string(field), "must be finite and >= 0");
  }
}

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

} // namespace

void finalize_rates(RunMetrics& m) {
  if (m.women_count <= 0) {
    throw ValidationError("women_count", "must be >= 1 to compute rates");
  }
  m.cases_per_100k =
      static_cast<double>(m.attacks) * 100000.0 / m.women_count;
  m.denounces_per_100k =
      static_cast<double>(m.denounces) * 100000.0 / m.women_count;
}

void validate(const PersonAgent& a) {
  if (a.age < 18 || a.age > 130) {
    throw ValidationError("age", "adults only, expected [18, 130], got " +
                                     std::to_string(a.age));
  }
  if (a.years_schooling < 0 || a.years_schooling > 17) {
    throw ValidationError("years_schooling", "expected [0, 17], got " +
                                                 std::to_string(a.years_schooling));
  }
  check_nonneg("raw_income", a.raw_income);
  check_range("income_norm", a.income_norm, 0.0, 1.0);
  if (!std::isfinite(a.base_stress) || !std::isfinite(a.current_stress)) {
    throw ValidationError("current_stress", "stress must be finite");
  }
}

void validate(const Family& f) {
  if (f.num_children < 0 || f.num_children > 30) {
    throw ValidationError("num_children", "expected [0, 30], got " +
                                              std::to_string(f.num_children));
  }
  check_nonneg("raw_household_income", f.raw_household_income);
  check_nonneg("raw_income_pc", f.raw_income_pc);
  check_range("household_income_norm", f.household_income_norm, 0.0, 1.0);
  check_range("income_pc_norm", f.income_pc_norm, 0.0, 1.0);
  if (f.violence_history < 0) {
    throw ValidationError("violence_history", "must be >= 0");
  }
  if (f.denounce_count < 0) {
    throw ValidationError("denounce_count", "must be >= 0");
  }
  if (f.denounce_count > f.violence_history) {
    throw ValidationError("denounce_count",
                          "cannot exceed violence_history; a denounce "
                          "follows an attack");
  }
  if (f.denounce_count > 0 && f.victim_group == VictimGroup::NeverDenounces) {
    throw ValidationError("victim_group",
                          "NeverDenounces family has denounces recorded");
  }
  if (f.denounce_count > 0 &&
      f.victim_group == VictimGroup::DenouncesAfterThird &&
      f.violence_history < 3) {
    throw ValidationError("denounce_count",
                          "DenouncesAfterThird requires history >= 3 before "
                          "the first denounce");
  }
  if (f.protection_granted && f.denounce_count < 1) {
    throw ValidationError("protection_granted",
                          "protection requires at least one denounce");
  }
  if (f.conviction && !f.protection_granted) {
    throw ValidationError("conviction",
                          "conviction requires a granted protective measure");
  }
}

void validate(const AreaProfile& p) {
  if (p.area_id.empty()) {
    throw ValidationError("area_id", "must not be empty");
  }
  if (p.num_families_sample < 1) {
    throw ValidationError("num_families_sample", "expected >= 1, got " +
                                                     std::to_string(p.num_families_sample));
  }
  check_range("pct_female_black", p.pct_female_black, 0.0, 1.0);
  check_range("pct_male_black", p.pct_male_black, 0.0, 1.0);
  check_range("age_mean", p.age_mean, 18.0, 120.0);
  check_nonneg("age_sd", p.age_sd);
  check_range("schooling_mean", p.schooling_mean, 0.0, 17.0);
  check_nonneg("schooling_sd", p.schooling_sd);
  check_nonneg("income_mean", p.income_mean);
  check_nonneg("income_sd", p.income_sd);
  check_range("avg_children", p.avg_children, 0.0, 30.0);
}

void validate(const RunMetrics& m) {
  if (m.women_count < 1) {
    throw ValidationError("women_count", "must be >= 1");
  }
  if (m.attacks < 0 || m.denounces < 0 || m.protections < 0 ||
      m.convictions < 0) {
    throw ValidationError("attacks", "counters must be >= 0");
  }
  if (m.denounces > m.attacks) {
    throw ValidationError("denounces", "cannot exceed attacks");
  }
  if (m.protections > m.denounces) {
    throw ValidationError("protections", "cannot exceed denounces");
  }
  if (m.convictions > m.protections) {
    throw ValidationError("convictions", "cannot exceed protections");
  }
  check_nonneg("cases_per_100k", m.cases_per_100k);
  check_nonneg("denounces_per_100k", m.denounces_per_100k);
}

void validate(const SimParams& p) {
  for (const auto& f : param_fields()) {
    if (f.kind == ParamKind::Bool || f.kind == ParamKind::UInt64) continue;
    double v = f.kind == ParamKind::Double
                   ? p.*std::get<double SimParams::*>(f.ptr)
                   : static_cast<double>(p.*std::get<int SimParams::*>(f.ptr));
    if (std::isnan(v) || v < f.lo || v > f.hi ||
        (f.exclusive_lo && v <= f.lo)) {
      throw ValidationError(std::string(f.name),
                            "value " + fmt_double(v) + " outside " +
                                (f.exclusive_lo ? "(" : "[") +
                                fmt_double(f.lo) + ", " + fmt_double(f.hi) +
                                "]");
    }
  }
}

const std::vector<ParamFieldInfo>& param_fields() {
  static const std::vector<ParamFieldInfo> fields = {
      {"gender_stress_male", ParamKind::Double, 0, 1, false,
       &SimParams::gender_stress_male},
      {"gender_stress_female", ParamKind::Double, 0, 1, false,
       &SimParams::gender_stress_female},
      {"pct_employed", ParamKind::Double, 0, 1, false,
       &SimParams::pct_employed},
      {"pct_gun", ParamKind::Double, 0, 1, false, &SimParams::pct_gun},
      {"pct_addicted", ParamKind::Double, 0, 1, false,
       &SimParams::pct_addicted},
      {"weight_high", ParamKind::Double, 0, 1e9, true,
       &SimParams::weight_high},
      {"weight_medium", ParamKind::Double, 0, 1e9, true,
       &SimParams::weight_medium},
      {"divisor_constant", ParamKind::Double, 0, 1e9, true,
       &SimParams::divisor_constant},
      {"model_scale", ParamKind::Double, 0, 1e12, true,
       &SimParams::model_scale},
      {"home_term_no_work", ParamKind::Double, 0, 1e9, false,
       &SimParams::home_term_no_work},
      {"home_term_work", ParamKind::Double, 0, 1e9, false,
       &SimParams::home_term_work},
      {"low_schooling_threshold", ParamKind::Int, 0, 17, false,
       &SimParams::low_schooling_threshold},
      {"low_schooling_uplift", ParamKind::Double, 0, 1e9, false,
       &SimParams::low_schooling_uplift},
      {"race_uplift", ParamKind::Double, 0, 1e9, false,
       &SimParams::race_uplift},
      {"chance_protection", ParamKind::Double, 0, 1, false,
       &SimParams::chance_protection},
      {"chance_conviction", ParamKind::Double, 0, 1, false,
       &SimParams::chance_conviction},
      {"denounce_access_distancing", ParamKind::Double, 0, 1, false,
       &SimParams::denounce_access_distancing},
      {"deterrence_enabled", ParamKind::Bool, 0, 1, false,
       &SimParams::deterrence_enabled},
      {"distancing_enabled", ParamKind::Bool, 0, 1, false,
       &SimParams::distancing_enabled},
      {"employment_volatility", ParamKind::Double, 0, 1, false,
       &SimParams::employment_volatility},
      {"income_volatility", ParamKind::Double, 0, 1, false,
       &SimParams::income_volatility},
      {"steps_per_run", ParamKind::Int, 1, 1e9, false,
       &SimParams::steps_per_run},
      {"replications", ParamKind::Int, 1, 1e9, false,
       &SimParams::replications},
      {"master_seed", ParamKind::UInt64, 0, 0, false,
       &SimParams::master_seed},
  };
  return fields;
}

const ParamFieldInfo& param_field(std::string_view name) {
  for (const auto& f : param_fields()) {
    if (f.name == name) return f;
  }
  std::string valid;
  for (const auto& f : param_fields()) {
    if (!valid.empty()) valid += ", ";
    valid += f.name;
  }
  throw ValidationError("parameter", "unknown parameter '" +
                                         std::string(name) +
                                         "'; valid names: " + valid);
}

namespace {

double parse_double_text(const ParamFieldInfo& f, std::string_view value) {
  std::string s(value);
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') {
    throw ValidationError(std::string(f.name),
                          "cannot parse '" + s + "' as a number");
  }
  return v;
}

bool parse_bool_text(const ParamFieldInfo& f, std::string_view value) {
  if (value == "true" || value == "1" || value == "on" || value == "yes") {
    return true;
  }
  if (value == "false" || value == "0" || value == "off" || value == "no") {
    return false;
  }
  throw ValidationError(std::string(f.name), "cannot parse '" +
                                                 std::string(value) +
                                                 "' as a boolean");
}

void range_check(const ParamFieldInfo& f, double v) {
  if (std::isnan(v) || v < f.lo || v > f.hi || (f.exclusive_lo && v <= f.lo)) {
    throw ValidationError(std::string(f.name),
                          "value " + fmt_double(v) + " outside " +
                              (f.exclusive_lo ? "(" : "[") + fmt_double(f.lo) +
                              ", " + fmt_double(f.hi) + "]");
  }
}

} // namespace

void set_param_text(SimParams& p, std::string_view name,
                    std::string_view value) {
  const ParamFieldInfo& f = param_field(name);
  switch (f.kind) {
    case ParamKind::Double: {
      double v = parse_double_text(f, value);
      range_check(f, v);
      p.*std::get<double SimParams::*>(f.ptr) = v;
      break;
    }
    case ParamKind::Int: {
      double v = parse_double_text(f, value);
      if (v != std::floor(v)) {
        throw ValidationError(std::string(f.name), "expected an integer, got '" +
                                                       std::string(value) + "'");
      }
      range_check(f, v);
      p.*std::get<int SimParams::*>(f.ptr) = static_cast<int>(v);
      break;
    }
    case ParamKind::Bool:
      p.*std::get<bool SimParams::*>(f.ptr) = parse_bool_text(f, value);
      break;
    case ParamKind::UInt64: {
      std::string s(value);
      char* end = nullptr;
      unsigned long long v = std::strtoull(s.c_str(), &end, 10);
      if (end == s.c_str() || *end != '\0' || s.find('-') != std::string::npos) {
        throw ValidationError(std::string(f.name),
                              "cannot parse '" + s + "' as an unsigned seed");
      }
      p.*std::get<std::uint64_t SimParams::*>(f.ptr) = v;
      break;
    }
  }
}

void set_param_double(SimParams& p, std::string_view name, double value) {
  const ParamFieldInfo& f = param_field(name);
  if (f.kind != ParamKind::Double) {
    throw ValidationError(std::string(f.name),
                          "not a numeric parameter; sweeps accept only "
                          "floating point fields");
  }
  range_check(f, value);
  p.*std::get<double SimParams::*>(f.ptr) = value;
}

std::string get_param_text(const SimParams& p, std::string_view name) {
  const ParamFieldInfo& f = param_field(name);
  switch (f.kind) {
    case ParamKind::Double:
      return fmt_double(p.*std::get<double SimParams::*>(f.ptr));
    case ParamKind::Int:
      return std::to_string(p.*std::get<int SimParams::*>(f.ptr));
    case ParamKind::Bool:
      return (p.*std::get<bool SimParams::*>(f.ptr)) ? "true" : "false";
    case ParamKind::UInt64:
      return std::to_string(p.*std::get<std::uint64_t SimParams::*>(f.ptr));
  }
  return {};
}

} // namespace vida
