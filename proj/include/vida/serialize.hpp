// SPDX-License-Identifier: Apache-2.0
#ifndef VIDA_SERIALIZE_HPP
#define VIDA_SERIALIZE_HPP

// JSON round-trips for the domain types. Doubles survive exactly: the
// writer emits the shortest decimal that parses back to the same bits.

#include <json.hpp>

#include "vida/domain.hpp"

namespace vida {

NLOHMANN_JSON_SERIALIZE_ENUM(Gender, {
                                         {Gender::Male, "male"},
                                         {Gender::Female, "female"},
                                     })

NLOHMANN_JSON_SERIALIZE_ENUM(VictimGroup,
                             {
                                 {VictimGroup::NeverDenounces, "never"},
                                 {VictimGroup::DenouncesAfterFirst,
                                  "after_first"},
                                 {VictimGroup::DenouncesAfterThird,
                                  "after_third"},
                             })

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(PersonAgent, id, family_id, gender, age,
                                   years_schooling, is_black, employed,
                                   has_gun, is_addicted, raw_income,
                                   income_norm, base_stress, current_stress)

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(Family, id, area_id, male_id, female_id,
                                   num_children, raw_household_income,
                                   raw_income_pc, household_income_norm,
                                   income_pc_norm, victim_group,
                                   violence_history, denounce_count,
                                   protection_granted, conviction)

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(AreaProfile, area_id, region_id, name,
                                   num_families_sample, pct_female_black,
                                   pct_male_black, age_mean, age_sd,
                                   schooling_mean, schooling_sd, income_mean,
                                   income_sd, avg_children, geometry_wkt)

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(SimParams, gender_stress_male,
                                   gender_stress_female, pct_employed,
                                   pct_gun, pct_addicted, weight_high,
                                   weight_medium, divisor_constant,
                                   model_scale, home_term_no_work,
                                   home_term_work, low_schooling_threshold,
                                   low_schooling_uplift, race_uplift,
                                   chance_protection, chance_conviction,
                                   denounce_access_distancing,
                                   deterrence_enabled, distancing_enabled,
                                   employment_volatility, income_volatility,
                                   steps_per_run, replications, master_seed)

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(RunMetrics, replication_id, area_id,
                                   women_count, attacks, denounces,
                                   protections, convictions, cases_per_100k,
                                   denounces_per_100k)

} // namespace vida

#endif
