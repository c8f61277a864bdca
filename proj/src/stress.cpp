// SPDX-License-Identifier: Apache-2.0
#include "vida/stress.hpp"

#include <algorithm>

#include "vida/errors.hpp"

namespace vida {

StressBreakdown compute_stress(const PersonAgent& agent, const Family& family,
                               const SimParams& params,
                               double addiction_draw) {
  if (agent.family_id != family.id) {
    throw ValidationError("family_id",
                          "agent does not belong to the given family");
  }
  if (!(addiction_draw >= 0.0 && addiction_draw <= 1.0)) {
    throw ValidationError("addiction_draw", "must be in [0, 1]");
  }
  const double wh = params.weight_high;
  const double wm = params.weight_medium;
  StressBreakdown b;

  b.gender_base = agent.gender == Gender::Male ? params.gender_stress_male
                                               : params.gender_stress_female;

  b.income_term = wh * (1.0 - agent.income_norm);
  b.household_income_term = wm * (-family.household_income_norm);
  b.income_pc_term = wm * (1.0 - family.income_pc_norm);

  double schooling =
      1.0 - agent.years_schooling / params.divisor_constant;
  if (agent.years_schooling < params.low_schooling_threshold) {
    schooling *= 1.0 + params.low_schooling_uplift;
  }
  b.schooling_term = wh * schooling;

  b.age_term = (agent.age > 18 && agent.age < 29) ? wh : 0.0;

  b.employment_term = agent.employed ? wm : 0.0;

  // Time spent at home: full weight when the agent is not going out to
  // work this step, either unemployed or locked down.
  bool home_all_day = !agent.employed || params.distancing_enabled;
  b.home_term =
      wm * (home_all_day ? params.home_term_no_work : params.home_term_work);

  b.firearm_term = agent.has_gun ? wh * wh : 0.0;

  b.addiction_term = agent.is_addicted ? wh * addiction_draw : 0.0;

  b.history_term = wh * (family.violence_history / params.divisor_constant);

  double sum = b.gender_base + b.income_term + b.household_income_term +
               b.income_pc_term + b.schooling_term + b.age_term +
               b.employment_term + b.home_term + b.firearm_term +
               b.addiction_term + b.history_term;

  b.race_multiplier_applied =
      agent.gender == Gender::Female && agent.is_black;
  if (b.race_multiplier_applied) {
    sum *= 1.0 + params.race_uplift;
  }

  // Deterrence relieves the abuser's side only.
  b.deterrence_reduction = agent.gender == Gender::Male
                               ? deterrence_reduction(family, params)
                               : 0.0;

  b.total = sum - b.deterrence_reduction;
  return b;
}

double deterrence_reduction(const Family& family, const SimParams& params) {
  return params.weight_medium * family.denounce_count +
         params.weight_high * (family.protection_granted ? 1.0 : 0.0) +
         params.weight_high * (family.conviction ? 1.0 : 0.0);
}

double attack_probability(double stress_total, const SimParams& params) {
  return std::clamp(stress_total / params.model_scale, 0.0, 1.0);
}

} // namespace vida
