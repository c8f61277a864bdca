// SPDX-License-Identifier: Apache-2.0
#ifndef VIDA_STRESS_HPP
#define VIDA_STRESS_HPP

#include "vida/domain.hpp"

namespace vida {

// Additive decomposition of one agent's stress indicator. The terms
// already carry their relevance weights; summing them, applying the race
// multiplier and subtracting the deterrence reduction reproduces `total`
// exactly (tests hold this to 1e-9 against an independent recomputation).
struct StressBreakdown {
  double gender_base = 0.0;
  double income_term = 0.0;           // high relevance, decreases with income
  double household_income_term = 0.0; // medium relevance, negative
  double income_pc_term = 0.0;        // medium relevance
  double schooling_term = 0.0;        // high relevance, low-schooling uplift
  double age_term = 0.0;              // high relevance, ages 19..28
  double employment_term = 0.0;       // medium relevance, employed agents
  double home_term = 0.0;             // medium relevance, time spent home
  double firearm_term = 0.0;          // high x high relevance
  double addiction_term = 0.0;        // high relevance, random component
  double history_term = 0.0;          // high relevance, attacks suffered
  bool race_multiplier_applied = false;
  double deterrence_reduction = 0.0;  // males only, subtracted last
  double total = 0.0;
};

// Stress indicator for one agent in its family context. `addiction_draw`
// is the uniform [0,1) deviate consumed this step when the agent is
// addicted; pass 0 for non-addicted agents (no deviate is consumed for
// them). Pure function, no RNG inside.
StressBreakdown compute_stress(const PersonAgent& agent, const Family& family,
                               const SimParams& params, double addiction_draw);

// Absolute stress reduction earned by the family's deterrence record:
// denounces weigh medium, a protective measure and a conviction weigh
// high each. Non-negative, non-decreasing in every count.
double deterrence_reduction(const Family& family, const SimParams& params);

// Map a stress total to an attack probability: total / model_scale,
// clamped to [0, 1].
double attack_probability(double stress_total, const SimParams& params);

} // namespace vida

#endif
