// SPDX-License-Identifier: Apache-2.0
#ifndef VIDA_ENGINE_HPP
#define VIDA_ENGINE_HPP

#include <cstdint>
#include <string_view>
#include <vector>

#include "vida/domain.hpp"
#include "vida/population.hpp"
#include "vida/rng.hpp"

namespace vida {

// Seed-splitting rule for the replication harness. A child seed is a pure
// function of (master_seed, area, replication index), so any worker can
// start any replication without coordination and results never depend on
// scheduling.
struct RngPlan {
  std::uint64_t master_seed = 0;

  std::uint64_t replication_seed(std::string_view area_id,
                                 int replication_id) const {
    return mix_seed(master_seed ^ fnv1a64(area_id),
                    static_cast<std::uint64_t>(replication_id));
  }
};

// One generator per stochastic subsystem of a replication. Keeping the
// subsystems on separate streams means changing, say, the deterrence flag
// cannot shift which deviates feed the attack draws; paired-seed cells
// stay comparable.
struct ReplicationStreams {
  RandomStream sampling;
  RandomStream stress;
  RandomStream attack;
  RandomStream deterrence;
  RandomStream volatility;

  explicit ReplicationStreams(std::uint64_t child_seed)
      : sampling(mix_seed(child_seed, 1)),
        stress(mix_seed(child_seed, 2)),
        attack(mix_seed(child_seed, 3)),
        deterrence(mix_seed(child_seed, 4)),
        volatility(mix_seed(child_seed, 5)) {}
};

// The streams step() consumes. References so tests can substitute
// scripted sequences per subsystem.
struct StepStreams {
  RandomStream& stress;
  RandomStream& attack;
  RandomStream& deterrence;
  RandomStream& volatility;
};

// Advance the world one step, in order: recompute every agent's stress,
// draw the violence trigger per family, run the deterrence process for
// families attacked this step (when enabled), then apply employment and
// income volatility.
void step(PopulationSample& world, const SimParams& params, StepStreams rng,
          RunMetrics& metrics);

// Victim reaction to an attack that happened this step. At most one
// denounce per attack event; protection and conviction are absorbing and
// the conviction chance is evaluated only on the call that grants
// protection.
void deterrence_process(Family& family, const SimParams& params,
                        RandomStream& rng, RunMetrics& metrics);

// Neutral per-step employment/income noise. Incomes are renormalized
// against the bounds frozen at sampling time and clamped.
void apply_volatility(PopulationSample& world, const SimParams& params,
                      RandomStream& rng);

// One full replication: derive the child seed, sample a fresh population,
// run steps_per_run steps, finalize rates.
RunMetrics run_replication(const AreaProfile& profile, const SimParams& params,
                           int replication_id);

// replications x |profiles| independent replications across `threads`
// workers (0 = machine parallelism). Results are ordered
// [profile 0 reps 0..R-1, profile 1 reps 0..R-1, ...] regardless of
// thread count.
std::vector<RunMetrics> run_batch(const std::vector<AreaProfile>& profiles,
                                  const SimParams& params, int threads = 0);

// Worker count actually used for a request (0 = hardware concurrency),
// never more than `jobs`, never less than 1.
int resolve_threads(int requested, std::size_t jobs);

} // namespace vida

#endif
