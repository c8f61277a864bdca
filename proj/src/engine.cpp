// SPDX-License-Identifier: Apache-2.0
#include "vida/engine.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "vida/errors.hpp"
#include "vida/stress.hpp"

namespace vida {

void step(PopulationSample& world, const SimParams& params, StepStreams rng,
          RunMetrics& metrics) {
  // 1. Stress update, every agent, family order, male first. Addicted
  // agents consume exactly one deviate each; others consume none.
  for (Family& fam : world.families) {
    for (AgentId id : {fam.male_id, fam.female_id}) {
      PersonAgent& a = world.agents[id];
      double draw = a.is_addicted ? rng.stress.uniform01() : 0.0;
      a.current_stress = compute_stress(a, fam, params, draw).total;
    }
  }

  // 2. Violence trigger: one deviate per family, always drawn, so the
  // attack stream stays aligned across parameter variations.
  std::vector<FamilyId> attacked;
  for (Family& fam : world.families) {
    double u = rng.attack.uniform01();
    double p = attack_probability(world.agents[fam.male_id].current_stress,
                                  params);
    if (u < p) {
      fam.violence_history += 1;
      metrics.attacks += 1;
      attacked.push_back(fam.id);
    }
  }

  // 3. Victim reaction for this step's attacks.
  if (params.deterrence_enabled) {
    for (FamilyId id : attacked) {
      deterrence_process(world.families[id], params, rng.deterrence, metrics);
    }
  }

  // 4. Employment/income noise.
  apply_volatility(world, params, rng.volatility);
}

void deterrence_process(Family& family, const SimParams& params,
                        RandomStream& rng, RunMetrics& metrics) {
  bool qualifies =
      (family.victim_group == VictimGroup::DenouncesAfterFirst &&
       family.violence_history >= 1) ||
      (family.victim_group == VictimGroup::DenouncesAfterThird &&
       family.violence_history >= 3);
  if (!qualifies) return;

  // Under distancing the victim is confined with the abuser; reaching the
  // authorities succeeds only with probability denounce_access_distancing.
  if (params.distancing_enabled &&
      !rng.bernoulli(params.denounce_access_distancing)) {
    return;
  }

  family.denounce_count += 1;
  metrics.denounces += 1;

  if (!family.protection_granted) {
    if (rng.bernoulli(params.chance_protection)) {
      family.protection_granted = true;
      metrics.protections += 1;
      if (rng.bernoulli(params.chance_conviction)) {
        family.conviction = true;
        metrics.convictions += 1;
      }
    }
  }
}

void apply_volatility(PopulationSample& world, const SimParams& params,
                      RandomStream& rng) {
  const double ev = params.employment_volatility;
  const double iv = params.income_volatility;
  if (ev <= 0.0 && iv <= 0.0) return;

  for (Family& fam : world.families) {
    for (AgentId id : {fam.male_id, fam.female_id}) {
      PersonAgent& a = world.agents[id];
      if (ev > 0.0 && rng.bernoulli(ev)) a.employed = !a.employed;
      if (iv > 0.0) {
        double eps = rng.uniform_range(-iv, iv);
        a.raw_income *= 1.0 + eps;
      }
    }
  }
  if (iv <= 0.0) return;

  // Renormalize against the bounds frozen at sampling time.
  for (auto& a : world.agents) {
    a.income_norm = normalize(a.raw_income, world.income_bounds.individual);
  }
  for (auto& fam : world.families) {
    fam.raw_household_income = world.agents[fam.male_id].raw_income +
                               world.agents[fam.female_id].raw_income;
    fam.raw_income_pc =
        fam.raw_household_income / (2.0 + fam.num_children);
    fam.household_income_norm =
        normalize(fam.raw_household_income, world.income_bounds.household);
    fam.income_pc_norm =
        normalize(fam.raw_income_pc, world.income_bounds.per_capita);
  }
}

RunMetrics run_replication(const AreaProfile& profile, const SimParams& params,
                           int replication_id) {
  validate(profile);
  validate(params);
  RngPlan plan{params.master_seed};
  ReplicationStreams streams(
      plan.replication_seed(profile.area_id, replication_id));

  PopulationSample world = sample_population(profile, params, streams.sampling);

  RunMetrics metrics;
  metrics.replication_id = replication_id;
  metrics.area_id = profile.area_id;
  metrics.women_count = static_cast<int>(world.families.size());

  StepStreams rng{streams.stress, streams.attack, streams.deterrence,
                  streams.volatility};
  for (int s = 0; s < params.steps_per_run; ++s) {
    step(world, params, rng, metrics);
  }
  finalize_rates(metrics);
  return metrics;
}

int resolve_threads(int requested, std::size_t jobs) {
  int n = requested > 0
              ? requested
              : static_cast<int>(std::thread::hardware_concurrency());
  if (n > 0 && static_cast<std::size_t>(n) > jobs) {
    n = static_cast<int>(jobs);
  }
  if (n < 1) n = 1;
  return n;
}

std::vector<RunMetrics> run_batch(const std::vector<AreaProfile>& profiles,
                                  const SimParams& params, int threads) {
  validate(params);
  if (profiles.empty()) {
    throw ValidationError("profiles", "run_batch needs at least one profile");
  }
  for (const auto& p : profiles) validate(p);

  const std::size_t reps = static_cast<std::size_t>(params.replications);
  const std::size_t jobs = profiles.size() * reps;
  std::vector<RunMetrics> results(jobs);

  // Job i is (profile i / reps, replication i % reps); workers pull the
  // next index from a shared counter and write to their own slot, so the
  // output order matches a sequential loop exactly.
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::string error_context;
  std::mutex error_mutex;

  auto worker = [&]() {
    for (;;) {
      if (failed.load(std::memory_order_relaxed)) return;
      std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= jobs) return;
      const AreaProfile& profile = profiles[i / reps];
      int rep = static_cast<int>(i % reps);
      try {
        results[i] = run_replication(profile, params, rep);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) {
          first_error = std::current_exception();
          error_context = "area '" + profile.area_id + "', replication " +
                          std::to_string(rep);
        }
        failed.store(true, std::memory_order_relaxed);
        return;
      }
    }
  };

  int n_threads = resolve_threads(threads, jobs);
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  if (first_error) {
    try {
      std::rethrow_exception(first_error);
    } catch (const std::exception& e) {
      throw Error("replication failed (" + error_context + "): " + e.what());
    }
  }
  return results;
}

} // namespace vida
