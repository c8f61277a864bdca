// SPDX-License-Identifier: Apache-2.0
#ifndef VIDA_POPULATION_HPP
#define VIDA_POPULATION_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "vida/domain.hpp"
#include "vida/rng.hpp"

namespace vida {

struct MinMaxBounds {
  double min = 0.0;
  double max = 0.0;
};

// Normalization bounds frozen when the population is sampled. Volatility
// renormalizes against these, never against the drifted values.
struct IncomeNormalization {
  MinMaxBounds individual;
  MinMaxBounds household;
  MinMaxBounds per_capita;
};

// min-max normalize v into [0, 1], clamped; a degenerate bound (max equal
// to min) maps everything to 0.5.
double normalize(double v, const MinMaxBounds& b);

// One sampled world: families plus their two adults each. Agent ids are
// indices into `agents`; family f owns agents 2f (male) and 2f+1 (female).
struct PopulationSample {
  std::string area_id;
  std::vector<PersonAgent> agents;
  std::vector<Family> families;
  IncomeNormalization income_bounds;

  PersonAgent& agent(AgentId id) { return agents[id]; }
  const PersonAgent& agent(AgentId id) const { return agents[id]; }
};

// Load area profiles from a CSV file (see data/ for the format: header
// with the AreaProfile field names, optional quoted WKT geometry last,
// `#` lines are comments). Throws IoError / ParseError / ValidationError
// with row and field context.
std::vector<AreaProfile> load_area_profiles(const std::string& path);

// Write profiles in the same format load_area_profiles reads.
void write_area_profiles(const std::vector<AreaProfile>& profiles,
                         const std::string& path);

// Draw a full population from the profile's aggregate statistics. Ages,
// schooling and incomes come from truncated normals, children counts from
// a Poisson, flags from Bernoullis, victim groups uniformly. The draw
// count per family is fixed, so equal seeds give equal samples even when
// parameters change flag probabilities.
PopulationSample sample_population(const AreaProfile& profile,
                                   const SimParams& params,
                                   RandomStream& rng);

// A mid-range single-area profile for tests and demos.
AreaProfile synthetic_profile();

// Deterministically generate `areas` synthetic profiles with plausible,
// varied statistics; tiles a small polygon grid when with_geometry.
std::vector<AreaProfile> generate_fixture(int areas, int families_per_area,
                                          std::uint64_t seed,
                                          bool with_geometry);

} // namespace vida

#endif
