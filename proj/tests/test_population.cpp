// SPDX-License-Identifier: Apache-2.0
#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <doctest.h>

#include "vida/errors.hpp"
#include "vida/population.hpp"
#include "vida/serialize.hpp"

using namespace vida;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& name) {
  static int counter = 0;
  fs::path dir = fs::temp_directory_path() /
                 ("vida_pop_tests_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir / (std::to_string(counter++) + "_" + name);
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

const char* kHeaderLine =
    "area_id,region_id,name,num_families_sample,pct_female_black,"
    "pct_male_black,age_mean,age_sd,schooling_mean,schooling_sd,"
    "income_mean,income_sd,avg_children,geometry";

} // namespace

TEST_CASE("loads a well formed three row file") {
  auto path = temp_file("three.csv");
  write_text(path, std::string("# comment line\n") + kHeaderLine + "\n" +
                       "A1,R1,First,100,0.5,0.5,40,10,9,3,2000,500,1.0,\n"
                       "A2,R1,Second,200,0.4,0.4,38,11,10,2,2500,600,0.8,"
                       "\"POLYGON ((0 0, 1 0, 1 1, 0 1, 0 0))\"\n"
                       "\n"
                       "A3,R2,Third,300,0.6,0.6,42,12,8,3,1800,400,1.2,\n");
  auto profiles = load_area_profiles(path.string());
  REQUIRE(profiles.size() == 3);
  CHECK(profiles[0].area_id == "A1");
  CHECK(profiles[1].geometry_wkt ==
        "POLYGON ((0 0, 1 0, 1 1, 0 1, 0 0))");
  CHECK(profiles[2].num_families_sample == 300);
  CHECK(profiles[2].avg_children == 1.2);
}

TEST_CASE("header-only file yields an empty list") {
  auto path = temp_file("empty.csv");
  write_text(path, std::string(kHeaderLine) + "\n");
  CHECK(load_area_profiles(path.string()).empty());
}

TEST_CASE("loader errors carry row and field context") {
  SUBCASE("missing file") {
    try {
      load_area_profiles("/nonexistent/nowhere.csv");
      FAIL("expected an io error");
    } catch (const IoError& e) {
      CHECK(std::string(e.what()).find("/nonexistent/nowhere.csv") !=
            std::string::npos);
    }
  }
  SUBCASE("out-of-range percentage names row and field") {
    auto path = temp_file("range.csv");
    write_text(path, std::string(kHeaderLine) + "\n" +
                         "A1,R1,First,100,1.4,0.5,40,10,9,3,2000,500,1.0,\n");
    try {
      load_area_profiles(path.string());
      FAIL("expected a validation error");
    } catch (const ValidationError& e) {
      CHECK(e.field() == "pct_female_black");
      CHECK(std::string(e.what()).find("row 2") != std::string::npos);
    }
  }
  SUBCASE("non-numeric cell is a parse error with location") {
    auto path = temp_file("parse.csv");
    write_text(path, std::string(kHeaderLine) + "\n" +
                         "A1,R1,First,100,0.5,0.5,forty,10,9,3,2000,500,1,\n");
    try {
      load_area_profiles(path.string());
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.row() == 2);
      CHECK(std::string(e.what()).find("age_mean") != std::string::npos);
    }
  }
  SUBCASE("wrong header is rejected") {
    auto path = temp_file("badheader.csv");
    write_text(path, "a,b,c\nA1,R1,x\n");
    CHECK_THROWS_AS(load_area_profiles(path.string()), ParseError);
  }
  SUBCASE("duplicate area ids are rejected") {
    auto path = temp_file("dup.csv");
    write_text(path, std::string(kHeaderLine) + "\n" +
                         "A1,R1,First,100,0.5,0.5,40,10,9,3,2000,500,1.0,\n" +
                         "A1,R1,Twin,100,0.5,0.5,40,10,9,3,2000,500,1.0,\n");
    CHECK_THROWS_AS(load_area_profiles(path.string()), ValidationError);
  }
  SUBCASE("wrong column count is rejected") {
    auto path = temp_file("cols.csv");
    write_text(path, std::string(kHeaderLine) + "\n" + "A1,R1,First,100\n");
    CHECK_THROWS_AS(load_area_profiles(path.string()), ParseError);
  }
}

TEST_CASE("profile write/load round trip") {
  auto profiles = generate_fixture(5, 120, 99, true);
  auto path = temp_file("roundtrip.csv");
  write_area_profiles(profiles, path.string());
  auto loaded = load_area_profiles(path.string());
  REQUIRE(loaded.size() == profiles.size());
  for (std::size_t i = 0; i < loaded.size(); ++i) {
    CHECK(nlohmann::json(loaded[i]) == nlohmann::json(profiles[i]));
  }
}

TEST_CASE("sampling honors the count contract") {
  AreaProfile p = synthetic_profile();
  p.num_families_sample = 100;
  SimParams params;
  RandomStream rng(1);
  auto world = sample_population(p, params, rng);
  CHECK(world.families.size() == 100);
  CHECK(world.agents.size() == 200);
  for (const auto& f : world.families) {
    const auto& male = world.agent(f.male_id);
    const auto& female = world.agent(f.female_id);
    CHECK(male.gender == Gender::Male);
    CHECK(female.gender == Gender::Female);
    CHECK(male.family_id == f.id);
    CHECK(female.family_id == f.id);
    CHECK_NOTHROW(validate(male));
    CHECK_NOTHROW(validate(female));
    CHECK_NOTHROW(validate(f));
    CHECK(f.raw_household_income ==
          doctest::Approx(male.raw_income + female.raw_income));
    CHECK(f.raw_income_pc ==
          doctest::Approx(f.raw_household_income / (2.0 + f.num_children)));
  }
}

TEST_CASE("sampling is deterministic for a fixed seed") {
  AreaProfile p = synthetic_profile();
  p.num_families_sample = 50;
  SimParams params;
  RandomStream a(42), b(42);
  auto w1 = sample_population(p, params, a);
  auto w2 = sample_population(p, params, b);
  CHECK(nlohmann::json(w1.agents) == nlohmann::json(w2.agents));
  CHECK(nlohmann::json(w1.families) == nlohmann::json(w2.families));
}

TEST_CASE("constant incomes normalize to 0.5 everywhere") {
  AreaProfile p = synthetic_profile();
  p.num_families_sample = 40;
  p.income_sd = 0;     // every income equals the mean
  p.avg_children = 0;  // constant household size, so per-capita is flat too
  SimParams params;
  RandomStream rng(3);
  auto world = sample_population(p, params, rng);
  for (const auto& a : world.agents) CHECK(a.income_norm == 0.5);
  for (const auto& f : world.families) {
    CHECK(f.household_income_norm == 0.5);
    CHECK(f.income_pc_norm == 0.5);
  }
}

TEST_CASE("normalization reaches 0 and 1 with distinct incomes") {
  AreaProfile p = synthetic_profile();
  p.num_families_sample = 200;
  SimParams params;
  RandomStream rng(8);
  auto world = sample_population(p, params, rng);
  double lo = 2.0, hi = -1.0;
  for (const auto& a : world.agents) {
    lo = std::min(lo, a.income_norm);
    hi = std::max(hi, a.income_norm);
    CHECK(a.income_norm >= 0.0);
    CHECK(a.income_norm <= 1.0);
  }
  CHECK(lo == 0.0);
  CHECK(hi == 1.0);
}

TEST_CASE("sampled moments reproduce the profile within 3 standard errors") {
  AreaProfile p = synthetic_profile();
  p.num_families_sample = 10000;
  p.age_mean = 45;
  p.age_sd = 8; // truncation at 18 is 3.4 sd away: negligible bias
  p.schooling_mean = 8.5;
  p.schooling_sd = 2.5;
  p.income_mean = 2000;
  p.income_sd = 500;
  p.avg_children = 1.2;
  SimParams params;
  RandomStream rng(20260818);
  auto world = sample_population(p, params, rng);

  double age_sum = 0, school_sum = 0, income_sum = 0, children_sum = 0;
  for (const auto& a : world.agents) {
    age_sum += a.age;
    school_sum += a.years_schooling;
    income_sum += a.raw_income;
  }
  for (const auto& f : world.families) children_sum += f.num_children;
  const double n_adults = world.agents.size();
  const double n_families = world.families.size();

  CHECK(std::abs(age_sum / n_adults - p.age_mean) <=
        3 * p.age_sd / std::sqrt(n_adults) + 0.05);
  CHECK(std::abs(school_sum / n_adults - p.schooling_mean) <=
        3 * p.schooling_sd / std::sqrt(n_adults) + 0.05);
  CHECK(std::abs(income_sum / n_adults - p.income_mean) <=
        3 * p.income_sd / std::sqrt(n_adults) + 0.5);
  CHECK(std::abs(children_sum / n_families - p.avg_children) <=
        3 * std::sqrt(p.avg_children / n_families) + 0.01);
}

TEST_CASE("victim groups split into thirds (chi-square at alpha 0.01)") {
  AreaProfile p = synthetic_profile();
  p.num_families_sample = 10000;
  SimParams params;
  RandomStream rng(5150);
  auto world = sample_population(p, params, rng);
  double counts[3] = {0, 0, 0};
  for (const auto& f : world.families) {
    counts[static_cast<int>(f.victim_group)] += 1;
  }
  double expected = 10000.0 / 3.0;
  double chi2 = 0;
  for (double c : counts) {
    chi2 += (c - expected) * (c - expected) / expected;
  }
  CHECK(chi2 < 9.21); // chi-square critical value, df=2, alpha=0.01
}

TEST_CASE("flag prevalences follow the parameters") {
  AreaProfile p = synthetic_profile();
  p.num_families_sample = 10000;
  SimParams params;
  params.pct_employed = 0.8;
  params.pct_gun = 0.1;
  params.pct_addicted = 0.1;
  RandomStream rng(31);
  auto world = sample_population(p, params, rng);
  double employed = 0, guns = 0, addicted = 0, black_f = 0;
  for (const auto& a : world.agents) {
    employed += a.employed;
    guns += a.has_gun;
    addicted += a.is_addicted;
    if (a.gender == Gender::Female) black_f += a.is_black;
  }
  double n = world.agents.size();
  CHECK(employed / n == doctest::Approx(0.8).epsilon(0.02));
  CHECK(guns / n == doctest::Approx(0.1).epsilon(0.1));
  CHECK(addicted / n == doctest::Approx(0.1).epsilon(0.1));
  CHECK(black_f / (n / 2) == doctest::Approx(p.pct_female_black).epsilon(0.05));
}

TEST_CASE("synthetic profile and fixture generator produce valid profiles") {
  CHECK_NOTHROW(validate(synthetic_profile()));

  auto fixture = generate_fixture(8, 60, 7, true);
  REQUIRE(fixture.size() == 8);
  for (const auto& p : fixture) {
    CHECK_NOTHROW(validate(p));
    CHECK(p.num_families_sample == 60);
    CHECK_FALSE(p.geometry_wkt.empty());
  }
  // distinct ids, deterministic given the seed
  CHECK(fixture[0].area_id != fixture[1].area_id);
  auto again = generate_fixture(8, 60, 7, true);
  CHECK(nlohmann::json(again) == nlohmann::json(fixture));
  auto other_seed = generate_fixture(8, 60, 8, true);
  CHECK(nlohmann::json(other_seed) != nlohmann::json(fixture));

  CHECK(generate_fixture(2, 10, 1, false)[0].geometry_wkt.empty());
  CHECK_THROWS_AS(generate_fixture(0, 10, 1, true), ValidationError);
  CHECK_THROWS_AS(generate_fixture(3, 0, 1, true), ValidationError);

  SUBCASE("invalid profile spec is rejected") {
    AreaProfile bad = synthetic_profile();
    bad.age_sd = -1;
    CHECK_THROWS_AS(validate(bad), ValidationError);
  }
}
