#include "doctest.h"

#include <algorithm>

#include "tessim/budget.hpp"

using namespace tessim;

TEST_SUITE("budget") {

TEST_CASE("builtin tables carry the as-designed rows verbatim") {
  const auto& b = builtin_budget();
  CHECK(b.mass.size() == 13);
  CHECK(b.power.size() == 5);
  CHECK(b.listed_total_max_mass_g == 470.0);
  CHECK(b.listed_total_heat_mW == 90.0);

  auto holders = std::find_if(b.mass.begin(), b.mass.end(),
                              [](const MassEntry& m) { return m.name == "battery_holders"; });
  REQUIRE(holders != b.mass.end());
  // The stored allowance is way out of line with mass * deviation; it is
  // kept verbatim and surfaced through the report, never silently fixed.
  CHECK(holders->mass_g == 19.0);
  CHECK(holders->deviation == 1.1);
  CHECK(holders->max_mass_g == 200.0);
}

TEST_CASE("report recomputes totals next to the listed ones") {
  auto r = validate_budget(builtin_budget());
  // Stored allowances include the 200 g battery-holder row, so the sum
  // lands far above the listed 470 g design total.
  CHECK(r.computed_max_mass_total_g == doctest::Approx(649.0).epsilon(1e-12));
  CHECK(r.listed_max_mass_total_g == 470.0);
  CHECK_FALSE(r.mass_total_consistent());

  // Per-row heat losses: 0.42 + 35 + 53 = 88.42 mW against the listed 90.
  CHECK(r.computed_heat_total_mW == doctest::Approx(88.42).epsilon(1e-12));
  CHECK(r.listed_heat_total_mW == 90.0);
  CHECK_FALSE(r.heat_total_consistent());
  CHECK(r.heat_total_consistent(2.0));  // the gap is small, not catastrophic

  // Rows whose stored allowance undercuts mass * deviation (allowing for
  // whole-gram rounding): the two shells.
  REQUIRE(r.allowance_violations.size() == 2);
  CHECK(std::find(r.allowance_violations.begin(), r.allowance_violations.end(),
                  "outer_sphere") != r.allowance_violations.end());
  CHECK(std::find(r.allowance_violations.begin(), r.allowance_violations.end(),
                  "inner_sphere") != r.allowance_violations.end());

  auto text = r.to_text();
  CHECK(text.find("MISMATCH") != std::string::npos);
  CHECK(text.find("outer_sphere") != std::string::npos);
}

TEST_CASE("a consistent budget reports cleanly") {
  BudgetModel b;
  b.mass = {{"box", 100.0, 1.1, 110.0}};
  b.power = {{"chip", 1.0, 3.3, 3.3, 1.5}};
  b.listed_total_max_mass_g = 110.0;
  b.listed_total_heat_mW = 1.5;
  auto r = validate_budget(b);
  CHECK(r.mass_total_consistent());
  CHECK(r.heat_total_consistent());
  CHECK(r.allowance_violations.empty());
  CHECK(r.to_text().find("MISMATCH") == std::string::npos);
}

TEST_CASE("steady dissipation comes from the listed heat total") {
  CHECK(default_dissipation_W(builtin_budget()) == doctest::Approx(0.09).epsilon(1e-12));
  BudgetModel b;
  b.listed_total_heat_mW = 123.0;
  CHECK(default_dissipation_W(b) == doctest::Approx(0.123).epsilon(1e-12));
}

}  // TEST_SUITE
