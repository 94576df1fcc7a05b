#include "tessim/budget.hpp"

#include <cmath>

#include "tessim/config.hpp"

namespace tessim {

const BudgetModel& builtin_budget() {
  static const BudgetModel model = [] {
    BudgetModel b;
    b.mass = {
        {"outer_sphere", 178, 1.2, 210},
        {"inner_sphere", 102, 1.2, 120},
        {"connector_ring", 5, 1.1, 6},
        {"battery_holders", 19, 1.1, 200},
        {"tcm_container", 21, 1.1, 23},
        {"microprocessor", 4, 1.1, 5},
        {"sd_card_module", 4, 1.1, 5},
        {"uhf_radio", 7, 1.1, 8},
        {"bma250", 4, 1.1, 4},
        {"tmp36", 2, 1.1, 2},
        {"battery", 25, 1.3, 33},
        {"insulation", 3, 1.1, 3},
        {"tcm_salt", 25, 1.2, 30},
    };
    b.power = {
        {"microprocessor", 1.2, 3.5, 4.2, 0.42},
        {"sd_card", 100, 3.5, 350, 35},
        {"sensor_board", 0.14, 3.5, 0.49, 0},
        {"tmp36", 0.05, 3.5, 0.175, 0},
        {"battery", 0, 0, 355, 53},
    };
    b.listed_total_max_mass_g = 470;
    b.listed_total_heat_mW = 90;
    return b;
  }();
  return model;
}

BudgetReport validate_budget(const BudgetModel& budget) {
  BudgetReport r;
  r.listed_max_mass_total_g = budget.listed_total_max_mass_g;
  r.listed_heat_total_mW = budget.listed_total_heat_mW;
  for (const auto& m : budget.mass) {
    r.computed_max_mass_total_g += m.max_mass_g;
    r.computed_allowance_total_g += m.mass_g * m.deviation;
    // Allow for the tables carrying allowances rounded to whole grams.
    if (m.max_mass_g < m.mass_g * m.deviation - 0.5) r.allowance_violations.push_back(m.name);
  }
  for (const auto& p : budget.power) r.computed_heat_total_mW += p.heat_lost_mW;
  return r;
}

bool BudgetReport::mass_total_consistent(double tol_g) const {
  return std::abs(computed_max_mass_total_g - listed_max_mass_total_g) <= tol_g;
}

bool BudgetReport::heat_total_consistent(double tol_mW) const {
  return std::abs(computed_heat_total_mW - listed_heat_total_mW) <= tol_mW;
}

std::string BudgetReport::to_text() const {
  std::string out;
  out += "mass: stored allowances sum to " + format_double(computed_max_mass_total_g) +
         " g, mass*deviation sums to " + format_double(computed_allowance_total_g) +
         " g, listed total " + format_double(listed_max_mass_total_g) + " g";
  out += mass_total_consistent() ? " (consistent)\n" : " (MISMATCH)\n";
  if (!allowance_violations.empty()) {
    out += "mass rows where the stored allowance is below mass*deviation:";
    for (const auto& n : allowance_violations) out += " " + n;
    out += "\n";
  }
  out += "heat: per-row losses sum to " + format_double(computed_heat_total_mW) +
         " mW, listed total " + format_double(listed_heat_total_mW) + " mW";
  out += heat_total_consistent() ? " (consistent)\n" : " (MISMATCH)\n";
  return out;
}

double default_dissipation_W(const BudgetModel& budget) {
  return budget.listed_total_heat_mW / 1000.0;
}

}  // namespace tessim
