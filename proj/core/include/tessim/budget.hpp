#pragma once

#include <string>
#include <vector>

namespace tessim {

/// One line of the mass budget. `max_mass_g` is the designer's stored
/// allowance, kept verbatim; it is not recomputed from the deviation factor.
struct MassEntry {
  std::string name;
  double mass_g = 0.0;
  double deviation = 1.0;   // growth allowance factor, >= 1
  double max_mass_g = 0.0;  // stored allowance

  bool operator==(const MassEntry&) const = default;
};

/// One line of the electrical budget. Heat lost is the fraction of the drawn
/// power that ends up as heat inside the probe.
struct PowerEntry {
  std::string name;
  double current_mA = 0.0;
  double voltage_V = 0.0;
  double power_mW = 0.0;
  double heat_lost_mW = 0.0;

  bool operator==(const PowerEntry&) const = default;
};

struct BudgetModel {
  std::vector<MassEntry> mass;
  std::vector<PowerEntry> power;
  double listed_total_max_mass_g = 0.0;  // total as designed, stored verbatim
  double listed_total_heat_mW = 0.0;

  bool operator==(const BudgetModel&) const = default;
};

/// The probe's as-designed budget tables.
const BudgetModel& builtin_budget();

/// Discrepancies surfaced by validate_budget. The stored tables are reported
/// as-is; recomputed totals sit next to the listed ones so disagreements are
/// visible instead of silently "fixed".
struct BudgetReport {
  double computed_max_mass_total_g = 0.0;    // sum of stored allowances
  double computed_allowance_total_g = 0.0;   // sum of mass * deviation
  double listed_max_mass_total_g = 0.0;
  double computed_heat_total_mW = 0.0;
  double listed_heat_total_mW = 0.0;
  std::vector<std::string> allowance_violations;  // rows with max < mass * deviation

  bool mass_total_consistent(double tol_g = 0.5) const;
  bool heat_total_consistent(double tol_mW = 0.05) const;
  std::string to_text() const;
};

BudgetReport validate_budget(const BudgetModel& budget);

/// Steady electronics dissipation implied by the budget, W (the listed heat
/// total, which is what the probe sheds in normal operation).
double default_dissipation_W(const BudgetModel& budget);

}  // namespace tessim
