#pragma once

#include <string>
#include <vector>

#include "tessim/simulation.hpp"

namespace tessim {

struct ComparisonCase {
  std::string label;
  ScenarioConfig config;
};

/// One line of the case-vs-sensor comparison table.
struct ComparisonRow {
  std::string case_label;
  std::string sensor;
  bool ok = false;
  std::string error;

  bool steady_reached = false;
  double steady_C = 0.0;
  double time_to_steady_min = 0.0;
  double time_above_threshold_min = 0.0;
};

struct ComparisonReport {
  std::vector<ComparisonRow> rows;  // cases in input order, sensors within

  bool all_ok() const;
  std::string to_csv() const;
  std::string to_text() const;
};

/// Runs every case and tabulates one row per (case, sensor reading). A case
/// that fails keeps its error message in the table and does not stop the
/// others. Cases run concurrently when `parallel`; results are assembled in
/// input order either way.
ComparisonReport run_comparison(const std::vector<ComparisonCase>& cases, bool parallel = true);

struct SweepPoint {
  double value = 0.0;
  bool ok = false;
  std::string error;
  Summary summary;
};

/// Re-runs `base` once per value of the overridden key. The key is validated
/// against the canonical document for every value before anything runs.
/// Points run concurrently when `parallel`; the returned order always
/// follows `values`, and results are identical to a serial sweep.
std::vector<SweepPoint> run_sweep(const ScenarioConfig& base, const std::string& key,
                                  const std::vector<double>& values, bool parallel = true);

/// Scalar results per sweep point as CSV: statistics of the scenario's
/// control-sensor column plus the energy audit.
std::string sweep_csv(const std::string& key, const ScenarioConfig& base,
                      const std::vector<SweepPoint>& points);

}  // namespace tessim
