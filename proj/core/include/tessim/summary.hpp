#pragma once

#include <string>
#include <utility>
#include <vector>

namespace tessim {

/// A rectangular time series: one named column per signal, first column is
/// time in seconds. Values render through the shortest round-trip decimal
/// form, so emit -> parse -> emit is byte-identical.
struct SeriesTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;  // row-major, one inner vector per sample

  std::size_t column_index(const std::string& name) const;  // throws InvalidInput
  bool has_column(const std::string& name) const;

  std::string to_csv() const;
  static SeriesTable from_csv(const std::string& text);
};

/// Scalar statistics of one temperature column.
struct ColumnSummary {
  bool steady_reached = false;
  double steady_K = 0.0;           // mean over the trailing settled window
  double time_to_steady_s = 0.0;   // start of that window
  double time_above_threshold_s = 0.0;   // linear interpolation at crossings
  double area_above_ambient_K_min = 0.0;  // trapezoidal, negative excursions clamped
};

/// Computes the column statistics used in reports. A column is settled once
/// the sample-to-sample rate stays below `steady_rate_K_per_min` for a
/// trailing window of at least `window_s`; the steady value is the mean over
/// that window. Everything derives from the sampled values only, so the same
/// numbers can be recomputed from the emitted CSV.
ColumnSummary summarize_column(const SeriesTable& series, const std::string& column,
                               const std::string& ambient_column, double threshold_K,
                               double steady_rate_K_per_min = 0.01, double window_s = 1800.0);

/// Scalar results of a run, rendered as flat `key = value` text.
struct Summary {
  double duration_s = 0.0;
  double output_interval_s = 0.0;
  double threshold_K = 0.0;

  std::vector<std::pair<std::string, ColumnSummary>> temperatures;  // column -> stats

  double source_heat_J = 0.0;    // dissipation + heater + storage, integrated
  double boundary_heat_J = 0.0;  // net heat passed to the environment
  double residual_J = 0.0;       // | sum C dT - (source - boundary) |
  double total_exchanged_J = 0.0;

  double heater_energy_spent_J = 0.0;
  double heater_budget_J = 0.0;

  bool tess_present = false;
  double tess_capacity_Wh = 0.0;       // at the start of the run
  double tess_heat_released_J = 0.0;
  double tess_final_hydration = 0.0;
  double tess_final_water_g = 0.0;

  std::string to_text() const;
};

}  // namespace tessim
