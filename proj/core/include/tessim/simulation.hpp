#pragma once

#include <string>

#include "tessim/scenario.hpp"
#include "tessim/summary.hpp"

namespace tessim {

struct RunResult {
  SeriesTable series;
  Summary summary;
};

/// Runs one scenario end to end: thermal network, controller ticks, storage
/// kinetics and environment schedule, sampled into a time series plus the
/// scalar summary.
RunResult run_scenario(const ScenarioConfig& config);

/// Recomputes the scalar summary from a sampled series and the scenario that
/// produced it. run_scenario reports exactly this, so a summary rebuilt from
/// the emitted CSV matches byte for byte.
Summary make_summary(const SeriesTable& series, const ScenarioConfig& config);

struct GeometryComparisonRow {
  std::string shape;
  double steady_core_K = 0.0;
  double steady_inner_K = 0.0;
  double steady_outer_K = 0.0;
  double hold_power_W = 0.0;  // power pinning the core at the reference temperature
};

struct GeometryComparison {
  GeometryComparisonRow first;
  GeometryComparisonRow second;
  double boundary_K = 0.0;
  double dissipation_W = 0.0;
  double reference_K = 0.0;
  bool first_loses_less = false;  // strict comparison of the hold powers

  std::string to_text() const;
};

/// Steady-state comparison of two hull geometries around the same payload.
/// Preconditions: both scenarios use the built-in shell layout, enclose the
/// same cavity volume (relative 1e-6) with the same wall thickness and the
/// same materials; otherwise InvalidComparison. The storage bed and
/// controller are stripped for the comparison: each hull gets `dissipation_W`
/// on its core and settles against `boundary_K`; the loss rate is the power
/// needed to pin the core at `reference_K` instead.
GeometryComparison compare_geometries(const ScenarioConfig& a, const ScenarioConfig& b,
                                      double dissipation_W, double boundary_K,
                                      double reference_K = 293.15);

/// The same payload wrapped in the other hull shape: a sphere scenario gets
/// the equal-volume cube (same wall thickness), and vice versa.
ScenarioConfig equal_volume_counterpart(const ScenarioConfig& config);

}  // namespace tessim
