#pragma once

#include <string>
#include <utility>
#include <vector>

namespace tessim {

enum class ProfileKind { Constant, SquareWave, Sinusoid, Table };

std::string to_string(ProfileKind kind);
ProfileKind profile_kind_from_string(const std::string& name);  // throws InvalidInput

/// Prescribed ambient (boundary) temperature as a function of time.
///
/// constant     T(t) = constant_K
/// square_wave  day_K during the first half of each period, night_K after
/// sinusoid     mean + half-swing * cos(2*pi*(t - phase)/period); t = phase
///              is the warmest instant
/// table        piecewise-linear through (time, temperature) samples,
///              clamped to the first/last sample outside the range
struct EnvironmentProfile {
  ProfileKind kind = ProfileKind::Constant;

  double constant_K = 241.0;

  double day_K = 0.0;
  double night_K = 0.0;
  double period_s = 0.0;
  double phase_s = 0.0;

  std::vector<std::pair<double, double>> table;  // (time_s, temperature_K), ascending

  bool operator==(const EnvironmentProfile&) const = default;

  static EnvironmentProfile constant(double temperature_K);
  static EnvironmentProfile square_wave(double day_K, double night_K, double period_s,
                                        double phase_s = 0.0);
  static EnvironmentProfile sinusoid(double day_K, double night_K, double period_s,
                                     double phase_s = 0.0);
  static EnvironmentProfile from_table(std::vector<std::pair<double, double>> samples);

  /// Throws InvalidInput on non-positive temperatures or periods, or on a
  /// table that is too short or not strictly increasing in time.
  void validate() const;

  /// Ambient temperature at time t (t may be negative; periodic kinds wrap).
  double ambient_at(double t) const;

  /// True during the warm half of a periodic profile (square wave: first
  /// half-period; sinusoid: cosine >= 0). Constant and table profiles are
  /// never "day".
  bool is_day(double t) const;

  double min_temperature() const;
  double max_temperature() const;
};

}  // namespace tessim
