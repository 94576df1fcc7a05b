#pragma once

#include <string>

namespace tessim {

/// A deterministic temperature sensor: fixed bias, then quantisation to the
/// resolution grid (round half away from zero). No noise, so repeated runs
/// are bit-identical.
struct SensorModel {
  std::string name;
  double bias_K = 0.0;
  double quantization_K = 0.0;  // 0 disables quantisation
  std::string attach_node = "core";

  bool operator==(const SensorModel&) const = default;
};

double sense(const SensorModel& sensor, double true_temperature_K);

enum class ControlMode { Passive, Heater, TessValve };

std::string to_string(ControlMode mode);
ControlMode control_mode_from_string(const std::string& name);  // throws InvalidInput

/// Bang-bang thermostat with a symmetric hysteresis band around the setpoint:
/// commands ON below setpoint - band/2, OFF above setpoint + band/2, and holds
/// the previous command inside the band.
struct ControlPolicy {
  ControlMode mode = ControlMode::Passive;
  double setpoint_K = 253.15;
  double band_K = 1.0;             // full hysteresis width
  double sample_period_s = 10.0;   // controller tick, independent of solver steps
  double heater_power_W = 1.5;     // Heater mode
  double heater_budget_J = 10710.0;  // usable electrical energy
  double max_feed_rate_g_s = 0.05;   // TessValve mode, open-valve limit

  void validate() const;  // throws InvalidInput
};

/// Actuation resources as seen at a controller tick.
struct ControlContext {
  double budget_remaining_J = 0.0;  // Heater mode
  bool reservoir_empty = false;     // TessValve mode
  bool bed_saturated = false;       // TessValve mode
};

/// One thermostat decision. Returns the new actuation command given the
/// sensed temperature and the previous command. Exhausted resources force
/// OFF regardless of temperature; Passive mode is always OFF.
bool control_step(const ControlPolicy& policy, double sensed_temperature_K, bool previous_on,
                  const ControlContext& context);

}  // namespace tessim
