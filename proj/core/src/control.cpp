#include "tessim/control.hpp"

#include <cmath>

#include "tessim/errors.hpp"

namespace tessim {

double sense(const SensorModel& sensor, double true_temperature_K) {
  double biased = true_temperature_K + sensor.bias_K;
  if (sensor.quantization_K <= 0) return biased;
  return std::round(biased / sensor.quantization_K) * sensor.quantization_K;
}

std::string to_string(ControlMode mode) {
  switch (mode) {
    case ControlMode::Passive: return "passive";
    case ControlMode::Heater: return "heater";
    case ControlMode::TessValve: return "tess_valve";
  }
  return "passive";
}

ControlMode control_mode_from_string(const std::string& name) {
  if (name == "passive") return ControlMode::Passive;
  if (name == "heater") return ControlMode::Heater;
  if (name == "tess_valve") return ControlMode::TessValve;
  throw InvalidInput("unknown control mode '" + name + "'");
}

void ControlPolicy::validate() const {
  if (!(setpoint_K > 0)) throw InvalidInput("controller: setpoint must be positive");
  if (!(band_K > 0)) throw InvalidInput("controller: hysteresis band must be positive");
  if (!(sample_period_s > 0)) throw InvalidInput("controller: sample period must be positive");
  if (mode == ControlMode::Heater) {
    if (!(heater_power_W > 0)) throw InvalidInput("controller: heater power must be positive");
    if (heater_budget_J < 0) throw InvalidInput("controller: heater budget must be >= 0");
  }
  if (mode == ControlMode::TessValve && !(max_feed_rate_g_s > 0))
    throw InvalidInput("controller: max feed rate must be positive");
}

bool control_step(const ControlPolicy& policy, double sensed_temperature_K, bool previous_on,
                  const ControlContext& context) {
  if (policy.mode == ControlMode::Passive) return false;
  if (policy.mode == ControlMode::Heater && context.budget_remaining_J <= 0) return false;
  if (policy.mode == ControlMode::TessValve &&
      (context.reservoir_empty || context.bed_saturated))
    return false;

  double lower = policy.setpoint_K - 0.5 * policy.band_K;
  double upper = policy.setpoint_K + 0.5 * policy.band_K;
  if (sensed_temperature_K < lower) return true;
  if (sensed_temperature_K > upper) return false;
  return previous_on;  // inside the band: hold the previous command
}

}  // namespace tessim
