#include "tessim/tess.hpp"

#include <algorithm>
#include <cmath>

#include "tessim/constants.hpp"
#include "tessim/errors.hpp"

namespace tessim {

namespace {
constexpr double kSaturationTolerance = 1e-9;  // mol water per mol salt
constexpr double kEmptyReservoir_g = 1e-9;
}  // namespace

std::string to_string(WaterDelivery delivery) {
  return delivery == WaterDelivery::Liquid ? "liquid" : "vapor";
}

WaterDelivery water_delivery_from_string(const std::string& name) {
  if (name == "liquid") return WaterDelivery::Liquid;
  if (name == "vapor") return WaterDelivery::Vapor;
  throw InvalidInput("unknown water delivery mode '" + name + "'");
}

void SaltBed::validate() const {
  sorbent.validate();
  if (!(dry_mass_g > 0)) throw InvalidInput("salt bed: dry mass must be positive");
  if (!(rate_constant > 0)) throw InvalidInput("salt bed: rate constant must be positive");
  if (degradation < 0) throw InvalidInput("salt bed: degradation coefficient must be >= 0");
}

double SaltBed::moles_salt() const { return dry_mass_g / sorbent.molar_mass; }

double SaltBed::water_capacity_g() const {
  return moles_salt() * sorbent.max_hydration() * kWaterMolarMass;
}

void WaterReservoir::validate() const {
  if (mass_g < 0) throw InvalidInput("water reservoir: mass must be >= 0");
  if (!(temperature_K > 0)) throw InvalidInput("water reservoir: temperature must be positive");
}

void TessState::validate() const {
  bed.validate();
  reservoir.validate();
  if (hydration < 0 || hydration > bed.sorbent.max_hydration() + kSaturationTolerance)
    throw InvalidInput("tess state: hydration outside the sorbent's ladder");
  if (reaction_heat_released < 0 || water_absorbed_g < 0)
    throw InvalidInput("tess state: cumulative tallies must be >= 0");
}

bool TessState::saturated() const {
  return hydration >= bed.sorbent.max_hydration() - kSaturationTolerance;
}

bool TessState::depleted() const { return reservoir.mass_g <= kEmptyReservoir_g; }

double degradation_efficiency(const SaltBed& bed, double hydration) {
  if (bed.degradation == 0.0) return 1.0;
  double x_max = bed.sorbent.max_hydration();
  double x = std::clamp(hydration, 0.0, x_max);
  return std::exp(-bed.degradation * x / x_max);
}

double total_capacity_Wh(const SaltBed& bed, double hydration, double available_water_g) {
  bed.validate();
  if (hydration < 0) throw InvalidInput("total_capacity_Wh: hydration must be >= 0");
  if (available_water_g < 0) throw InvalidInput("total_capacity_Wh: water mass must be >= 0");
  double n_salt = bed.moles_salt();
  double x_max = bed.sorbent.max_hydration();
  double x_start = std::min(hydration, x_max);
  double x_reach = std::min(x_max, x_start + available_water_g / (n_salt * kWaterMolarMass));
  double kJ = n_salt * (bed.sorbent.cumulative_heat(x_reach) - bed.sorbent.cumulative_heat(x_start));
  return kJ / 3.6;  // kJ -> Wh
}

TessRates heat_release_rates(const TessState& state, double feed_limit_g_s,
                             double bed_temperature_K) {
  if (feed_limit_g_s < 0) throw InvalidInput("heat_release_rates: feed limit must be >= 0");
  if (!(bed_temperature_K > 0))
    throw InvalidInput("heat_release_rates: bed temperature must be positive");

  const SaltBed& bed = state.bed;
  double n_salt = bed.moles_salt();
  double x_max = bed.sorbent.max_hydration();
  double x = std::clamp(state.hydration, 0.0, x_max);

  double room_g = (x_max - x) * n_salt * kWaterMolarMass;
  double available_g = std::max(0.0, std::min(room_g, state.reservoir.mass_g));

  TessRates r;
  double efficiency = degradation_efficiency(bed, x);
  r.absorption_g_s = std::min(bed.rate_constant * available_g * efficiency, feed_limit_g_s);
  double mol_per_s = r.absorption_g_s / kWaterMolarMass;
  // The crystalline layer throttles uptake and degrades the delivered heat:
  // part of the binding enthalpy is spent wetting and restructuring the layer
  // instead of warming the bed, so the conversion is scaled by the same
  // efficiency. With degradation 0 every absorbed gram delivers the full
  // ladder slope.
  r.reaction_heat_W = mol_per_s * bed.sorbent.heat_per_mol_water(x) * 1000.0 * efficiency;
  if (state.reservoir.delivery == WaterDelivery::Liquid)
    r.sensible_heat_W =
        -r.absorption_g_s * kWaterSpecificHeat * (bed_temperature_K - state.reservoir.temperature_K);
  r.net_heat_W = r.reaction_heat_W + r.sensible_heat_W;
  return r;
}

double charge(TessState& state, double input_power_W, double dt_s, double efficiency) {
  if (input_power_W < 0 || dt_s < 0) throw InvalidInput("charge: power and time must be >= 0");
  if (!(efficiency > 0) || efficiency > 1)
    throw InvalidInput("charge: efficiency must be in (0, 1]");

  const SorbentSpec& s = state.bed.sorbent;
  double n_salt = state.bed.moles_salt();
  double budget_kJ = input_power_W * dt_s * efficiency / 1000.0;
  double banked_kJ = 0.0;

  // Walk the enthalpy ladder downward segment by segment so the per-mol heat
  // is exact even when the charge crosses a tabulated level.
  while (budget_kJ > 1e-15 && state.hydration > 0) {
    double x = state.hydration;
    // Slope of the segment just below x (kJ per mol water removed).
    double below = std::nexttoward(x, 0.0L);
    double slope = s.heat_per_mol_water(below);
    if (!(slope > 0)) break;

    // Floor of the current segment.
    double floor_x = 0.0;
    for (const auto& h : s.hydrates) {
      if (h.water_moles < x) floor_x = h.water_moles;
      if (h.water_moles >= x) break;
    }

    double mols_to_floor = (x - floor_x) * n_salt;
    double kJ_to_floor = mols_to_floor * slope;
    double kJ_step = std::min(budget_kJ, kJ_to_floor);
    double mols_removed = kJ_step / slope;

    state.hydration -= mols_removed / n_salt;
    state.reservoir.mass_g += mols_removed * kWaterMolarMass;
    state.water_absorbed_g -= mols_removed * kWaterMolarMass;
    budget_kJ -= kJ_step;
    banked_kJ += kJ_step;
    if (kJ_step == kJ_to_floor) state.hydration = floor_x;  // land exactly on the knot
  }
  return banked_kJ * 1000.0;
}

}  // namespace tessim
