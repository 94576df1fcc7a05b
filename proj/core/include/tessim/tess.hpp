#pragma once

#include "tessim/sorbent.hpp"

namespace tessim {

enum class WaterDelivery { Liquid, Vapor };

std::string to_string(WaterDelivery delivery);
WaterDelivery water_delivery_from_string(const std::string& name);  // throws InvalidInput

/// First-order uptake constant chosen so an unthrottled fresh bed takes up
/// 1 - 1/e (~63%) of its remaining water in 45 minutes.
inline constexpr double kDefaultRateConstant = 1.0 / 2700.0;  // 1/s

/// A packed bed of dry salt that releases heat by absorbing water.
struct SaltBed {
  SorbentSpec sorbent;
  double dry_mass_g = 0.0;
  double rate_constant = kDefaultRateConstant;  // 1/s
  double degradation = 0.0;  // crystalline-layer growth coefficient, >= 0

  void validate() const;
  double moles_salt() const;          // mol of dry salt
  double water_capacity_g() const;    // water bound at the top of the ladder
};

struct WaterReservoir {
  double mass_g = 0.0;
  double temperature_K = 273.15;  // feed temperature of delivered liquid
  WaterDelivery delivery = WaterDelivery::Liquid;

  void validate() const;
};

struct TessState {
  SaltBed bed;
  WaterReservoir reservoir;
  double hydration = 0.0;             // mean mol water per mol salt (x-bar)
  double reaction_heat_released = 0.0;  // J, cumulative hydration heat only
  double water_absorbed_g = 0.0;        // currently bound in the bed

  void validate() const;
  bool saturated() const;  // hydration at the ladder top (within rounding)
  bool depleted() const;   // reservoir effectively empty
};

/// Instantaneous discharge rates.
struct TessRates {
  double absorption_g_s = 0.0;   // water uptake
  double reaction_heat_W = 0.0;  // exothermic hydration heat, >= 0
  double sensible_heat_W = 0.0;  // warming the liquid feed; <= 0 when the bed is warmer
  double net_heat_W = 0.0;       // reaction + sensible, delivered to the attach node
};

/// Uptake efficiency after crystalline-layer growth: exp(-d * x / x_max).
/// Liquid-phase hydration forms a product layer that throttles later uptake;
/// vapor delivery typically runs with d = 0.
double degradation_efficiency(const SaltBed& bed, double hydration);

/// Reaction heat still available from `hydration` upward, given the water on
/// hand, Wh. The uptake endpoint is the lesser of the ladder top and the
/// level the available water can reach. This is the degradation-free
/// ceiling; with a positive degradation coefficient the delivered heat
/// stays strictly below it.
double total_capacity_Wh(const SaltBed& bed, double hydration, double available_water_g);

/// Discharge rates at the given bed temperature. Uptake is first-order in
/// the available water, min(remaining bed capacity, reservoir content),
/// scaled by the degradation efficiency and clipped at `feed_limit_g_s`
/// (pass infinity for an unthrottled bed, 0 for a closed valve). The heat
/// conversion per absorbed mol is the local ladder slope, also scaled by
/// the degradation efficiency.
TessRates heat_release_rates(const TessState& state, double feed_limit_g_s,
                             double bed_temperature_K);

/// Recharges (dehydrates) the bed with `input_power_W * dt_s * efficiency`
/// joules of heat, returning the bound water to the reservoir. Returns the
/// heat actually banked, which is smaller when the bed dries out first.
double charge(TessState& state, double input_power_W, double dt_s, double efficiency);

}  // namespace tessim
