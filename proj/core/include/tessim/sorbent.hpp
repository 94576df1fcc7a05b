#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tessim/config.hpp"

namespace tessim {

/// One hydration level of a salt: MX + x H2O -> MX.xH2O.
struct HydrateVariant {
  int water_moles = 0;                 // x, mol water per mol salt
  double hydrated_formation = 0.0;     // kJ/mol, formation enthalpy of MX.xH2O
  double reaction_enthalpy = 0.0;      // kJ/mol salt, tabulated hydration enthalpy (< 0)
  std::optional<double> min_stable_temperature_C;  // coldest hydrate-stable temperature

  bool operator==(const HydrateVariant&) const = default;
};

/// A candidate hygroscopic salt with its tabulated hydration ladder.
struct SorbentSpec {
  std::string name;
  double dehydrated_formation = 0.0;  // kJ/mol, formation enthalpy of the dry salt
  double molar_mass = 0.0;            // g/mol, dry salt
  std::vector<HydrateVariant> hydrates;  // ascending in water_moles

  bool operator==(const SorbentSpec&) const = default;

  /// Basic structural checks; throws InvalidInput.
  void validate() const;

  int max_hydration() const;
  const HydrateVariant& hydrate(int water_moles) const;  // throws UnknownHydrate
  bool has_hydrate(int water_moles) const;

  /// Heat released from the dry salt to mean hydration level x, kJ per mol of
  /// salt, as a positive magnitude. Linear between tabulated levels and
  /// proportional below the first one; clamped at the ladder top.
  double cumulative_heat(double x) const;

  /// Local slope of cumulative_heat, kJ per mol of absorbed water at level x.
  /// Zero at or above the top of the ladder.
  double heat_per_mol_water(double x) const;
};

/// Formation enthalpy assumed for the water taken up by the salt, kJ/mol.
/// The default is back-fitted so that the bundled table's reaction enthalpies
/// are reproduced by the formation-enthalpy balance; the gas/liquid standard
/// values are provided for sensitivity runs.
struct WaterEnthalpyConvention {
  double water_formation = -248.0;  // kJ/mol

  static WaterEnthalpyConvention fitted() { return {-248.0}; }
  static WaterEnthalpyConvention vapor() { return {-241.8}; }
  static WaterEnthalpyConvention liquid() { return {-285.8}; }

  bool operator==(const WaterEnthalpyConvention&) const = default;
};

/// Hydration enthalpy from the formation-enthalpy balance:
///   dHr = dHf(hydrate) - (x * dHf(water) + dHf(dry salt))      [kJ/mol salt]
/// Negative means exothermic hydration. Throws UnknownHydrate when the level
/// is not tabulated for this salt.
double reaction_enthalpy(const SorbentSpec& spec, int water_moles,
                         const WaterEnthalpyConvention& convention = {});

/// General Hess sum: sum(product formations) - sum(reactant formations).
double reaction_enthalpy_hess(std::span<const double> product_formations,
                              std::span<const double> reactant_formations);

/// Heat released when stepping between two tabulated hydration levels,
/// kJ/mol salt (negative when hydrating upward). Both levels must exist;
/// level 0 is the dry salt.
double stepwise_enthalpy(const SorbentSpec& spec, int from_level, int to_level);

/// Gravimetric storage density on the dry-salt mass basis, Wh/kg.
/// Requires molar_mass > 0; the sign of the enthalpy is discarded.
double energy_storage_density(double reaction_enthalpy_kJ_mol, double molar_mass_g_mol);

/// Weighting for the multi-criteria sorbent ranking. All weights must be
/// non-negative with at least one positive.
struct RankWeights {
  double water_uptake = 1.0;     // mol water per mol salt at the ladder top
  double specific_energy = 1.0;  // Wh/kg at the ladder top
  double stability = 1.0;        // colder min-stable temperature scores higher
  double kinetics = 1.0;         // ordinal 0..5
  double availability = 1.0;     // ordinal 0..5
  double storage = 1.0;          // ordinal 0..5
  double safety = 1.0;           // ordinal 0..5
};

/// Qualitative 0..5 scores; anything not listed defaults to 3 (neutral).
struct OrdinalScores {
  double kinetics = 3.0;
  double availability = 3.0;
  double storage = 3.0;
  double safety = 3.0;
};

struct RankedSorbent {
  std::string name;
  double score = 0.0;  // normalised so the best candidate scores 1.0
};

/// Scores each salt as the weighted mean of per-criterion values normalised
/// to the best performer, then rescales so the winner is exactly 1.0.
/// Deterministic: ties break by name. Throws InvalidInput on empty input or
/// degenerate weights.
std::vector<RankedSorbent> rank_sorbents(
    const std::vector<SorbentSpec>& specs, const RankWeights& weights,
    const std::map<std::string, OrdinalScores>& qualitative = {});

/// The bundled candidate table: LiCl (x = 1, 2, 3, 5), MgSO4.7, MgCl2.6,
/// SrBr2.6 and CaCl2.6.
const std::vector<SorbentSpec>& builtin_sorbents();

/// Finds a salt by name in `specs`; throws InvalidInput when absent.
const SorbentSpec& find_sorbent(const std::vector<SorbentSpec>& specs,
                                const std::string& name);

/// CSV table of every (salt, hydrate) row with the storage density computed
/// from the stored reaction enthalpy and molar mass.
std::string sorbent_table_csv(const std::vector<SorbentSpec>& specs);

/// Additional salts declared in a config document under `sorbent.<name>.*`:
///   sorbent.KOH.formation_dry = -424.58
///   sorbent.KOH.molar_mass = 56.11
///   sorbent.KOH.hydrate.2 = -1051.2, -130.6        # dHf(hydrate), dHr
///   sorbent.KOH.hydrate.2.min_stable_C = -40       # optional
/// Returns builtin_sorbents() plus the declared ones; a declared name equal
/// to a builtin replaces it.
std::vector<SorbentSpec> load_sorbents(const ConfigDoc& doc);

}  // namespace tessim
