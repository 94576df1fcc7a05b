#pragma once

#include <string>
#include <vector>

#include "tessim/budget.hpp"
#include "tessim/config.hpp"
#include "tessim/control.hpp"
#include "tessim/environment.hpp"
#include "tessim/network.hpp"
#include "tessim/sorbent.hpp"
#include "tessim/tess.hpp"

namespace tessim {

enum class ProbeShape { Sphere, Cube };

std::string to_string(ProbeShape shape);
ProbeShape probe_shape_from_string(const std::string& name);  // throws InvalidInput

struct GeometryConfig {
  ProbeShape shape = ProbeShape::Sphere;
  double r_inner = 0.035;  // m, sphere cavity radius
  double r_outer = 0.055;  // m, sphere outer shell radius
  double side = 0.05;      // m, cube cavity edge
  double gap = 0.02;       // m, cube insulation thickness per face

  bool operator==(const GeometryConfig&) const = default;

  void validate() const;
  double enclosed_volume() const;   // m^3 of the payload cavity
  double exterior_area() const;     // m^2 of the outermost surface
};

struct MaterialConfig {
  double insulation_conductivity = 0.02;  // W/(m K), gap fill (aerogel-class)
  double emissivity_inner = 0.8;          // cavity-facing surface
  double emissivity_outer = 0.8;          // gap-facing side of the outer shell
  double emissivity_exterior = 0.8;       // outermost surface
  double core_mount_resistance = 1.5;     // K/W, payload standoffs
  double bridge_resistance = 10.0;        // K/W, structural ring + harness across the gap
  double exterior_contact_resistance = 1.5;  // K/W, mounting contact; 0 = none

  bool operator==(const MaterialConfig&) const = default;
  void validate() const;
};

struct ExplicitNode {
  std::string id;
  double capacity = 0.0;      // J/K
  double initial_K = 0.0;
  double dissipation = 0.0;   // W
  bool operator==(const ExplicitNode&) const = default;
};

struct ExplicitLink {
  std::string node_a;
  std::string node_b;
  LinkKind kind = LinkKind::Conduction;
  double value = 0.0;  // K/W or W/K^4
  bool operator==(const ExplicitLink&) const = default;
};

/// Node capacities for the default three-node layout, or a fully explicit
/// node/link list replacing the built-in construction.
struct NodesConfig {
  // Defaults follow the component mass table: electronics at 800 J/(kg K),
  // battery at 900, structural polymer at 1400.
  double core_capacity = 65.9;    // J/K, electronics + battery + holders
  double inner_capacity = 154.0;  // J/K, inner shell + ring + insulation
  double outer_capacity = 249.2;  // J/K, outer shell

  std::vector<ExplicitNode> explicit_nodes;
  std::vector<ExplicitLink> explicit_links;
  std::string explicit_boundary;

  bool use_explicit() const { return !explicit_nodes.empty(); }
  bool operator==(const NodesConfig&) const = default;
  void validate() const;
};

struct TessConfig {
  bool enabled = false;
  std::string sorbent = "LiCl";
  double salt_mass_g = 25.0;
  double water_mass_g = 25.0;
  double initial_hydration = 0.0;
  double rate_constant = kDefaultRateConstant;  // 1/s
  double degradation = 1.0;  // resolved at load: 1.0 liquid, 0.0 vapor unless set
  WaterDelivery delivery = WaterDelivery::Liquid;
  double water_temperature_K = 273.15;
  double bed_capacity = 60.0;        // J/K, container + dry salt
  double bed_link_resistance = 2.0;  // K/W, bed to attach node
  std::string attach_node = "inner_shell";
  double charge_efficiency = 0.6;
  double open_delay_s = 0.0;  // water released to the bed from this time on

  bool operator==(const TessConfig&) const = default;
  void validate(const std::vector<SorbentSpec>& sorbents) const;
};

struct ControllerConfig {
  ControlPolicy policy;
  std::string active_sensor = "tmp36";  // which reading drives the thermostat
  std::string heater_node = "core";
  SensorModel tmp36{"tmp36", 2.0, 0.1, "core"};
  SensorModel bma250{"bma250", -1.0, 0.5, "core"};

  bool operator==(const ControllerConfig&) const;
  const SensorModel& control_sensor() const;
  void validate() const;
};

struct EnvironmentConfig {
  EnvironmentProfile profile;
  std::string table_file;      // table kind: two-column CSV (time_s, temperature_K)
  double day_absorbed_W = 0.0;  // absorbed flux on the outer shell during day
  double day_charge_W = 0.0;    // power routed to bed recharge during day

  bool operator==(const EnvironmentConfig&) const = default;
};

struct RunConfig {
  std::string label = "run";
  double duration_s = 86400.0;
  double output_interval_s = 10.0;
  double initial_temperature_K = 293.15;
  double dissipation_W = 0.09;  // resolved from the power budget at load
  std::string dissipation_node = "core";
  double threshold_K = 253.15;  // reporting threshold (-20 C)
  double rel_tol = 1e-8;
  double abs_tol_K = 1e-6;

  bool operator==(const RunConfig&) const = default;
  void validate() const;
};

/// A fully resolved simulation scenario. Loading applies defaults, resolves
/// derived defaults (dissipation from the power budget, degradation from the
/// delivery mode) and validates everything; emit() writes the canonical
/// form with every key explicit, so load(emit(load(x))) == load(x).
struct ScenarioConfig {
  GeometryConfig geometry;
  MaterialConfig materials;
  NodesConfig nodes;
  TessConfig tess;
  ControllerConfig controller;
  EnvironmentConfig environment;
  BudgetModel budget;
  RunConfig run;
  std::vector<SorbentSpec> sorbents;  // builtin plus config-declared ones

  bool operator==(const ScenarioConfig&) const = default;

  static ScenarioConfig load(const std::string& text, const std::string& base_dir = "");
  static ScenarioConfig load_file(const std::string& path);
  std::string emit() const;

  const SorbentSpec& active_sorbent() const;
};

/// Re-loads `config` with one canonical key replaced by `value`. Throws
/// ConfigError when the key is not part of the canonical emission (checked
/// before anything runs).
ScenarioConfig apply_override(const ScenarioConfig& config, const std::string& key,
                              const std::string& value);

/// Node id constants of the built-in layout.
inline constexpr const char* kCoreNode = "core";
inline constexpr const char* kInnerShellNode = "inner_shell";
inline constexpr const char* kOuterShellNode = "outer_shell";
inline constexpr const char* kBedNode = "tess_bed";
inline constexpr const char* kAmbientNode = "ambient";

/// Builds the thermal network for a scenario: the three-node shell layout
/// (plus the salt-bed node when storage is enabled), or the explicit
/// node/link list when one is configured.
Network build_network(const ScenarioConfig& config);

}  // namespace tessim
