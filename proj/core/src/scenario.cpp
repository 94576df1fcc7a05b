#include "tessim/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <tuple>

#include "tessim/constants.hpp"
#include "tessim/errors.hpp"

namespace tessim {

std::string to_string(ProbeShape shape) {
  return shape == ProbeShape::Sphere ? "sphere" : "cube";
}

ProbeShape probe_shape_from_string(const std::string& name) {
  if (name == "sphere") return ProbeShape::Sphere;
  if (name == "cube") return ProbeShape::Cube;
  throw InvalidInput("unknown shape '" + name + "' (expected sphere or cube)");
}

void GeometryConfig::validate() const {
  if (shape == ProbeShape::Sphere) {
    if (!(r_inner > 0)) throw InvalidGeometry("geometry.r_inner must be positive");
    if (!(r_outer > r_inner))
      throw InvalidGeometry("geometry.r_outer must exceed geometry.r_inner");
  } else {
    if (!(side > 0)) throw InvalidGeometry("geometry.side must be positive");
    if (!(gap > 0)) throw InvalidGeometry("geometry.gap must be positive");
  }
}

double GeometryConfig::enclosed_volume() const {
  if (shape == ProbeShape::Sphere) return 4.0 / 3.0 * M_PI * r_inner * r_inner * r_inner;
  return side * side * side;
}

double GeometryConfig::exterior_area() const {
  if (shape == ProbeShape::Sphere) return 4.0 * M_PI * r_outer * r_outer;
  double outer_side = side + 2.0 * gap;
  return 6.0 * outer_side * outer_side;
}

void MaterialConfig::validate() const {
  if (!(insulation_conductivity > 0))
    throw InvalidInput("materials.insulation_conductivity must be positive");
  for (auto [value, key] : {std::pair{emissivity_inner, "materials.emissivity_inner"},
                            {emissivity_outer, "materials.emissivity_outer"},
                            {emissivity_exterior, "materials.emissivity_exterior"}})
    if (!(value > 0) || value > 1)
      throw InvalidInput(std::string(key) + " must be in (0, 1]");
  if (!(core_mount_resistance > 0))
    throw InvalidInput("materials.core_mount_resistance must be positive");
  if (bridge_resistance < 0)
    throw InvalidInput("materials.bridge_resistance must be >= 0 (0 disables the bridge)");
  if (exterior_contact_resistance < 0)
    throw InvalidInput("materials.exterior_contact_resistance must be >= 0 (0 disables it)");
}

void NodesConfig::validate() const {
  if (use_explicit()) {
    if (explicit_boundary.empty())
      throw InvalidInput("explicit node lists need nodes.boundary");
    return;  // node/link values are checked when the network is built
  }
  for (auto [value, key] : {std::pair{core_capacity, "nodes.core_capacity"},
                            {inner_capacity, "nodes.inner_capacity"},
                            {outer_capacity, "nodes.outer_capacity"}})
    if (!(value > 0)) throw InvalidInput(std::string(key) + " must be positive");
}

void TessConfig::validate(const std::vector<SorbentSpec>& available) const {
  const SorbentSpec& spec = find_sorbent(available, sorbent);
  if (!(salt_mass_g > 0)) throw InvalidInput("tess.salt_mass_g must be positive");
  if (water_mass_g < 0) throw InvalidInput("tess.water_mass_g must be >= 0");
  if (initial_hydration < 0 || initial_hydration > spec.max_hydration())
    throw InvalidInput("tess.initial_hydration outside the sorbent's ladder");
  if (!(rate_constant > 0)) throw InvalidInput("tess.rate_constant must be positive");
  if (degradation < 0) throw InvalidInput("tess.degradation must be >= 0");
  if (!(water_temperature_K > 0))
    throw InvalidInput("tess.water_temperature_K must be positive");
  if (!(bed_capacity > 0)) throw InvalidInput("tess.bed_capacity must be positive");
  if (!(bed_link_resistance > 0))
    throw InvalidInput("tess.bed_link_resistance must be positive");
  if (!(charge_efficiency > 0) || charge_efficiency > 1)
    throw InvalidInput("tess.charge_efficiency must be in (0, 1]");
  if (open_delay_s < 0) throw InvalidInput("tess.open_delay_s must be >= 0");
}

bool ControllerConfig::operator==(const ControllerConfig& o) const {
  auto policy_tuple = [](const ControlPolicy& p) {
    return std::tuple(p.mode, p.setpoint_K, p.band_K, p.sample_period_s, p.heater_power_W,
                      p.heater_budget_J, p.max_feed_rate_g_s);
  };
  return policy_tuple(policy) == policy_tuple(o.policy) && active_sensor == o.active_sensor &&
         heater_node == o.heater_node && tmp36 == o.tmp36 && bma250 == o.bma250;
}

const SensorModel& ControllerConfig::control_sensor() const {
  if (active_sensor == tmp36.name) return tmp36;
  if (active_sensor == bma250.name) return bma250;
  throw InvalidInput("controller.sensor must be '" + tmp36.name + "' or '" + bma250.name + "'");
}

void ControllerConfig::validate() const {
  policy.validate();
  control_sensor();  // throws on an unknown selection
  for (const SensorModel* s : {&tmp36, &bma250}) {
    if (s->quantization_K < 0)
      throw InvalidInput("sensor quantization must be >= 0 (" + s->name + ")");
    if (s->attach_node.empty())
      throw InvalidInput("sensor attach node must not be empty (" + s->name + ")");
  }
}

void RunConfig::validate() const {
  if (duration_s < 0) throw InvalidInput("run.duration_s must be >= 0");
  if (!(output_interval_s > 0)) throw InvalidInput("run.output_interval_s must be positive");
  if (!(initial_temperature_K > 0))
    throw InvalidInput("run.initial_temperature_K must be positive");
  if (dissipation_W < 0) throw InvalidInput("run.dissipation_W must be >= 0");
  if (!(threshold_K > 0)) throw InvalidInput("run.threshold_K must be positive");
  if (!(rel_tol > 0) || !(abs_tol_K > 0))
    throw InvalidInput("run.rel_tol and run.abs_tol_K must be positive");
}

namespace {

std::string tail_after(const std::string& key, std::string_view prefix) {
  return key.substr(prefix.size());
}

GeometryConfig load_geometry(const ConfigDoc& doc) {
  GeometryConfig g;
  g.shape = probe_shape_from_string(doc.get_string_or("geometry.shape", "sphere"));
  // All four dimensions are read regardless of shape so that switching the
  // shape of an emitted document never strands a key.
  g.r_inner = doc.get_double_or("geometry.r_inner", g.r_inner);
  g.r_outer = doc.get_double_or("geometry.r_outer", g.r_outer);
  g.side = doc.get_double_or("geometry.side", g.side);
  g.gap = doc.get_double_or("geometry.gap", g.gap);
  g.validate();
  return g;
}

MaterialConfig load_materials(const ConfigDoc& doc) {
  MaterialConfig m;
  m.insulation_conductivity =
      doc.get_double_or("materials.insulation_conductivity", m.insulation_conductivity);
  m.emissivity_inner = doc.get_double_or("materials.emissivity_inner", m.emissivity_inner);
  m.emissivity_outer = doc.get_double_or("materials.emissivity_outer", m.emissivity_outer);
  m.emissivity_exterior =
      doc.get_double_or("materials.emissivity_exterior", m.emissivity_exterior);
  m.core_mount_resistance =
      doc.get_double_or("materials.core_mount_resistance", m.core_mount_resistance);
  m.bridge_resistance = doc.get_double_or("materials.bridge_resistance", m.bridge_resistance);
  m.exterior_contact_resistance =
      doc.get_double_or("materials.exterior_contact_resistance", m.exterior_contact_resistance);
  m.validate();
  return m;
}

NodesConfig load_nodes(const ConfigDoc& doc) {
  NodesConfig n;
  n.core_capacity = doc.get_double_or("nodes.core_capacity", n.core_capacity);
  n.inner_capacity = doc.get_double_or("nodes.inner_capacity", n.inner_capacity);
  n.outer_capacity = doc.get_double_or("nodes.outer_capacity", n.outer_capacity);

  for (const auto& e : doc.entries_with_prefix("nodes.node")) {
    std::string id = tail_after(e.key, "nodes.node.");
    if (id.empty() || id.find('.') != std::string::npos)
      throw ConfigError("malformed node key '" + e.key + "'", e.line);
    auto parts = split_list(e.value);
    if (parts.size() != 3)
      throw ConfigError("'" + e.key + "' expects 'capacity_J_K, initial_K, dissipation_W'",
                        e.line);
    ExplicitNode node;
    node.id = id;
    node.capacity = parse_double(parts[0], e.key);
    node.initial_K = parse_double(parts[1], e.key);
    node.dissipation = parse_double(parts[2], e.key);
    doc.mark_consumed(e.key);
    n.explicit_nodes.push_back(std::move(node));
  }
  for (const auto& e : doc.entries_with_prefix("nodes.link")) {
    auto parts = split_list(e.value);
    if (parts.size() != 4)
      throw ConfigError("'" + e.key + "' expects 'node_a, node_b, conduction|radiation, value'",
                        e.line);
    ExplicitLink link;
    link.node_a = parts[0];
    link.node_b = parts[1];
    if (parts[2] == "conduction")
      link.kind = LinkKind::Conduction;
    else if (parts[2] == "radiation")
      link.kind = LinkKind::Radiation;
    else
      throw ConfigError("'" + e.key + "': kind must be conduction or radiation", e.line);
    link.value = parse_double(parts[3], e.key);
    doc.mark_consumed(e.key);
    n.explicit_links.push_back(std::move(link));
  }
  n.explicit_boundary = doc.get_string_or("nodes.boundary", "");
  if (!n.explicit_links.empty() && n.explicit_nodes.empty())
    throw ConfigError("nodes.link.* given without any nodes.node.* entries",
                      doc.line_of(doc.entries_with_prefix("nodes.link").front().key));
  n.validate();
  return n;
}

TessConfig load_tess(const ConfigDoc& doc, const std::vector<SorbentSpec>& sorbents) {
  TessConfig t;
  t.enabled = doc.get_bool_or("tess.enabled", t.enabled);
  t.sorbent = doc.get_string_or("tess.sorbent", t.sorbent);
  t.salt_mass_g = doc.get_double_or("tess.salt_mass_g", t.salt_mass_g);
  t.water_mass_g = doc.get_double_or("tess.water_mass_g", t.water_mass_g);
  t.initial_hydration = doc.get_double_or("tess.initial_hydration", t.initial_hydration);
  t.rate_constant = doc.get_double_or("tess.rate_constant", t.rate_constant);
  t.delivery = water_delivery_from_string(
      doc.get_string_or("tess.delivery", to_string(t.delivery)));
  // Liquid feeds grow a crystalline layer that throttles later uptake; vapor
  // feeds do not, so the default coefficient follows the delivery mode.
  t.degradation = doc.get_double_or("tess.degradation",
                                    t.delivery == WaterDelivery::Liquid ? 1.0 : 0.0);
  t.water_temperature_K = doc.get_double_or("tess.water_temperature_K", t.water_temperature_K);
  t.bed_capacity = doc.get_double_or("tess.bed_capacity", t.bed_capacity);
  t.bed_link_resistance =
      doc.get_double_or("tess.bed_link_resistance", t.bed_link_resistance);
  t.attach_node = doc.get_string_or("tess.attach_node", t.attach_node);
  t.charge_efficiency = doc.get_double_or("tess.charge_efficiency", t.charge_efficiency);
  t.open_delay_s = doc.get_double_or("tess.open_delay_s", t.open_delay_s);
  t.validate(sorbents);
  return t;
}

ControllerConfig load_controller(const ConfigDoc& doc) {
  ControllerConfig c;
  c.policy.mode =
      control_mode_from_string(doc.get_string_or("controller.mode", to_string(c.policy.mode)));
  c.policy.setpoint_K = doc.get_double_or("controller.setpoint_K", c.policy.setpoint_K);
  c.policy.band_K = doc.get_double_or("controller.band_K", c.policy.band_K);
  c.policy.sample_period_s =
      doc.get_double_or("controller.sample_period_s", c.policy.sample_period_s);
  c.policy.heater_power_W =
      doc.get_double_or("controller.heater_power_W", c.policy.heater_power_W);
  c.policy.heater_budget_J =
      doc.get_double_or("controller.heater_budget_J", c.policy.heater_budget_J);
  c.policy.max_feed_rate_g_s =
      doc.get_double_or("controller.max_feed_rate_g_s", c.policy.max_feed_rate_g_s);
  c.active_sensor = doc.get_string_or("controller.sensor", c.active_sensor);
  c.heater_node = doc.get_string_or("controller.heater_node", c.heater_node);
  c.tmp36.bias_K = doc.get_double_or("controller.tmp36_bias_K", c.tmp36.bias_K);
  c.tmp36.quantization_K =
      doc.get_double_or("controller.tmp36_quantization_K", c.tmp36.quantization_K);
  c.tmp36.attach_node = doc.get_string_or("controller.tmp36_node", c.tmp36.attach_node);
  c.bma250.bias_K = doc.get_double_or("controller.bma250_bias_K", c.bma250.bias_K);
  c.bma250.quantization_K =
      doc.get_double_or("controller.bma250_quantization_K", c.bma250.quantization_K);
  c.bma250.attach_node = doc.get_string_or("controller.bma250_node", c.bma250.attach_node);
  c.validate();
  return c;
}

std::vector<std::pair<double, double>> parse_table_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open environment table '" + path + "'");
  std::vector<std::pair<double, double>> samples;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string trimmed = line;
    if (auto pos = trimmed.find('#'); pos != std::string::npos) trimmed.resize(pos);
    while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.back())))
      trimmed.pop_back();
    if (trimmed.empty()) continue;
    auto parts = split_list(trimmed);
    if (parts.size() != 2)
      throw InvalidInput("environment table '" + path + "' line " + std::to_string(line_no) +
                         ": expected 'time_s, temperature_K'");
    // A single header line is allowed.
    if (samples.empty() && line_no <= 1 &&
        parts[0].find_first_not_of("+-.0123456789eE") != std::string::npos)
      continue;
    samples.emplace_back(parse_double(parts[0], "table time"),
                         parse_double(parts[1], "table temperature"));
  }
  return samples;
}

EnvironmentConfig load_environment(const ConfigDoc& doc, const std::string& base_dir) {
  EnvironmentConfig e;
  std::string kind_name = doc.get_string_or("environment.kind", "constant");
  ProfileKind kind = profile_kind_from_string(kind_name);
  switch (kind) {
    case ProfileKind::Constant:
      e.profile =
          EnvironmentProfile::constant(doc.get_double_or("environment.temperature_K", 241.0));
      break;
    case ProfileKind::SquareWave:
      e.profile = EnvironmentProfile::square_wave(
          doc.get_double("environment.day_K"), doc.get_double("environment.night_K"),
          doc.get_double("environment.period_s"), doc.get_double_or("environment.phase_s", 0.0));
      break;
    case ProfileKind::Sinusoid:
      e.profile = EnvironmentProfile::sinusoid(
          doc.get_double("environment.day_K"), doc.get_double("environment.night_K"),
          doc.get_double("environment.period_s"), doc.get_double_or("environment.phase_s", 0.0));
      break;
    case ProfileKind::Table: {
      e.table_file = doc.get_string("environment.table_file");
      if (!base_dir.empty() && !std::filesystem::path(e.table_file).is_absolute())
        e.table_file = (std::filesystem::path(base_dir) / e.table_file).string();
      e.profile = EnvironmentProfile::from_table(parse_table_csv(e.table_file));
      break;
    }
  }
  // Tolerate the other kinds' keys so one override can switch profiles in an
  // emitted document without stranding the rest.
  for (const char* key :
       {"environment.temperature_K", "environment.day_K", "environment.night_K",
        "environment.period_s", "environment.phase_s", "environment.table_file"})
    if (doc.has(key)) doc.mark_consumed(key);

  e.day_absorbed_W = doc.get_double_or("environment.day_absorbed_W", 0.0);
  e.day_charge_W = doc.get_double_or("environment.day_charge_W", 0.0);
  if (e.day_absorbed_W < 0) throw InvalidInput("environment.day_absorbed_W must be >= 0");
  if (e.day_charge_W < 0) throw InvalidInput("environment.day_charge_W must be >= 0");
  e.profile.validate();
  return e;
}

BudgetModel load_budget(const ConfigDoc& doc) {
  auto mass_rows = doc.entries_with_prefix("budget.mass");
  auto power_rows = doc.entries_with_prefix("budget.power");
  bool has_totals =
      doc.has("budget.listed_total_max_mass_g") || doc.has("budget.listed_total_heat_mW");
  if (mass_rows.empty() && power_rows.empty() && !has_totals) return builtin_budget();

  BudgetModel b;
  for (const auto& e : mass_rows) {
    std::string name = tail_after(e.key, "budget.mass.");
    if (name.empty() || name.find('.') != std::string::npos)
      throw ConfigError("malformed budget key '" + e.key + "'", e.line);
    auto parts = split_list(e.value);
    if (parts.size() != 3)
      throw ConfigError("'" + e.key + "' expects 'mass_g, deviation, max_mass_g'", e.line);
    b.mass.push_back({name, parse_double(parts[0], e.key), parse_double(parts[1], e.key),
                      parse_double(parts[2], e.key)});
    doc.mark_consumed(e.key);
  }
  for (const auto& e : power_rows) {
    std::string name = tail_after(e.key, "budget.power.");
    if (name.empty() || name.find('.') != std::string::npos)
      throw ConfigError("malformed budget key '" + e.key + "'", e.line);
    auto parts = split_list(e.value);
    if (parts.size() != 4)
      throw ConfigError("'" + e.key + "' expects 'current_mA, voltage_V, power_mW, heat_mW'",
                        e.line);
    b.power.push_back({name, parse_double(parts[0], e.key), parse_double(parts[1], e.key),
                       parse_double(parts[2], e.key), parse_double(parts[3], e.key)});
    doc.mark_consumed(e.key);
  }
  double allowance_sum = 0.0;
  for (const auto& m : b.mass) allowance_sum += m.max_mass_g;
  double heat_sum = 0.0;
  for (const auto& p : b.power) heat_sum += p.heat_lost_mW;
  b.listed_total_max_mass_g = doc.get_double_or("budget.listed_total_max_mass_g", allowance_sum);
  b.listed_total_heat_mW = doc.get_double_or("budget.listed_total_heat_mW", heat_sum);
  return b;
}

RunConfig load_run(const ConfigDoc& doc, const BudgetModel& budget) {
  RunConfig r;
  r.label = doc.get_string_or("run.label", r.label);
  r.duration_s = doc.get_double_or("run.duration_s", r.duration_s);
  r.output_interval_s = doc.get_double_or("run.output_interval_s", r.output_interval_s);
  r.initial_temperature_K =
      doc.get_double_or("run.initial_temperature_K", r.initial_temperature_K);
  r.dissipation_W = doc.get_double_or("run.dissipation_W", default_dissipation_W(budget));
  r.dissipation_node = doc.get_string_or("run.dissipation_node", r.dissipation_node);
  r.threshold_K = doc.get_double_or("run.threshold_K", r.threshold_K);
  r.rel_tol = doc.get_double_or("run.rel_tol", r.rel_tol);
  r.abs_tol_K = doc.get_double_or("run.abs_tol_K", r.abs_tol_K);
  r.validate();
  return r;
}

}  // namespace

ScenarioConfig ScenarioConfig::load(const std::string& text, const std::string& base_dir) {
  ConfigDoc doc = ConfigDoc::parse(text);

  ScenarioConfig cfg;
  cfg.sorbents = load_sorbents(doc);
  cfg.geometry = load_geometry(doc);
  cfg.materials = load_materials(doc);
  cfg.nodes = load_nodes(doc);
  cfg.tess = load_tess(doc, cfg.sorbents);
  cfg.controller = load_controller(doc);
  cfg.environment = load_environment(doc, base_dir);
  cfg.budget = load_budget(doc);
  cfg.run = load_run(doc, cfg.budget);
  doc.require_all_consumed();

  // Cross-references: every node named elsewhere must exist in the layout.
  std::set<std::string> ids;
  if (cfg.nodes.use_explicit()) {
    for (const auto& n : cfg.nodes.explicit_nodes) ids.insert(n.id);
    if (!ids.count(cfg.nodes.explicit_boundary))
      throw InvalidInput("nodes.boundary '" + cfg.nodes.explicit_boundary +
                         "' is not a declared node");
  } else {
    ids = {kCoreNode, kInnerShellNode, kOuterShellNode, kAmbientNode};
  }
  if (cfg.tess.enabled) {
    if (!ids.count(cfg.tess.attach_node))
      throw InvalidInput("tess.attach_node '" + cfg.tess.attach_node + "' is not a node");
    ids.insert(kBedNode);
  }
  for (const SensorModel* s : {&cfg.controller.tmp36, &cfg.controller.bma250})
    if (!ids.count(s->attach_node))
      throw InvalidInput("sensor node '" + s->attach_node + "' is not a node (" + s->name + ")");
  if (cfg.controller.policy.mode == ControlMode::Heater &&
      !ids.count(cfg.controller.heater_node))
    throw InvalidInput("controller.heater_node '" + cfg.controller.heater_node +
                       "' is not a node");
  if (cfg.run.dissipation_W > 0 && !cfg.nodes.use_explicit() &&
      !ids.count(cfg.run.dissipation_node))
    throw InvalidInput("run.dissipation_node '" + cfg.run.dissipation_node + "' is not a node");

  return cfg;
}

ScenarioConfig ScenarioConfig::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open scenario '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return load(buffer.str(), std::filesystem::path(path).parent_path().string());
}

const SorbentSpec& ScenarioConfig::active_sorbent() const {
  return find_sorbent(sorbents, tess.sorbent);
}

std::string ScenarioConfig::emit() const {
  std::ostringstream out;
  auto put = [&out](std::string_view key, const std::string& value) {
    out << key << " = " << value << "\n";
  };
  auto put_d = [&put](std::string_view key, double v) { put(key, format_double(v)); };

  out << "# Canonical scenario document; every key explicit.\n\n";

  put("run.label", run.label);
  put_d("run.duration_s", run.duration_s);
  put_d("run.output_interval_s", run.output_interval_s);
  put_d("run.initial_temperature_K", run.initial_temperature_K);
  put_d("run.dissipation_W", run.dissipation_W);
  put("run.dissipation_node", run.dissipation_node);
  put_d("run.threshold_K", run.threshold_K);
  put_d("run.rel_tol", run.rel_tol);
  put_d("run.abs_tol_K", run.abs_tol_K);
  out << "\n";

  put("geometry.shape", to_string(geometry.shape));
  put_d("geometry.r_inner", geometry.r_inner);
  put_d("geometry.r_outer", geometry.r_outer);
  put_d("geometry.side", geometry.side);
  put_d("geometry.gap", geometry.gap);
  out << "\n";

  put_d("materials.insulation_conductivity", materials.insulation_conductivity);
  put_d("materials.emissivity_inner", materials.emissivity_inner);
  put_d("materials.emissivity_outer", materials.emissivity_outer);
  put_d("materials.emissivity_exterior", materials.emissivity_exterior);
  put_d("materials.core_mount_resistance", materials.core_mount_resistance);
  put_d("materials.bridge_resistance", materials.bridge_resistance);
  put_d("materials.exterior_contact_resistance", materials.exterior_contact_resistance);
  out << "\n";

  put_d("nodes.core_capacity", nodes.core_capacity);
  put_d("nodes.inner_capacity", nodes.inner_capacity);
  put_d("nodes.outer_capacity", nodes.outer_capacity);
  if (nodes.use_explicit()) {
    put("nodes.boundary", nodes.explicit_boundary);
    for (const auto& n : nodes.explicit_nodes)
      put("nodes.node." + n.id, format_double(n.capacity) + ", " + format_double(n.initial_K) +
                                    ", " + format_double(n.dissipation));
    for (std::size_t i = 0; i < nodes.explicit_links.size(); ++i) {
      const auto& l = nodes.explicit_links[i];
      put("nodes.link." + std::to_string(i + 1),
          l.node_a + ", " + l.node_b + ", " +
              (l.kind == LinkKind::Conduction ? "conduction" : "radiation") + ", " +
              format_double(l.value));
    }
  }
  out << "\n";

  put("tess.enabled", tess.enabled ? "true" : "false");
  put("tess.sorbent", tess.sorbent);
  put_d("tess.salt_mass_g", tess.salt_mass_g);
  put_d("tess.water_mass_g", tess.water_mass_g);
  put_d("tess.initial_hydration", tess.initial_hydration);
  put_d("tess.rate_constant", tess.rate_constant);
  put_d("tess.degradation", tess.degradation);
  put("tess.delivery", to_string(tess.delivery));
  put_d("tess.water_temperature_K", tess.water_temperature_K);
  put_d("tess.bed_capacity", tess.bed_capacity);
  put_d("tess.bed_link_resistance", tess.bed_link_resistance);
  put("tess.attach_node", tess.attach_node);
  put_d("tess.charge_efficiency", tess.charge_efficiency);
  put_d("tess.open_delay_s", tess.open_delay_s);
  out << "\n";

  put("controller.mode", to_string(controller.policy.mode));
  put_d("controller.setpoint_K", controller.policy.setpoint_K);
  put_d("controller.band_K", controller.policy.band_K);
  put_d("controller.sample_period_s", controller.policy.sample_period_s);
  put_d("controller.heater_power_W", controller.policy.heater_power_W);
  put_d("controller.heater_budget_J", controller.policy.heater_budget_J);
  put("controller.heater_node", controller.heater_node);
  put_d("controller.max_feed_rate_g_s", controller.policy.max_feed_rate_g_s);
  put("controller.sensor", controller.active_sensor);
  put_d("controller.tmp36_bias_K", controller.tmp36.bias_K);
  put_d("controller.tmp36_quantization_K", controller.tmp36.quantization_K);
  put("controller.tmp36_node", controller.tmp36.attach_node);
  put_d("controller.bma250_bias_K", controller.bma250.bias_K);
  put_d("controller.bma250_quantization_K", controller.bma250.quantization_K);
  put("controller.bma250_node", controller.bma250.attach_node);
  out << "\n";

  put("environment.kind", to_string(environment.profile.kind));
  switch (environment.profile.kind) {
    case ProfileKind::Constant:
      put_d("environment.temperature_K", environment.profile.constant_K);
      break;
    case ProfileKind::SquareWave:
    case ProfileKind::Sinusoid:
      put_d("environment.day_K", environment.profile.day_K);
      put_d("environment.night_K", environment.profile.night_K);
      put_d("environment.period_s", environment.profile.period_s);
      put_d("environment.phase_s", environment.profile.phase_s);
      break;
    case ProfileKind::Table:
      put("environment.table_file", environment.table_file);
      break;
  }
  put_d("environment.day_absorbed_W", environment.day_absorbed_W);
  put_d("environment.day_charge_W", environment.day_charge_W);
  out << "\n";

  for (const auto& m : budget.mass)
    put("budget.mass." + m.name, format_double(m.mass_g) + ", " + format_double(m.deviation) +
                                     ", " + format_double(m.max_mass_g));
  for (const auto& p : budget.power)
    put("budget.power." + p.name,
        format_double(p.current_mA) + ", " + format_double(p.voltage_V) + ", " +
            format_double(p.power_mW) + ", " + format_double(p.heat_lost_mW));
  put_d("budget.listed_total_max_mass_g", budget.listed_total_max_mass_g);
  put_d("budget.listed_total_heat_mW", budget.listed_total_heat_mW);

  // Sorbents beyond the built-in table (or overriding one of its rows).
  const auto& builtin = builtin_sorbents();
  std::ostringstream extra;
  for (const auto& s : sorbents) {
    if (std::find(builtin.begin(), builtin.end(), s) != builtin.end()) continue;
    extra << "sorbent." << s.name << ".formation_dry = " << format_double(s.dehydrated_formation)
          << "\n";
    extra << "sorbent." << s.name << ".molar_mass = " << format_double(s.molar_mass) << "\n";
    for (const auto& h : s.hydrates) {
      extra << "sorbent." << s.name << ".hydrate." << h.water_moles << " = "
            << format_double(h.hydrated_formation) << ", " << format_double(h.reaction_enthalpy)
            << "\n";
      if (h.min_stable_temperature_C)
        extra << "sorbent." << s.name << ".hydrate." << h.water_moles
              << ".min_stable_C = " << format_double(*h.min_stable_temperature_C) << "\n";
    }
  }
  if (!extra.str().empty()) out << "\n" << extra.str();

  return out.str();
}

ScenarioConfig apply_override(const ScenarioConfig& config, const std::string& key,
                              const std::string& value) {
  std::istringstream in(config.emit());
  std::ostringstream out;
  std::string line;
  bool found = false;
  std::string needle = key + " = ";
  while (std::getline(in, line)) {
    if (!found && line.rfind(needle, 0) == 0) {
      out << key << " = " << value << "\n";
      found = true;
    } else {
      out << line << "\n";
    }
  }
  if (!found)
    throw ConfigError("unknown parameter '" + key + "' (not part of the canonical document)");
  return ScenarioConfig::load(out.str());
}

Network build_network(const ScenarioConfig& config) {
  std::vector<ThermalNode> nodes;
  std::vector<ThermalLink> links;

  if (config.nodes.use_explicit()) {
    for (const auto& n : config.nodes.explicit_nodes)
      nodes.push_back({n.id, n.capacity, n.initial_K, n.dissipation,
                       n.id == config.nodes.explicit_boundary});
    for (const auto& l : config.nodes.explicit_links) {
      if (l.kind == LinkKind::Conduction)
        links.push_back(ThermalLink::conduction(l.node_a, l.node_b, l.value));
      else
        links.push_back(ThermalLink::radiation(l.node_a, l.node_b, l.value));
    }
  } else {
    const GeometryConfig& g = config.geometry;
    const MaterialConfig& m = config.materials;
    double t0 = config.run.initial_temperature_K;

    nodes.push_back({kCoreNode, config.nodes.core_capacity, t0, 0.0, false});
    nodes.push_back({kInnerShellNode, config.nodes.inner_capacity, t0, 0.0, false});
    nodes.push_back({kOuterShellNode, config.nodes.outer_capacity, t0, 0.0, false});
    nodes.push_back({kAmbientNode, 1.0, config.environment.profile.ambient_at(0.0), 0.0, true});

    links.push_back(
        ThermalLink::conduction(kCoreNode, kInnerShellNode, m.core_mount_resistance));

    double gap_resistance, gap_radiation, exterior_radiation;
    if (g.shape == ProbeShape::Sphere) {
      gap_resistance =
          spherical_shell_resistance(g.r_inner, g.r_outer, m.insulation_conductivity);
      gap_radiation = concentric_spheres_radiation_coefficient(
          g.r_inner, g.r_outer, m.emissivity_inner, m.emissivity_outer);
      exterior_radiation = surface_to_surroundings_radiation_coefficient(
          g.exterior_area(), m.emissivity_exterior);
    } else {
      double inner_area = 6.0 * g.side * g.side;
      gap_resistance = slab_resistance(g.gap, (inner_area + g.exterior_area()) / 2.0,
                                       m.insulation_conductivity);
      gap_radiation = parallel_surfaces_radiation_coefficient(inner_area, m.emissivity_inner,
                                                              m.emissivity_outer);
      exterior_radiation = surface_to_surroundings_radiation_coefficient(
          g.exterior_area(), m.emissivity_exterior);
    }
    links.push_back(ThermalLink::conduction(kInnerShellNode, kOuterShellNode, gap_resistance));
    links.push_back(ThermalLink::radiation(kInnerShellNode, kOuterShellNode, gap_radiation));
    if (m.bridge_resistance > 0)
      links.push_back(
          ThermalLink::conduction(kInnerShellNode, kOuterShellNode, m.bridge_resistance));
    links.push_back(ThermalLink::radiation(kOuterShellNode, kAmbientNode, exterior_radiation));
    if (m.exterior_contact_resistance > 0)
      links.push_back(
          ThermalLink::conduction(kOuterShellNode, kAmbientNode, m.exterior_contact_resistance));

    if (config.tess.enabled) {
      nodes.push_back({kBedNode, config.tess.bed_capacity, t0, 0.0, false});
      links.push_back(
          ThermalLink::conduction(kBedNode, config.tess.attach_node,
                                  config.tess.bed_link_resistance));
    }
    if (config.run.dissipation_W > 0) {
      for (auto& n : nodes)
        if (n.id == config.run.dissipation_node) n.dissipation = config.run.dissipation_W;
    }
  }

  return Network(std::move(nodes), std::move(links));
}

}  // namespace tessim
