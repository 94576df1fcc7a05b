#include "tessim/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>

#include "tessim/config.hpp"
#include "tessim/constants.hpp"
#include "tessim/errors.hpp"
#include "tessim/solver.hpp"
#include "tessim/tess.hpp"

namespace tessim {

namespace {

/// Storage bed coupled into the integrator. Coupled state layout:
/// [hydration, reservoir_g, reaction_heat_J, bound_water_g].
class BedSource final : public CoupledSource {
public:
  BedSource(const ScenarioConfig& config, const Network& network)
      : bed_index_(network.index_of(kBedNode)) {
    prototype_.bed.sorbent = config.active_sorbent();
    prototype_.bed.dry_mass_g = config.tess.salt_mass_g;
    prototype_.bed.rate_constant = config.tess.rate_constant;
    prototype_.bed.degradation = config.tess.degradation;
    prototype_.reservoir.mass_g = config.tess.water_mass_g;
    prototype_.reservoir.temperature_K = config.tess.water_temperature_K;
    prototype_.reservoir.delivery = config.tess.delivery;
    prototype_.hydration = config.tess.initial_hydration;
    prototype_.water_absorbed_g =
        config.tess.initial_hydration * prototype_.bed.moles_salt() * kWaterMolarMass;
    prototype_.validate();
  }

  std::size_t state_size() const override { return 4; }

  void initial_state(std::span<double> state) const override {
    state[0] = prototype_.hydration;
    state[1] = prototype_.reservoir.mass_g;
    state[2] = 0.0;
    state[3] = prototype_.water_absorbed_g;
  }

  TessState materialize(std::span<const double> state) const {
    TessState s = prototype_;
    s.hydration = state[0];
    s.reservoir.mass_g = state[1];
    s.reaction_heat_released = state[2];
    s.water_absorbed_g = state[3];
    return s;
  }

  void store(const TessState& s, std::span<double> state) const {
    state[0] = s.hydration;
    state[1] = s.reservoir.mass_g;
    state[2] = s.reaction_heat_released;
    state[3] = s.water_absorbed_g;
  }

  void set_feed_limit(double feed_g_s) { feed_limit_ = feed_g_s; }
  double feed_limit() const { return feed_limit_; }
  std::size_t bed_index() const { return bed_index_; }

  TessRates current_rates(std::span<const double> state, double bed_temperature_K) const {
    return heat_release_rates(materialize(state), feed_limit_, bed_temperature_K);
  }

  void rates(double, std::span<const double> state, std::span<const double> temperatures,
             std::span<double> state_derivative, std::span<double> node_heat_W) const override {
    TessRates r = current_rates(state, temperatures[bed_index_]);
    double n_salt = prototype_.bed.moles_salt();
    state_derivative[0] = r.absorption_g_s / (n_salt * kWaterMolarMass);
    state_derivative[1] = -r.absorption_g_s;
    state_derivative[2] = r.reaction_heat_W;
    state_derivative[3] = r.absorption_g_s;
    node_heat_W[bed_index_] += r.net_heat_W;
  }

private:
  std::size_t bed_index_;
  TessState prototype_;
  double feed_limit_ = 0.0;
};

std::string temperature_column(const std::string& node_id) { return "T_" + node_id + "_K"; }

}  // namespace

RunResult run_scenario(const ScenarioConfig& config) {
  const TessConfig& tess = config.tess;
  const ControlPolicy& policy = config.controller.policy;
  if (policy.mode == ControlMode::TessValve && !tess.enabled)
    throw InvalidInput("controller.mode = tess_valve requires tess.enabled = true");

  Network network = build_network(config);
  EnvironmentProfile env = config.environment.profile;
  SolverOptions solver_options;
  solver_options.rel_tol = config.run.rel_tol;
  solver_options.abs_tol = config.run.abs_tol_K;
  TransientSolver solver(network, solver_options);
  NetworkState state = solver.initial_state(env);

  std::unique_ptr<BedSource> bed;
  std::vector<double> coupled;
  if (tess.enabled) {
    bed = std::make_unique<BedSource>(config, network);
    coupled.resize(bed->state_size());
    bed->initial_state(coupled);
  }

  const std::size_t node_count = network.node_count();
  const std::size_t sensor_tmp36 = network.index_of(config.controller.tmp36.attach_node);
  const std::size_t sensor_bma250 = network.index_of(config.controller.bma250.attach_node);
  const SensorModel& control_sensor = config.controller.control_sensor();
  const std::size_t control_index = network.index_of(control_sensor.attach_node);
  const std::size_t heater_index =
      policy.mode == ControlMode::Heater ? network.index_of(config.controller.heater_node) : 0;
  const bool solar = config.environment.day_absorbed_W > 0;
  const std::size_t solar_index = solar ? network.index_of(kOuterShellNode) : 0;

  double dissipation_total = 0.0;
  for (const auto& node : network.nodes()) dissipation_total += node.dissipation;

  // Actuation and resource registers.
  bool command = false;
  double budget_remaining = policy.mode == ControlMode::Heater ? policy.heater_budget_J : 0.0;
  double heater_spent = 0.0;

  // The bed's feed limit for the upcoming frame: the valve thermostat opens
  // and closes it; otherwise the reservoir line opens at the scheduled time.
  auto feed_limit_at = [&](double t) {
    if (!tess.enabled) return 0.0;
    if (policy.mode == ControlMode::TessValve)
      return command ? policy.max_feed_rate_g_s : 0.0;
    return t >= tess.open_delay_s ? std::numeric_limits<double>::infinity() : 0.0;
  };

  SeriesTable series;
  series.columns.push_back("time_s");
  for (const auto& node : network.nodes()) series.columns.push_back(temperature_column(node.id));
  series.columns.push_back("T_tmp36_K");
  series.columns.push_back("T_bma250_K");
  series.columns.insert(series.columns.end(),
                        {"Q_source_W", "Q_boundary_W", "E_source_J", "E_boundary_J",
                         "E_heater_J", "actuation", "q_heater_W", "feed_g_s"});
  if (tess.enabled)
    series.columns.insert(series.columns.end(),
                          {"x_bar", "water_g", "q_tess_W", "heat_released_J"});

  auto heater_power_now = [&] {
    return (policy.mode == ControlMode::Heater && command && budget_remaining > 0)
               ? policy.heater_power_W
               : 0.0;
  };

  auto emit_row = [&](double t) {
    std::vector<double> row;
    row.reserve(series.columns.size());
    row.push_back(t);
    for (std::size_t i = 0; i < node_count; ++i) row.push_back(state.temperatures[i]);
    row.push_back(sense(config.controller.tmp36, state.temperatures[sensor_tmp36]));
    row.push_back(sense(config.controller.bma250, state.temperatures[sensor_bma250]));

    TessRates rates;
    if (tess.enabled) {
      bed->set_feed_limit(feed_limit_at(t));
      rates = bed->current_rates(coupled, state.temperatures[bed->bed_index()]);
    }
    double q_solar = solar && env.is_day(t) ? config.environment.day_absorbed_W : 0.0;
    row.push_back(dissipation_total + heater_power_now() + q_solar + rates.net_heat_W);
    row.push_back(network.net_flow_into(network.boundary_index(), state.temperatures));
    row.push_back(state.source_heat);
    row.push_back(state.boundary_heat);
    row.push_back(heater_spent);
    row.push_back(command ? 1.0 : 0.0);
    row.push_back(heater_power_now());
    row.push_back(rates.absorption_g_s);
    if (tess.enabled) {
      row.push_back(coupled[0]);
      row.push_back(coupled[1]);
      row.push_back(rates.net_heat_W);
      row.push_back(coupled[2]);
    }
    series.rows.push_back(std::move(row));
  };

  auto controller_tick = [&] {
    ControlContext context;
    context.budget_remaining_J = budget_remaining;
    if (tess.enabled) {
      TessState s = bed->materialize(coupled);
      context.reservoir_empty = s.depleted();
      context.bed_saturated = s.saturated();
    }
    double sensed = sense(control_sensor, state.temperatures[control_index]);
    command = control_step(policy, sensed, command, context);
  };

  // One integrator frame; the heater may split it when the battery dies
  // mid-frame so the budget is honored exactly.
  std::vector<double> injected(node_count, 0.0);
  auto advance_frame = [&](double t0, double t1) {
    double dt = t1 - t0;
    if (dt <= 0) return;
    if (tess.enabled) bed->set_feed_limit(feed_limit_at(t0));

    std::fill(injected.begin(), injected.end(), 0.0);
    if (solar && env.is_day(t0)) injected[solar_index] += config.environment.day_absorbed_W;

    if (tess.enabled && config.environment.day_charge_W > 0 && env.is_day(t0)) {
      TessState s = bed->materialize(coupled);
      charge(s, config.environment.day_charge_W, dt, tess.charge_efficiency);
      bed->store(s, coupled);
    }

    double heater_W = heater_power_now();
    if (heater_W > 0) {
      double needed = heater_W * dt;
      if (needed > budget_remaining) {
        double t_split = t0 + budget_remaining / heater_W;
        injected[heater_index] += heater_W;
        solver.advance(state, t_split - t0, env, injected, bed.get(), coupled);
        heater_spent += budget_remaining;
        budget_remaining = 0.0;
        injected[heater_index] -= heater_W;
        solver.advance(state, t1 - t_split, env, injected, bed.get(), coupled);
        return;
      }
      injected[heater_index] += heater_W;
      heater_spent += needed;
      budget_remaining -= needed;
    }
    solver.advance(state, dt, env, injected, bed.get(), coupled);
  };

  const double duration = config.run.duration_s;
  const double sample = policy.sample_period_s;
  const double interval = config.run.output_interval_s;

  controller_tick();
  emit_row(0.0);

  double t = 0.0;
  long tick_count = 1, output_count = 1;
  bool row_emitted_at_end = duration == 0.0;
  while (t < duration) {
    double next_tick = static_cast<double>(tick_count) * sample;
    double next_output = static_cast<double>(output_count) * interval;
    double next = std::min({duration, next_tick, next_output});
    if (tess.enabled && policy.mode != ControlMode::TessValve &&
        t < tess.open_delay_s && tess.open_delay_s < next)
      next = tess.open_delay_s;  // the feed limit changes here

    advance_frame(t, next);
    t = next;

    if (t == next_tick) {
      controller_tick();
      ++tick_count;
    }
    if (t == next_output) {
      emit_row(t);
      ++output_count;
      if (t == duration) row_emitted_at_end = true;
    }
  }
  if (!row_emitted_at_end) emit_row(duration);

  RunResult result;
  result.series = std::move(series);
  result.summary = make_summary(result.series, config);
  return result;
}

Summary make_summary(const SeriesTable& series, const ScenarioConfig& config) {
  if (series.rows.empty()) throw InvalidInput("cannot summarize an empty series");
  Network network = build_network(config);

  Summary s;
  s.duration_s = series.rows.back()[series.column_index("time_s")];
  s.output_interval_s = config.run.output_interval_s;
  s.threshold_K = config.run.threshold_K;

  const std::string ambient_column =
      temperature_column(network.nodes()[network.boundary_index()].id);
  for (const auto& column : series.columns) {
    if (column.rfind("T_", 0) != 0 || column == ambient_column) continue;
    s.temperatures.emplace_back(
        column, summarize_column(series, column, ambient_column, config.run.threshold_K));
  }

  const auto& first = series.rows.front();
  const auto& last = series.rows.back();
  double stored = 0.0, stored_abs = 0.0;
  for (std::size_t i = 0; i < network.node_count(); ++i) {
    if (i == network.boundary_index()) continue;
    std::size_t col = series.column_index(temperature_column(network.nodes()[i].id));
    double dT = last[col] - first[col];
    stored += network.nodes()[i].heat_capacity * dT;
    stored_abs += network.nodes()[i].heat_capacity * std::abs(dT);
  }
  s.source_heat_J = last[series.column_index("E_source_J")];
  s.boundary_heat_J = last[series.column_index("E_boundary_J")];
  s.residual_J = std::abs(stored - (s.source_heat_J - s.boundary_heat_J));
  s.total_exchanged_J = std::abs(s.source_heat_J) + std::abs(s.boundary_heat_J) + stored_abs;

  s.heater_energy_spent_J = last[series.column_index("E_heater_J")];
  s.heater_budget_J =
      config.controller.policy.mode == ControlMode::Heater
          ? config.controller.policy.heater_budget_J
          : 0.0;

  s.tess_present = config.tess.enabled;
  if (s.tess_present) {
    SaltBed bed;
    bed.sorbent = config.active_sorbent();
    bed.dry_mass_g = config.tess.salt_mass_g;
    bed.rate_constant = config.tess.rate_constant;
    bed.degradation = config.tess.degradation;
    s.tess_capacity_Wh =
        total_capacity_Wh(bed, config.tess.initial_hydration, config.tess.water_mass_g);
    s.tess_heat_released_J = last[series.column_index("heat_released_J")];
    s.tess_final_hydration = last[series.column_index("x_bar")];
    s.tess_final_water_g = last[series.column_index("water_g")];
  }
  return s;
}

ScenarioConfig equal_volume_counterpart(const ScenarioConfig& config) {
  ScenarioConfig other = config;
  const GeometryConfig& g = config.geometry;
  if (g.shape == ProbeShape::Sphere) {
    other.geometry.shape = ProbeShape::Cube;
    other.geometry.side = std::cbrt(g.enclosed_volume());
    other.geometry.gap = g.r_outer - g.r_inner;
  } else {
    other.geometry.shape = ProbeShape::Sphere;
    other.geometry.r_inner = std::cbrt(g.enclosed_volume() * 3.0 / (4.0 * M_PI));
    other.geometry.r_outer = other.geometry.r_inner + g.gap;
  }
  other.geometry.validate();
  return other;
}

namespace {

double wall_thickness(const GeometryConfig& g) {
  return g.shape == ProbeShape::Sphere ? g.r_outer - g.r_inner : g.gap;
}

GeometryComparisonRow evaluate_hull(const ScenarioConfig& scenario, double dissipation_W,
                                    double boundary_K, double reference_K) {
  ScenarioConfig stripped = scenario;
  stripped.tess.enabled = false;
  stripped.controller.policy.mode = ControlMode::Passive;
  stripped.run.dissipation_W = dissipation_W;
  stripped.run.dissipation_node = kCoreNode;
  Network network = build_network(stripped);

  GeometryComparisonRow row;
  row.shape = to_string(scenario.geometry.shape);
  std::vector<double> steady = steady_state(network, boundary_K);
  row.steady_core_K = steady[network.index_of(kCoreNode)];
  row.steady_inner_K = steady[network.index_of(kInnerShellNode)];
  row.steady_outer_K = steady[network.index_of(kOuterShellNode)];
  row.hold_power_W = steady_hold_power(network, boundary_K, kCoreNode, reference_K);
  return row;
}

}  // namespace

GeometryComparison compare_geometries(const ScenarioConfig& a, const ScenarioConfig& b,
                                      double dissipation_W, double boundary_K,
                                      double reference_K) {
  if (a.nodes.use_explicit() || b.nodes.use_explicit())
    throw InvalidComparison("geometry comparison needs the built-in shell layout");
  if (dissipation_W < 0) throw InvalidInput("dissipation must be >= 0");
  if (!(boundary_K > 0) || !(reference_K > 0))
    throw InvalidInput("temperatures must be positive");

  double va = a.geometry.enclosed_volume(), vb = b.geometry.enclosed_volume();
  if (std::abs(va - vb) > 1e-6 * std::max(va, vb))
    throw InvalidComparison("enclosed volumes differ: " + format_double(va) + " vs " +
                            format_double(vb) + " m^3");
  if (std::abs(wall_thickness(a.geometry) - wall_thickness(b.geometry)) > 1e-9)
    throw InvalidComparison("wall thicknesses differ");
  if (!(a.materials == b.materials))
    throw InvalidComparison("material properties differ");

  GeometryComparison cmp;
  cmp.boundary_K = boundary_K;
  cmp.dissipation_W = dissipation_W;
  cmp.reference_K = reference_K;
  cmp.first = evaluate_hull(a, dissipation_W, boundary_K, reference_K);
  cmp.second = evaluate_hull(b, dissipation_W, boundary_K, reference_K);
  cmp.first_loses_less = cmp.first.hold_power_W < cmp.second.hold_power_W;
  return cmp;
}

std::string GeometryComparison::to_text() const {
  std::ostringstream out;
  out << "hull comparison at boundary " << format_double(boundary_K) << " K, payload "
      << format_double(dissipation_W) << " W\n";
  for (const GeometryComparisonRow* row : {&first, &second}) {
    out << row->shape << ": steady core " << format_double(row->steady_core_K) << " K (inner "
        << format_double(row->steady_inner_K) << " K, outer "
        << format_double(row->steady_outer_K) << " K), hold at "
        << format_double(reference_K) << " K costs " << format_double(row->hold_power_W)
        << " W\n";
  }
  const GeometryComparisonRow& less = first_loses_less ? first : second;
  const GeometryComparisonRow& more = first_loses_less ? second : first;
  out << less.shape << " loses less heat than " << more.shape << " ("
      << format_double(less.hold_power_W) << " W vs " << format_double(more.hold_power_W)
      << " W at the " << format_double(reference_K) << " K reference)\n";
  return out.str();
}

}  // namespace tessim
