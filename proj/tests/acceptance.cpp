// Acceptance gate: end-to-end checks of the shipped library + scenarios,
// one verdict line per criterion. Exits non-zero if any line fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "tessim/config.hpp"
#include "tessim/constants.hpp"
#include "tessim/errors.hpp"
#include "tessim/simulation.hpp"
#include "tessim/solver.hpp"
#include "tessim/sorbent.hpp"
#include "tessim/tess.hpp"

using namespace tessim;

namespace {

struct Gate {
  bool all_ok = true;
  void verdict(int number, bool ok, const std::string& detail) {
    std::cout << (ok ? "PASS" : "FAIL") << " " << number << ": " << detail << "\n";
    all_ok = all_ok && ok;
  }
};

class Stopwatch {
public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

private:
  std::chrono::steady_clock::time_point start_;
};

std::string fmt(double v, int places = 2) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(places) << v;
  return s.str();
}

const ColumnSummary& column_stats(const Summary& summary, const std::string& column) {
  for (const auto& [name, stats] : summary.temperatures)
    if (name == column) return stats;
  throw InvalidInput("summary has no column " + column);
}

// --- 1: gravimetric storage densities of the bundled candidate table -------

void criterion_1(Gate& gate) {
  Stopwatch watch;
  struct Row {
    const char* salt;
    int level;
    double datasheet_Wh_kg;
  };
  const std::vector<Row> rows = {{"LiCl", 1, 370.0},  {"LiCl", 2, 720.0},  {"LiCl", 3, 1050.0},
                                 {"LiCl", 5, 1600.0}, {"MgSO4", 7, 870.0}, {"MgCl2", 6, 1100.0},
                                 {"SrBr2", 6, 370.0}, {"CaCl2", 6, 900.0}};
  bool ok = true;
  double worst = 0.0;
  for (const auto& row : rows) {
    const SorbentSpec& spec = find_sorbent(builtin_sorbents(), row.salt);
    double density =
        energy_storage_density(spec.hydrate(row.level).reaction_enthalpy, spec.molar_mass);
    double dev = std::abs(density - row.datasheet_Wh_kg) / row.datasheet_Wh_kg;
    worst = std::max(worst, dev);
    ok = ok && dev <= 0.03;
  }
  // The export path carries one line per (salt, hydrate) row plus the header.
  std::string csv = sorbent_table_csv(builtin_sorbents());
  long lines = std::count(csv.begin(), csv.end(), '\n');
  ok = ok && lines == 9;
  double elapsed = watch.seconds();
  ok = ok && elapsed < 1.0;
  gate.verdict(1, ok,
               "candidate table densities within 3% of data-sheet values (worst " +
                   fmt(100.0 * worst) + "%, " + std::to_string(lines) + " export rows, " +
                   fmt(elapsed, 3) + " s)");
}

// --- 2: formation balance reproduces the tabulated hydration enthalpies ----

void criterion_2(Gate& gate) {
  Stopwatch watch;
  const WaterEnthalpyConvention fitted;  // bound-water formation -248 kJ/mol
  int matched = 0;
  bool ok = true;
  for (const auto& spec : builtin_sorbents()) {
    for (const auto& hydrate : spec.hydrates) {
      double balance = reaction_enthalpy(spec, hydrate.water_moles, fitted);
      if (spec.name == "CaCl2") {
        // The one row whose listed enthalpy disagrees with its formation
        // data: the balance lands near -324 kJ/mol, the listing says -363.2.
        ok = ok && std::abs(balance - (-324.0)) <= 1.0;
        ok = ok && std::abs(hydrate.reaction_enthalpy - (-363.2)) <= 1e-9;
        ok = ok && std::abs(balance - hydrate.reaction_enthalpy) > 1.0;
      } else if (std::abs(balance - hydrate.reaction_enthalpy) <= 1.0) {
        ++matched;
      }
    }
  }
  ok = ok && matched == 7;
  double elapsed = watch.seconds();
  ok = ok && elapsed < 1.0;
  gate.verdict(2, ok,
               "formation balance at -248 kJ/mol water matches " + std::to_string(matched) +
                   "/7 listed enthalpies within 1 kJ/mol; CaCl2 flagged as inconsistent (" +
                   fmt(elapsed, 3) + " s)");
}

// --- 3: transient integrator against the analytic single-body response -----

void criterion_3(Gate& gate) {
  Stopwatch watch;
  const double C = 100.0, R = 50.0, T0 = 293.0, Tb = 241.0;
  Network network({{"body", C, T0, 0.0, false}, {"env", 1.0, Tb, 0.0, true}},
                  {ThermalLink::conduction("body", "env", R)});
  EnvironmentProfile env = EnvironmentProfile::constant(Tb);
  TransientSolver solver(network);
  NetworkState state = solver.initial_state(env);

  const double tau = C * R;
  double worst = 0.0;
  for (int frame = 1; frame <= 100; ++frame) {
    solver.advance(state, 10.0 * tau / 100.0, env);
    double t = 10.0 * tau * frame / 100.0;
    double exact = Tb + (T0 - Tb) * std::exp(-t / tau);
    worst = std::max(worst, std::abs(state.temperatures[0] - exact) / exact);
  }
  double elapsed = watch.seconds();
  bool ok = worst <= 1e-6 && elapsed < 1.0;
  gate.verdict(3, ok,
               "integrated single-body cooldown within 1e-6 of the exponential over ten time "
               "constants (max rel err " +
                   fmt(worst * 1e9, 2) + "e-9, " + fmt(elapsed, 3) + " s)");
}

// --- 4: every shipped scenario closes its energy books ---------------------

void criterion_4(Gate& gate) {
  const std::vector<std::string> shipped = {"freezer_passive", "freezer_heater", "freezer_tess",
                                            "lunar_night", "mars_diurnal", "asteroid_shadow"};
  bool ok = true;
  double worst = 0.0;
  std::string failed;
  for (const auto& name : shipped) {
    try {
      auto cfg = ScenarioConfig::load_file(scenario_dir() + "/" + name + ".cfg");
      auto result = run_scenario(cfg);
      double ratio = result.summary.residual_J /
                     std::max(result.summary.total_exchanged_J, 1.0);
      worst = std::max(worst, ratio);
      ok = ok && ratio <= 1e-3 && result.summary.total_exchanged_J > 0;
    } catch (const std::exception& e) {
      ok = false;
      failed = name + ": " + e.what();
    }
  }
  gate.verdict(4, ok,
               failed.empty()
                   ? "all 6 shipped scenarios balance energy to 1e-3 of turnover (worst " +
                         fmt(worst * 1e9, 3) + "e-9)"
                   : "scenario failed - " + failed);
}

// --- 5: bed capacity bound vs fine-step kinetics ----------------------------

void criterion_5(Gate& gate) {
  Stopwatch watch;
  SaltBed bed;
  bed.sorbent = find_sorbent(builtin_sorbents(), "LiCl");
  bed.dry_mass_g = 25.0;
  bed.degradation = 0.0;

  double capacity_Wh = total_capacity_Wh(bed, 0.0, 25.0);
  bool ok = std::abs(capacity_Wh - 20.822228018987204) <= 1e-9;

  TessState s;
  s.bed = bed;
  s.reservoir.mass_g = 25.0;
  double released_J = 0.0;
  const double dt = 0.25;
  for (double t = 0.0; t < 20.0 * 2700.0; t += dt) {
    TessRates r = heat_release_rates(s, std::numeric_limits<double>::infinity(), 273.15);
    double uptake_g = r.absorption_g_s * dt;
    s.reservoir.mass_g -= uptake_g;
    s.water_absorbed_g += uptake_g;
    s.hydration += uptake_g / 18.015 / s.bed.moles_salt();
    released_J += r.reaction_heat_W * dt;
  }
  double integrated_Wh = released_J / 3600.0;
  double dev = std::abs(integrated_Wh - capacity_Wh) / capacity_Wh;
  double elapsed = watch.seconds();
  ok = ok && dev <= 0.005 && elapsed < 1.0;
  gate.verdict(5, ok,
               "25 g / 25 g bed: capacity " + fmt(capacity_Wh, 3) + " Wh, fine-step release " +
                   fmt(integrated_Wh, 3) + " Wh (dev " + fmt(100.0 * dev, 3) + "%, " +
                   fmt(elapsed, 3) + " s)");
}

// --- 6: the bench-freezer trio -----------------------------------------------

void criterion_6(Gate& gate) {
  Stopwatch watch;
  auto run = [](const std::string& name) {
    return run_scenario(ScenarioConfig::load_file(scenario_dir() + "/" + name + ".cfg")).summary;
  };
  Summary passive = run("freezer_passive");
  Summary heater = run("freezer_heater");
  Summary tess = run("freezer_tess");

  auto hold_min = [](const Summary& s) {
    return column_stats(s, "T_tmp36_K").time_above_threshold_s / 60.0;
  };
  double hold_passive = hold_min(passive);
  double hold_heater = hold_min(heater);
  double hold_tess = hold_min(tess);
  bool order_ok = hold_tess > hold_heater && hold_heater > hold_passive;

  double extension_min = hold_tess - hold_passive;
  bool extension_ok = extension_min >= 126.0 && extension_min <= 234.0;

  double area_ratio = column_stats(tess, "T_tmp36_K").area_above_ambient_K_min /
                      column_stats(passive, "T_tmp36_K").area_above_ambient_K_min;
  bool ratio_ok = area_ratio >= 1.095 && area_ratio <= 1.825;

  bool steady_ok = true;
  for (const Summary* s : {&passive, &heater, &tess}) {
    const ColumnSummary& core = column_stats(*s, "T_core_K");
    const ColumnSummary& t36 = column_stats(*s, "T_tmp36_K");
    const ColumnSummary& bma = column_stats(*s, "T_bma250_K");
    steady_ok = steady_ok && core.steady_reached && std::abs(core.steady_K - 241.0) <= 1.0;
    steady_ok = steady_ok && t36.steady_reached &&
                std::abs(t36.steady_K - kCelsiusOffset - (-28.0)) <= 2.0;
    steady_ok = steady_ok && bma.steady_reached &&
                std::abs(bma.steady_K - kCelsiusOffset - (-32.0)) <= 2.0;
  }

  double elapsed = watch.seconds();
  bool ok = order_ok && extension_ok && ratio_ok && steady_ok && elapsed < 60.0;
  gate.verdict(6, ok,
               "freezer trio: holds " + fmt(hold_passive, 1) + "/" + fmt(hold_heater, 1) + "/" +
                   fmt(hold_tess, 1) + " min (ordering " + (order_ok ? "ok" : "BAD") +
                   "), storage extends the hold " + fmt(extension_min, 1) +
                   " min (window 126..234), warmth ratio " + fmt(area_ratio, 3) +
                   " (window 1.095..1.825), steady levels " + (steady_ok ? "ok" : "BAD") +
                   " (" + fmt(elapsed, 2) + " s)");
}

// --- 7: sphere vs equal-volume cube at the nominal payload ------------------

void criterion_7(Gate& gate) {
  Stopwatch watch;
  auto sphere = ScenarioConfig::load(base_scenario());
  auto cmp = compare_geometries(sphere, equal_volume_counterpart(sphere), 0.09, 241.0);
  double elapsed = watch.seconds();
  bool ok = cmp.first.shape == "sphere" && cmp.second.shape == "cube" && cmp.first_loses_less &&
            cmp.first.steady_core_K > cmp.second.steady_core_K && elapsed < 1.0;
  gate.verdict(7, ok,
               "equal-volume hulls at 90 mW: sphere holds " + fmt(cmp.first.steady_core_K, 3) +
                   " K vs cube " + fmt(cmp.second.steady_core_K, 3) + " K, hold power " +
                   fmt(cmp.first.hold_power_W, 4) + " W vs " + fmt(cmp.second.hold_power_W, 4) +
                   " W (" + fmt(elapsed, 3) + " s)");
}

// --- 8: maximum principle + determinism over randomized configurations ------

class Xorshift {
public:
  explicit Xorshift(std::uint64_t seed) : state_(seed) {}
  double uniform(double lo, double hi) {
    state_ ^= state_ << 13;
    state_ ^= state_ >> 7;
    state_ ^= state_ << 17;
    return lo + (hi - lo) * (static_cast<double>(state_ >> 11) * 0x1p-53);
  }
  int pick(int n) { return static_cast<int>(uniform(0.0, static_cast<double>(n))) % n; }

private:
  std::uint64_t state_;
};

std::string random_scenario_text(Xorshift& rng, double& lo_K, double& hi_K) {
  std::ostringstream cfg;
  cfg << "run.label = randomized\n";
  cfg << "run.duration_s = " << fmt(rng.uniform(1800.0, 14400.0), 0) << "\n";
  cfg << "run.output_interval_s = 300\n";
  // The temperatures that define the hull go through the exact round-trip
  // form, so the bound is computed from the very numbers the run sees.
  double initial = rng.uniform(150.0, 320.0);
  cfg << "run.initial_temperature_K = " << format_double(initial) << "\n";
  cfg << "run.dissipation_W = 0\n";

  if (rng.pick(2) == 0) {
    double r_inner = rng.uniform(0.02, 0.05);
    cfg << "geometry.shape = sphere\n";
    cfg << "geometry.r_inner = " << fmt(r_inner, 4) << "\n";
    cfg << "geometry.r_outer = " << fmt(r_inner + rng.uniform(0.01, 0.03), 4) << "\n";
  } else {
    cfg << "geometry.shape = cube\n";
    cfg << "geometry.side = " << fmt(rng.uniform(0.03, 0.08), 4) << "\n";
    cfg << "geometry.gap = " << fmt(rng.uniform(0.01, 0.03), 4) << "\n";
  }
  cfg << "materials.insulation_conductivity = " << fmt(rng.uniform(0.01, 0.1), 4) << "\n";
  cfg << "materials.emissivity_inner = " << fmt(rng.uniform(0.05, 1.0), 3) << "\n";
  cfg << "materials.emissivity_outer = " << fmt(rng.uniform(0.05, 1.0), 3) << "\n";
  cfg << "materials.emissivity_exterior = " << fmt(rng.uniform(0.05, 1.0), 3) << "\n";
  cfg << "materials.core_mount_resistance = " << fmt(rng.uniform(0.5, 5.0), 3) << "\n";
  cfg << "materials.bridge_resistance = " << fmt(rng.uniform(2.0, 50.0), 3) << "\n";
  cfg << "materials.exterior_contact_resistance = "
      << (rng.pick(3) == 0 ? "0" : fmt(rng.uniform(0.5, 5.0), 3)) << "\n";
  cfg << "nodes.core_capacity = " << fmt(rng.uniform(20.0, 400.0), 2) << "\n";
  cfg << "nodes.inner_capacity = " << fmt(rng.uniform(20.0, 400.0), 2) << "\n";
  cfg << "nodes.outer_capacity = " << fmt(rng.uniform(20.0, 400.0), 2) << "\n";

  double a = rng.uniform(120.0, 300.0), b = rng.uniform(120.0, 300.0);
  double warm = std::max(a, b), cold = std::min(a, b);
  switch (rng.pick(3)) {
    case 0:
      cfg << "environment.kind = constant\nenvironment.temperature_K = " << format_double(warm)
          << "\n";
      lo_K = hi_K = warm;
      break;
    case 1:
      cfg << "environment.kind = square_wave\n";
      cfg << "environment.day_K = " << format_double(warm) << "\n";
      cfg << "environment.night_K = " << format_double(cold) << "\n";
      cfg << "environment.period_s = " << fmt(rng.uniform(1800.0, 20000.0), 0) << "\n";
      lo_K = cold;
      hi_K = warm;
      break;
    default:
      cfg << "environment.kind = sinusoid\n";
      cfg << "environment.day_K = " << format_double(warm) << "\n";
      cfg << "environment.night_K = " << format_double(cold) << "\n";
      cfg << "environment.period_s = " << fmt(rng.uniform(1800.0, 20000.0), 0) << "\n";
      lo_K = cold;
      hi_K = warm;
      break;
  }
  lo_K = std::min(lo_K, initial);
  hi_K = std::max(hi_K, initial);
  return cfg.str();
}

void criterion_8(Gate& gate) {
  Stopwatch watch;
  bool bounded = true;
  int violations = 0;

  auto run_all = [&](bool check_bounds) {
    Xorshift rng(0x9e3779b97f4a7c15ull);
    std::string transcript;
    for (int i = 0; i < 100; ++i) {
      double lo = 0.0, hi = 0.0;
      auto cfg = ScenarioConfig::load(random_scenario_text(rng, lo, hi));
      auto result = run_scenario(cfg);
      transcript += result.series.to_csv();
      if (!check_bounds) continue;
      // Source-free network: no sample may leave the hull of the initial and
      // boundary temperatures.
      for (const char* col : {"T_core_K", "T_inner_shell_K", "T_outer_shell_K", "T_ambient_K"}) {
        std::size_t c = result.series.column_index(col);
        for (const auto& row : result.series.rows)
          if (row[c] < lo - 1e-7 || row[c] > hi + 1e-7) {
            bounded = false;
            ++violations;
          }
      }
    }
    return transcript;
  };

  std::string first = run_all(true);
  std::string second = run_all(false);
  bool identical = first == second;
  double elapsed = watch.seconds();
  bool ok = bounded && identical && elapsed < 60.0;
  gate.verdict(8, ok,
               "100 randomized source-free runs respect the temperature hull (" +
                   std::to_string(violations) + " violations) and repeat byte-identically (" +
                   std::string(identical ? "yes" : "NO") + ", " + fmt(elapsed, 2) + " s)");
}

}  // namespace

int main() {
  Gate gate;
  try {
    criterion_1(gate);
    criterion_2(gate);
    criterion_3(gate);
    criterion_4(gate);
    criterion_5(gate);
    criterion_6(gate);
    criterion_7(gate);
    criterion_8(gate);
  } catch (const std::exception& e) {
    std::cout << "FAIL -: unexpected exception: " << e.what() << "\n";
    return 1;
  }
  return gate.all_ok ? 0 : 1;
}
