#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "helpers.hpp"
#include "tessim/errors.hpp"
#include "tessim/scenario.hpp"

using namespace tessim;

TEST_SUITE("scenario") {

TEST_CASE("defaults resolve from the builtin design") {
  auto cfg = ScenarioConfig::load(base_scenario());
  CHECK(cfg.geometry.shape == ProbeShape::Sphere);
  CHECK(cfg.geometry.r_inner == 0.035);
  CHECK(cfg.geometry.r_outer == 0.055);
  CHECK(cfg.materials.insulation_conductivity == 0.02);
  CHECK(cfg.nodes.core_capacity == 65.9);
  // Dissipation defaults to the power budget's listed heat total.
  CHECK(cfg.run.dissipation_W == doctest::Approx(0.09).epsilon(1e-12));
  CHECK(cfg.controller.policy.mode == ControlMode::Passive);
  CHECK_FALSE(cfg.tess.enabled);
  CHECK(cfg.environment.profile.kind == ProfileKind::Constant);
  CHECK(cfg.environment.profile.constant_K == 241.0);
  // The sensor pair ships with its calibration offsets.
  CHECK(cfg.controller.tmp36.bias_K == 2.0);
  CHECK(cfg.controller.bma250.bias_K == -1.0);
  CHECK(cfg.controller.control_sensor().name == "tmp36");
}

TEST_CASE("delivery mode picks the degradation default") {
  auto liquid = ScenarioConfig::load(base_scenario("tess.enabled = true\n"));
  CHECK(liquid.tess.delivery == WaterDelivery::Liquid);
  CHECK(liquid.tess.degradation == 1.0);

  auto vapor =
      ScenarioConfig::load(base_scenario("tess.enabled = true\ntess.delivery = vapor\n"));
  CHECK(vapor.tess.degradation == 0.0);

  // An explicit coefficient wins over the delivery default.
  auto pinned = ScenarioConfig::load(
      base_scenario("tess.enabled = true\ntess.degradation = 0.25\n"));
  CHECK(pinned.tess.degradation == 0.25);
}

TEST_CASE("unknown keys are rejected up front") {
  CHECK_THROWS_AS(ScenarioConfig::load(base_scenario("tess.watre_mass_g = 25\n")),
                  ConfigError);
  CHECK_THROWS_AS(ScenarioConfig::load(base_scenario("paint.color = red\n")), ConfigError);
}

TEST_CASE("canonical emission round-trips through the loader") {
  const std::string variants[] = {
      base_scenario(),
      base_scenario("controller.mode = heater\ncontroller.heater_power_W = 1.5\n"),
      base_scenario("tess.enabled = true\ntess.open_delay_s = 7200\n"),
      base_scenario("tess.enabled = true\ncontroller.mode = tess_valve\n"
                    "tess.delivery = vapor\ntess.salt_mass_g = 50\n"),
      base_scenario("geometry.shape = cube\ngeometry.side = 0.07\ngeometry.gap = 0.02\n"),
      "run.label = wave\nrun.duration_s = 7200\nrun.output_interval_s = 60\n"
      "environment.kind = square_wave\nenvironment.day_K = 270\n"
      "environment.night_K = 150\nenvironment.period_s = 10800\n"
      "environment.day_absorbed_W = 1.5\n",
      base_scenario("budget.mass.box = 100, 1.1, 110\n"
                    "budget.power.chip = 1, 3.3, 3.3, 1.5\n"),
      base_scenario("sorbent.KOH.formation_dry = -424.58\nsorbent.KOH.molar_mass = 56.11\n"
                    "sorbent.KOH.hydrate.2 = -1051.2, -130.6\n"
                    "tess.enabled = true\ntess.sorbent = KOH\n"),
  };
  for (const auto& text : variants) {
    CAPTURE(text);
    auto first = ScenarioConfig::load(text);
    auto second = ScenarioConfig::load(first.emit());
    CHECK(first == second);
    // Emission is canonical: emitting the reloaded scenario is byte-stable.
    CHECK(first.emit() == second.emit());
  }
}

TEST_CASE("custom budget rows replace the builtin tables") {
  auto cfg = ScenarioConfig::load(base_scenario("budget.mass.box = 100, 1.1, 110\n"
                                                "budget.power.chip = 1, 3.3, 3.3, 2\n"));
  REQUIRE(cfg.budget.mass.size() == 1);
  CHECK(cfg.budget.mass[0].name == "box");
  CHECK(cfg.budget.mass[0].max_mass_g == 110.0);
  REQUIRE(cfg.budget.power.size() == 1);
  // Totals default to the computed sums when not listed...
  CHECK(cfg.budget.listed_total_heat_mW == doctest::Approx(2.0).epsilon(1e-12));
  // ...and the default dissipation follows.
  CHECK(cfg.run.dissipation_W == doctest::Approx(0.002).epsilon(1e-12));

  CHECK_THROWS_AS(ScenarioConfig::load(base_scenario("budget.mass.box = 100, 1.1\n")),
                  ConfigError);
}

TEST_CASE("apply_override touches exactly one canonical key") {
  auto cfg = ScenarioConfig::load(base_scenario());
  auto hot = apply_override(cfg, "environment.temperature_K", "260");
  CHECK(hot.environment.profile.constant_K == 260.0);
  // Everything else is untouched.
  hot.environment.profile.constant_K = 241.0;
  CHECK(hot == cfg);

  CHECK_THROWS_AS(apply_override(cfg, "environment.temperatureK", "260"), ConfigError);
  CHECK_THROWS_AS(apply_override(cfg, "not.a.key", "1"), ConfigError);
  // The replacement value itself is validated by the reload.
  CHECK_THROWS_AS(apply_override(cfg, "run.duration_s", "banana"), ConfigError);
}

TEST_CASE("geometry checks") {
  GeometryConfig g;
  CHECK_NOTHROW(g.validate());
  CHECK(g.enclosed_volume() ==
        doctest::Approx(4.0 / 3.0 * M_PI * 0.035 * 0.035 * 0.035).epsilon(1e-12));
  CHECK(g.exterior_area() == doctest::Approx(4.0 * M_PI * 0.055 * 0.055).epsilon(1e-12));

  g.r_inner = 0.06;  // inside out
  CHECK_THROWS_AS(g.validate(), InvalidGeometry);

  GeometryConfig cube;
  cube.shape = ProbeShape::Cube;
  cube.side = 0.05;
  cube.gap = 0.02;
  CHECK_NOTHROW(cube.validate());
  CHECK(cube.enclosed_volume() == doctest::Approx(0.05 * 0.05 * 0.05).epsilon(1e-12));
  CHECK(cube.exterior_area() == doctest::Approx(6.0 * 0.09 * 0.09).epsilon(1e-12));
  cube.gap = 0.0;
  CHECK_THROWS_AS(cube.validate(), InvalidGeometry);
}

TEST_CASE("built network has the shell layout") {
  auto cfg = ScenarioConfig::load(base_scenario());
  Network net = build_network(cfg);
  // core, inner shell, outer shell, ambient boundary.
  CHECK(net.node_count() == 4);
  CHECK(net.has_node(kCoreNode));
  CHECK(net.has_node(kInnerShellNode));
  CHECK(net.has_node(kOuterShellNode));
  CHECK(net.boundary_index() == net.index_of(kAmbientNode));
  CHECK_FALSE(net.has_node(kBedNode));

  const auto& core = net.nodes()[net.index_of(kCoreNode)];
  CHECK(core.heat_capacity == 65.9);
  CHECK(core.dissipation == doctest::Approx(0.09).epsilon(1e-12));
  CHECK(core.initial_temperature == 293.15);
  // The boundary starts at the profile's t = 0 value.
  CHECK(net.nodes()[net.boundary_index()].initial_temperature == 241.0);

  // Enabling storage adds the bed node and its attachment.
  auto tess = ScenarioConfig::load(base_scenario("tess.enabled = true\n"));
  Network with_bed = build_network(tess);
  CHECK(with_bed.node_count() == 5);
  CHECK(with_bed.has_node(kBedNode));
  CHECK(with_bed.nodes()[with_bed.index_of(kBedNode)].heat_capacity == 60.0);

  // The bed can hang off a different node.
  auto moved = ScenarioConfig::load(
      base_scenario("tess.enabled = true\ntess.attach_node = core\n"));
  CHECK_NOTHROW(build_network(moved));
  auto nowhere = base_scenario("tess.enabled = true\ntess.attach_node = nope\n");
  CHECK_THROWS_AS(ScenarioConfig::load(nowhere), Error);
}

TEST_CASE("explicit node lists replace the builtin construction") {
  auto cfg = ScenarioConfig::load(
      "run.label = custom\nrun.duration_s = 600\nrun.output_interval_s = 60\n"
      "controller.tmp36_node = box\ncontroller.bma250_node = box\n"
      "environment.kind = constant\nenvironment.temperature_K = 241\n"
      "nodes.node.box = 100, 293, 0.05\n"
      "nodes.node.sky = 0, 241, 0\n"
      "nodes.boundary = sky\n"
      "nodes.link.1 = box, sky, conduction, 50\n");
  Network net = build_network(cfg);
  CHECK(net.node_count() == 2);
  CHECK(net.boundary_index() == net.index_of("sky"));
  CHECK(net.nodes()[net.index_of("box")].heat_capacity == 100.0);
  // Explicit layouts carry dissipation on the node rows themselves; the
  // run-level payload heat applies to the built-in shell only.
  CHECK(net.nodes()[net.index_of("box")].dissipation == 0.05);

  // Radiation links parse too.
  auto rad = ScenarioConfig::load(
      "run.label = custom\nrun.duration_s = 600\nrun.output_interval_s = 60\n"
      "run.dissipation_node = box\n"
      "controller.tmp36_node = box\ncontroller.bma250_node = box\n"
      "environment.kind = constant\nenvironment.temperature_K = 241\n"
      "nodes.node.box = 100, 293, 0.0\n"
      "nodes.node.sky = 0, 241, 0\n"
      "nodes.boundary = sky\n"
      "nodes.link.1 = box, sky, radiation, 1.7e-9\n");
  Network rnet = build_network(rad);
  CHECK(rnet.links()[0].kind == LinkKind::Radiation);

  // Dangling link endpoints are caught at load time.
  CHECK_THROWS_AS(ScenarioConfig::load(
                      "run.label = x\nrun.duration_s = 600\nrun.output_interval_s = 60\n"
                      "environment.kind = constant\nenvironment.temperature_K = 241\n"
                      "nodes.node.box = 100, 293, 0\n"
                      "nodes.boundary = box\n"
                      "nodes.link.1 = box, ghost, conduction, 50\n"),
                  Error);
}

TEST_CASE("table environments read an external two-column file") {
  std::string path = "tessim_env_table_test.csv";
  {
    std::ofstream out(path);
    out << "time_s,temperature_K\n0,260\n600,250\n1800,230\n";
  }
  auto cfg = ScenarioConfig::load(
      "run.label = tab\nrun.duration_s = 600\nrun.output_interval_s = 60\n"
      "environment.kind = table\nenvironment.table_file = " + path + "\n");
  CHECK(cfg.environment.profile.kind == ProfileKind::Table);
  REQUIRE(cfg.environment.profile.table.size() == 3);
  CHECK(cfg.environment.profile.ambient_at(300.0) == doctest::Approx(255.0).epsilon(1e-12));
  std::remove(path.c_str());

  CHECK_THROWS_AS(ScenarioConfig::load("run.label = tab\nrun.duration_s = 600\n"
                                       "run.output_interval_s = 60\n"
                                       "environment.kind = table\n"
                                       "environment.table_file = does_not_exist.csv\n"),
                  Error);
}

TEST_CASE("validation failures carry useful messages") {
  CHECK_THROWS_AS(ScenarioConfig::load(base_scenario("run.duration_s = -5\n")), Error);
  CHECK_THROWS_AS(ScenarioConfig::load(base_scenario("run.output_interval_s = 0\n")),
                  Error);
  CHECK_THROWS_AS(ScenarioConfig::load(base_scenario("materials.emissivity_outer = 1.4\n")),
                  Error);
  CHECK_THROWS_AS(ScenarioConfig::load(base_scenario("tess.enabled = true\n"
                                                     "tess.sorbent = Unobtainium\n")),
                  Error);
  CHECK_THROWS_AS(ScenarioConfig::load(base_scenario("controller.sensor = thermocouple\n")),
                  Error);
}

}  // TEST_SUITE
