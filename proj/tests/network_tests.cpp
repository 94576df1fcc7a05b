#include "doctest.h"

#include <cmath>
#include <vector>

#include "tessim/constants.hpp"
#include "tessim/errors.hpp"
#include "tessim/network.hpp"

using namespace tessim;

TEST_SUITE("network") {

TEST_CASE("spherical shell resistance matches the closed form") {
  // (1/0.035 - 1/0.055) / (4 pi 0.02)
  CHECK(spherical_shell_resistance(0.035, 0.055, 0.02) ==
        doctest::Approx(41.338946257635136).epsilon(1e-14));
}

TEST_CASE("spherical shell resistance agrees with a radial finite-difference stack") {
  // Chop the shell into 1000 sub-shells in series: the summed resistance must
  // converge to the analytic value.
  const double ri = 0.035, ro = 0.055, k = 0.02;
  const int n = 1000;
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    double a = ri + (ro - ri) * i / n;
    double b = ri + (ro - ri) * (i + 1) / n;
    total += spherical_shell_resistance(a, b, k);
  }
  CHECK(total == doctest::Approx(spherical_shell_resistance(ri, ro, k)).epsilon(1e-9));
}

TEST_CASE("spherical shell limits and scaling") {
  // Collapsing the shell removes the resistance entirely.
  CHECK(spherical_shell_resistance(0.05, 0.05 + 1e-13, 0.02) ==
        doctest::Approx(0.0).epsilon(1e-6));
  // Linearity in 1/k.
  double r1 = spherical_shell_resistance(0.035, 0.055, 0.02);
  double r2 = spherical_shell_resistance(0.035, 0.055, 0.04);
  CHECK(r1 == doctest::Approx(2.0 * r2).epsilon(1e-14));
  CHECK_THROWS_AS(spherical_shell_resistance(0.055, 0.035, 0.02), InvalidGeometry);
  CHECK_THROWS_AS(spherical_shell_resistance(0.035, 0.035, 0.02), InvalidGeometry);
  CHECK_THROWS_AS(spherical_shell_resistance(0.035, 0.055, 0.0), InvalidGeometry);
}

TEST_CASE("slab resistance") {
  // 0.02 / (0.02 * 0.36): six 0.06 m^2 faces in parallel as one mean slab.
  CHECK(slab_resistance(0.02, 0.36, 0.02) ==
        doctest::Approx(2.777777777777778).epsilon(1e-14));
  CHECK(slab_resistance(1e-12, 0.36, 0.02) < 1e-9);
  // Halving the area doubles the resistance.
  CHECK(slab_resistance(0.02, 0.18, 0.02) ==
        doctest::Approx(2.0 * slab_resistance(0.02, 0.36, 0.02)).epsilon(1e-14));
  CHECK_THROWS_AS(slab_resistance(0.0, 0.36, 0.02), InvalidGeometry);
  CHECK_THROWS_AS(slab_resistance(0.02, -1.0, 0.02), InvalidGeometry);
}

TEST_CASE("concentric spheres radiation coefficient") {
  double Ai = 4.0 * M_PI * 0.035 * 0.035;
  // Gray two-surface enclosure between the shells.
  CHECK(concentric_spheres_radiation_coefficient(0.035, 0.055, 0.8, 0.8) ==
        doctest::Approx(6.459892675054259e-10).epsilon(1e-14));
  // Black-body limit collapses to sigma * A_inner.
  CHECK(concentric_spheres_radiation_coefficient(0.035, 0.055, 1.0, 1.0) ==
        doctest::Approx(kStefanBoltzmann * Ai).epsilon(1e-14));
  // A non-emitting inner surface exchanges nothing.
  CHECK(concentric_spheres_radiation_coefficient(0.035, 0.055, 1e-12, 0.8) < 1e-18);
  CHECK_THROWS_AS(concentric_spheres_radiation_coefficient(0.035, 0.055, 0.0, 0.8),
                  InvalidInput);
  CHECK_THROWS_AS(concentric_spheres_radiation_coefficient(0.035, 0.055, 0.8, 1.2),
                  InvalidInput);
  CHECK_THROWS_AS(concentric_spheres_radiation_coefficient(0.055, 0.035, 0.8, 0.8),
                  InvalidGeometry);
}

TEST_CASE("parallel surfaces and surface-to-surroundings coefficients") {
  CHECK(parallel_surfaces_radiation_coefficient(0.06, 0.8, 0.8) ==
        doctest::Approx(kStefanBoltzmann * 0.06 / (1 / 0.8 + 1 / 0.8 - 1)).epsilon(1e-14));
  CHECK(surface_to_surroundings_radiation_coefficient(0.038, 0.8) ==
        doctest::Approx(0.8 * kStefanBoltzmann * 0.038).epsilon(1e-14));
  // Black parallel plates: sigma * A.
  CHECK(parallel_surfaces_radiation_coefficient(0.06, 1.0, 1.0) ==
        doctest::Approx(kStefanBoltzmann * 0.06).epsilon(1e-14));
}

TEST_CASE("link heat flow") {
  auto cond = ThermalLink::conduction("a", "b", 41.34);
  CHECK(link_heat_flow(cond, 253.0, 241.0) == doctest::Approx(12.0 / 41.34).epsilon(1e-14));
  CHECK(link_heat_flow(cond, 241.0, 241.0) == 0.0);
  // Antisymmetry under endpoint swap.
  CHECK(link_heat_flow(cond, 241.0, 253.0) ==
        doctest::Approx(-link_heat_flow(cond, 253.0, 241.0)).epsilon(1e-14));

  auto rad = ThermalLink::radiation("a", "b", 6.46e-10);
  double q = 6.46e-10 * (std::pow(253.0, 4) - std::pow(241.0, 4));
  CHECK(link_heat_flow(rad, 253.0, 241.0) == doctest::Approx(q).epsilon(1e-14));
  CHECK(link_heat_flow(rad, 250.0, 250.0) == 0.0);
  CHECK(link_heat_flow(rad, 241.0, 253.0) ==
        doctest::Approx(-link_heat_flow(rad, 253.0, 241.0)).epsilon(1e-14));
}

static std::vector<ThermalNode> two_nodes() {
  return {{"box", 100.0, 293.0, 0.0, false}, {"sky", 0.0, 241.0, 0.0, true}};
}

TEST_CASE("network validation") {
  // A single boundary and full connectivity are required.
  CHECK_NOTHROW(Network(two_nodes(), {ThermalLink::conduction("box", "sky", 50.0)}));

  auto nodes = two_nodes();
  CHECK_THROWS_AS(Network(nodes, {}), InvalidInput);  // box is unreachable

  nodes = two_nodes();
  nodes.push_back({"box", 10.0, 293.0, 0.0, false});  // duplicate id
  CHECK_THROWS_AS(Network(nodes, {ThermalLink::conduction("box", "sky", 50.0)}),
                  InvalidInput);

  nodes = {{"box", 100.0, 293.0, 0.0, false}};  // no boundary at all
  CHECK_THROWS_AS(Network(nodes, {}), InvalidInput);

  nodes = two_nodes();
  nodes[0].heat_capacity = 0.0;  // dynamic node without thermal mass
  CHECK_THROWS_AS(Network(nodes, {ThermalLink::conduction("box", "sky", 50.0)}),
                  InvalidInput);

  // Links must reference existing nodes.
  CHECK_THROWS_AS(Network(two_nodes(), {ThermalLink::conduction("box", "ghost", 50.0)}),
                  InvalidInput);
  // Conduction needs a positive resistance.
  CHECK_THROWS_AS(Network(two_nodes(), {ThermalLink::conduction("box", "sky", 0.0)}),
                  InvalidInput);
}

TEST_CASE("net flow sums link flows plus dissipation") {
  auto nodes = two_nodes();
  nodes[0].dissipation = 0.09;
  Network net(nodes, {ThermalLink::conduction("box", "sky", 50.0)});

  std::vector<double> T = {253.0, 241.0};
  std::size_t box = net.index_of("box");
  // Inflow = dissipation - conduction loss.
  CHECK(net.net_flow_into(box, T) == doctest::Approx(0.09 - 12.0 / 50.0).epsilon(1e-14));

  // At 241 + 0.09 * 50 = 245.5 K the node balances exactly.
  T[box] = 245.5;
  CHECK(net.net_flow_into(box, T) == doctest::Approx(0.0).epsilon(1e-14));

  CHECK(net.boundary_index() == net.index_of("sky"));
  CHECK(net.has_node("box"));
  CHECK_FALSE(net.has_node("ghost"));
  CHECK_THROWS_AS(net.index_of("ghost"), InvalidInput);
}

}  // TEST_SUITE
