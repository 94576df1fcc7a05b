#include "tessim/network.hpp"

#include <cmath>
#include <numbers>
#include <set>

#include "tessim/constants.hpp"
#include "tessim/errors.hpp"

namespace tessim {

ThermalLink ThermalLink::conduction(std::string a, std::string b, double resistance_K_W) {
  ThermalLink l;
  l.node_a = std::move(a);
  l.node_b = std::move(b);
  l.kind = LinkKind::Conduction;
  l.resistance = resistance_K_W;
  return l;
}

ThermalLink ThermalLink::radiation(std::string a, std::string b, double coefficient_W_K4) {
  ThermalLink l;
  l.node_a = std::move(a);
  l.node_b = std::move(b);
  l.kind = LinkKind::Radiation;
  l.coefficient = coefficient_W_K4;
  return l;
}

double link_heat_flow(const ThermalLink& link, double temperature_a_K, double temperature_b_K) {
  if (link.kind == LinkKind::Conduction)
    return (temperature_a_K - temperature_b_K) / link.resistance;
  double ta2 = temperature_a_K * temperature_a_K;
  double tb2 = temperature_b_K * temperature_b_K;
  return link.coefficient * (ta2 * ta2 - tb2 * tb2);
}

Network::Network(std::vector<ThermalNode> nodes, std::vector<ThermalLink> links)
    : nodes_(std::move(nodes)), links_(std::move(links)) {
  validate();
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    if (nodes_[i].is_boundary) boundary_ = i;
  link_indices_.reserve(links_.size());
  for (const auto& l : links_)
    link_indices_.emplace_back(index_of(l.node_a), index_of(l.node_b));
}

bool Network::has_node(std::string_view id) const {
  for (const auto& n : nodes_)
    if (n.id == id) return true;
  return false;
}

std::size_t Network::index_of(std::string_view id) const {
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    if (nodes_[i].id == id) return i;
  throw InvalidInput("network has no node '" + std::string(id) + "'");
}

double Network::net_flow_into(std::size_t index, const std::vector<double>& temperatures_K) const {
  double q = nodes_[index].dissipation;
  for (std::size_t j = 0; j < links_.size(); ++j) {
    auto [a, b] = link_indices_[j];
    if (a != index && b != index) continue;
    double flow = link_heat_flow(links_[j], temperatures_K[a], temperatures_K[b]);
    q += a == index ? -flow : flow;
  }
  return q;
}

void Network::validate() const {
  if (nodes_.empty()) throw InvalidInput("network: no nodes");

  std::set<std::string> ids;
  std::size_t boundary_count = 0;
  for (const auto& n : nodes_) {
    if (n.id.empty()) throw InvalidInput("network: node id must not be empty");
    if (!ids.insert(n.id).second)
      throw InvalidInput("network: duplicate node id '" + n.id + "'");
    if (n.is_boundary) {
      ++boundary_count;
    } else {
      if (!(n.heat_capacity > 0))
        throw InvalidInput("network: node '" + n.id + "' needs a positive heat capacity");
    }
    if (!(n.initial_temperature > 0))
      throw InvalidInput("network: node '" + n.id + "' needs a positive initial temperature");
    if (!std::isfinite(n.dissipation))
      throw InvalidInput("network: node '" + n.id + "' has a non-finite dissipation");
  }
  if (boundary_count != 1)
    throw InvalidInput("network: exactly one boundary node required, got " +
                       std::to_string(boundary_count));

  for (const auto& l : links_) {
    if (!ids.count(l.node_a) || !ids.count(l.node_b))
      throw InvalidInput("network: link references unknown node '" +
                         (ids.count(l.node_a) ? l.node_b : l.node_a) + "'");
    if (l.node_a == l.node_b)
      throw InvalidInput("network: link from '" + l.node_a + "' to itself");
    if (l.kind == LinkKind::Conduction && !(l.resistance > 0))
      throw InvalidInput("network: conduction link " + l.node_a + "-" + l.node_b +
                         " needs a positive resistance");
    if (l.kind == LinkKind::Radiation && !(l.coefficient >= 0))
      throw InvalidInput("network: radiation link " + l.node_a + "-" + l.node_b +
                         " needs a non-negative coefficient");
  }

  // Every node must reach the boundary or the dynamics are ill-posed.
  std::set<std::string> reached;
  for (const auto& n : nodes_)
    if (n.is_boundary) reached.insert(n.id);
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& l : links_) {
      bool a = reached.count(l.node_a) > 0, b = reached.count(l.node_b) > 0;
      if (a != b) {
        reached.insert(a ? l.node_b : l.node_a);
        grew = true;
      }
    }
  }
  for (const auto& n : nodes_)
    if (!reached.count(n.id))
      throw InvalidInput("network: node '" + n.id + "' is not connected to the boundary");
}

double spherical_shell_resistance(double r_inner_m, double r_outer_m,
                                  double conductivity_W_mK) {
  if (!(r_inner_m > 0) || !(r_outer_m > r_inner_m))
    throw InvalidGeometry("spherical shell: need 0 < r_inner < r_outer");
  if (!(conductivity_W_mK > 0))
    throw InvalidGeometry("spherical shell: conductivity must be positive");
  return (1.0 / r_inner_m - 1.0 / r_outer_m) / (4.0 * std::numbers::pi * conductivity_W_mK);
}

double slab_resistance(double thickness_m, double area_m2, double conductivity_W_mK) {
  if (!(thickness_m > 0) || !(area_m2 > 0) || !(conductivity_W_mK > 0))
    throw InvalidGeometry("slab: thickness, area and conductivity must be positive");
  return thickness_m / (conductivity_W_mK * area_m2);
}

double concentric_spheres_radiation_coefficient(double r_inner_m, double r_outer_m,
                                                double emissivity_inner,
                                                double emissivity_outer) {
  if (!(r_inner_m > 0) || !(r_outer_m > r_inner_m))
    throw InvalidGeometry("concentric spheres: need 0 < r_inner < r_outer");
  if (!(emissivity_inner > 0) || emissivity_inner > 1 || !(emissivity_outer > 0) ||
      emissivity_outer > 1)
    throw InvalidInput("concentric spheres: emissivities must be in (0, 1]");
  double area_inner = 4.0 * std::numbers::pi * r_inner_m * r_inner_m;
  double area_ratio = (r_inner_m * r_inner_m) / (r_outer_m * r_outer_m);
  double denom = 1.0 / emissivity_inner + area_ratio * (1.0 / emissivity_outer - 1.0);
  return kStefanBoltzmann * area_inner / denom;
}

double parallel_surfaces_radiation_coefficient(double area_m2, double emissivity_a,
                                               double emissivity_b) {
  if (!(area_m2 > 0)) throw InvalidGeometry("parallel surfaces: area must be positive");
  if (!(emissivity_a > 0) || emissivity_a > 1 || !(emissivity_b > 0) || emissivity_b > 1)
    throw InvalidInput("parallel surfaces: emissivities must be in (0, 1]");
  return kStefanBoltzmann * area_m2 / (1.0 / emissivity_a + 1.0 / emissivity_b - 1.0);
}

double surface_to_surroundings_radiation_coefficient(double area_m2, double emissivity) {
  if (!(area_m2 > 0)) throw InvalidGeometry("surface: area must be positive");
  if (!(emissivity > 0) || emissivity > 1)
    throw InvalidInput("surface: emissivity must be in (0, 1]");
  return emissivity * kStefanBoltzmann * area_m2;
}

}  // namespace tessim
