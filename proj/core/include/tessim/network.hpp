#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace tessim {

/// Exactly two coupling mechanisms exist between nodes; gas-gap convection is
/// folded into an effective conduction resistance.
enum class LinkKind { Conduction, Radiation };
inline constexpr int kLinkKindCount = 2;

/// A lumped thermal mass (or the single prescribed-temperature boundary).
struct ThermalNode {
  std::string id;
  double heat_capacity = 0.0;         // J/K, > 0 unless boundary
  double initial_temperature = 0.0;   // K
  double dissipation = 0.0;           // W, steady internal heat release
  bool is_boundary = false;

  bool operator==(const ThermalNode&) const = default;
};

/// A two-node coupling. Conduction: q = (Ta - Tb) / resistance.
/// Radiation: q = coefficient * (Ta^4 - Tb^4), coefficient in W/K^4
/// (effective emissivity x Stefan-Boltzmann x area x view factor).
struct ThermalLink {
  std::string node_a;
  std::string node_b;
  LinkKind kind = LinkKind::Conduction;
  double resistance = 0.0;    // K/W, conduction only, > 0
  double coefficient = 0.0;   // W/K^4, radiation only, >= 0

  static ThermalLink conduction(std::string a, std::string b, double resistance_K_W);
  static ThermalLink radiation(std::string a, std::string b, double coefficient_W_K4);

  bool operator==(const ThermalLink&) const = default;
};

/// Heat flow through a link, W, positive from node_a towards node_b.
double link_heat_flow(const ThermalLink& link, double temperature_a_K, double temperature_b_K);

/// A validated node/link graph with exactly one boundary node; every other
/// node must have positive capacity and a path to the boundary.
class Network {
public:
  Network(std::vector<ThermalNode> nodes, std::vector<ThermalLink> links);

  const std::vector<ThermalNode>& nodes() const { return nodes_; }
  const std::vector<ThermalLink>& links() const { return links_; }

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t boundary_index() const { return boundary_; }

  /// Index of a node by id; throws InvalidInput when absent.
  std::size_t index_of(std::string_view id) const;
  bool has_node(std::string_view id) const;

  /// Link endpoints resolved to node indices, aligned with links().
  const std::vector<std::pair<std::size_t, std::size_t>>& link_indices() const {
    return link_indices_;
  }

  /// Sum of heat flows into node `index` given node temperatures, plus the
  /// node's own dissipation. At a steady state this is zero for every
  /// non-boundary node.
  double net_flow_into(std::size_t index, const std::vector<double>& temperatures_K) const;

private:
  void validate() const;

  std::vector<ThermalNode> nodes_;
  std::vector<ThermalLink> links_;
  std::vector<std::pair<std::size_t, std::size_t>> link_indices_;
  std::size_t boundary_ = 0;
};

/// Conduction resistance of a spherical shell, K/W:
///   R = (1/r_inner - 1/r_outer) / (4 pi k)
double spherical_shell_resistance(double r_inner_m, double r_outer_m,
                                  double conductivity_W_mK);

/// Conduction resistance of a flat slab, K/W: R = thickness / (k A).
double slab_resistance(double thickness_m, double area_m2, double conductivity_W_mK);

/// Radiation exchange coefficient (W/K^4) between concentric spheres:
///   sigma * A_inner / (1/eps_inner + (A_inner/A_outer) * (1/eps_outer - 1))
double concentric_spheres_radiation_coefficient(double r_inner_m, double r_outer_m,
                                                double emissivity_inner,
                                                double emissivity_outer);

/// Radiation exchange coefficient (W/K^4) between large parallel surfaces of
/// equal area: sigma * A / (1/eps_a + 1/eps_b - 1).
double parallel_surfaces_radiation_coefficient(double area_m2, double emissivity_a,
                                               double emissivity_b);

/// Radiation coefficient (W/K^4) of a convex surface against large
/// surroundings: emissivity * sigma * area.
double surface_to_surroundings_radiation_coefficient(double area_m2, double emissivity);

}  // namespace tessim
