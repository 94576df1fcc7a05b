#include "tessim/sorbent.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <set>

#include "tessim/constants.hpp"
#include "tessim/errors.hpp"

namespace tessim {

void SorbentSpec::validate() const {
  if (name.empty()) throw InvalidInput("sorbent name must not be empty");
  if (!(molar_mass > 0))
    throw InvalidInput("sorbent '" + name + "': molar mass must be positive");
  if (hydrates.empty())
    throw InvalidInput("sorbent '" + name + "': at least one hydrate level required");
  int prev = 0;
  for (const auto& h : hydrates) {
    if (h.water_moles <= prev)
      throw InvalidInput("sorbent '" + name + "': hydrate levels must be ascending and positive");
    if (!(h.reaction_enthalpy < 0))
      throw InvalidInput("sorbent '" + name + "': hydration must be exothermic (negative enthalpy)");
    prev = h.water_moles;
  }
}

int SorbentSpec::max_hydration() const {
  return hydrates.empty() ? 0 : hydrates.back().water_moles;
}

bool SorbentSpec::has_hydrate(int water_moles) const {
  return std::any_of(hydrates.begin(), hydrates.end(),
                     [&](const HydrateVariant& h) { return h.water_moles == water_moles; });
}

const HydrateVariant& SorbentSpec::hydrate(int water_moles) const {
  for (const auto& h : hydrates)
    if (h.water_moles == water_moles) return h;
  throw UnknownHydrate("sorbent '" + name + "' has no hydrate with x = " +
                       std::to_string(water_moles));
}

double SorbentSpec::cumulative_heat(double x) const {
  if (!(x >= 0)) throw InvalidInput("hydration level must be non-negative");
  // Knots: (0, 0) then (x_k, |dHr_k|), linear in between, flat past the top.
  double prev_x = 0.0, prev_h = 0.0;
  for (const auto& h : hydrates) {
    double knot_x = h.water_moles;
    double knot_h = -h.reaction_enthalpy;
    if (x <= knot_x)
      return prev_h + (x - prev_x) / (knot_x - prev_x) * (knot_h - prev_h);
    prev_x = knot_x;
    prev_h = knot_h;
  }
  return prev_h;
}

double SorbentSpec::heat_per_mol_water(double x) const {
  if (!(x >= 0)) throw InvalidInput("hydration level must be non-negative");
  double prev_x = 0.0, prev_h = 0.0;
  for (const auto& h : hydrates) {
    double knot_x = h.water_moles;
    double knot_h = -h.reaction_enthalpy;
    if (x < knot_x) return (knot_h - prev_h) / (knot_x - prev_x);
    prev_x = knot_x;
    prev_h = knot_h;
  }
  return 0.0;  // saturated
}

double reaction_enthalpy(const SorbentSpec& spec, int water_moles,
                         const WaterEnthalpyConvention& convention) {
  const HydrateVariant& h = spec.hydrate(water_moles);
  return h.hydrated_formation -
         (water_moles * convention.water_formation + spec.dehydrated_formation);
}

double reaction_enthalpy_hess(std::span<const double> product_formations,
                              std::span<const double> reactant_formations) {
  double products = std::accumulate(product_formations.begin(), product_formations.end(), 0.0);
  double reactants = std::accumulate(reactant_formations.begin(), reactant_formations.end(), 0.0);
  return products - reactants;
}

double stepwise_enthalpy(const SorbentSpec& spec, int from_level, int to_level) {
  auto level_enthalpy = [&](int level) -> double {
    if (level == 0) return 0.0;
    return spec.hydrate(level).reaction_enthalpy;
  };
  return level_enthalpy(to_level) - level_enthalpy(from_level);
}

double energy_storage_density(double reaction_enthalpy_kJ_mol, double molar_mass_g_mol) {
  if (!(molar_mass_g_mol > 0)) throw InvalidInput("molar mass must be positive");
  double kJ_per_gram = std::abs(reaction_enthalpy_kJ_mol) / molar_mass_g_mol;
  return kJ_per_gram * kKJPerGramToWhPerKg;
}

std::vector<RankedSorbent> rank_sorbents(
    const std::vector<SorbentSpec>& specs, const RankWeights& weights,
    const std::map<std::string, OrdinalScores>& qualitative) {
  if (specs.empty()) throw InvalidInput("rank_sorbents: no candidates");
  const double ws[7] = {weights.water_uptake, weights.specific_energy, weights.stability,
                        weights.kinetics,     weights.availability,    weights.storage,
                        weights.safety};
  double weight_sum = 0;
  for (double w : ws) {
    if (w < 0) throw InvalidInput("rank_sorbents: weights must be non-negative");
    weight_sum += w;
  }
  if (!(weight_sum > 0)) throw InvalidInput("rank_sorbents: at least one weight must be positive");

  std::vector<double> uptake(specs.size()), energy(specs.size());
  std::vector<std::optional<double>> stable(specs.size());
  for (std::size_t i = 0; i < specs.size(); ++i) {
    specs[i].validate();
    const HydrateVariant& top = specs[i].hydrates.back();
    uptake[i] = top.water_moles;
    energy[i] = energy_storage_density(top.reaction_enthalpy, specs[i].molar_mass);
    stable[i] = top.min_stable_temperature_C;
  }
  double max_uptake = *std::max_element(uptake.begin(), uptake.end());
  double max_energy = *std::max_element(energy.begin(), energy.end());

  // Stability: colder tolerated temperature scores higher, scaled across the
  // candidates that report one; the rest sit at a neutral 0.5.
  double coldest = 0, warmest = 0;
  bool any_stable = false;
  for (const auto& s : stable) {
    if (!s) continue;
    if (!any_stable) {
      coldest = warmest = *s;
      any_stable = true;
    } else {
      coldest = std::min(coldest, *s);
      warmest = std::max(warmest, *s);
    }
  }

  std::vector<RankedSorbent> out(specs.size());
  for (std::size_t i = 0; i < specs.size(); ++i) {
    OrdinalScores q;
    if (auto it = qualitative.find(specs[i].name); it != qualitative.end()) q = it->second;
    for (double v : {q.kinetics, q.availability, q.storage, q.safety})
      if (v < 0 || v > 5) throw InvalidInput("rank_sorbents: ordinal scores must be in 0..5");

    double stability_score = 0.5;
    if (stable[i])
      stability_score = warmest == coldest ? 1.0 : (warmest - *stable[i]) / (warmest - coldest);

    const double vs[7] = {max_uptake > 0 ? uptake[i] / max_uptake : 0.0,
                          max_energy > 0 ? energy[i] / max_energy : 0.0,
                          stability_score,
                          q.kinetics / 5.0,
                          q.availability / 5.0,
                          q.storage / 5.0,
                          q.safety / 5.0};
    double score = 0;
    for (int c = 0; c < 7; ++c) score += ws[c] * vs[c];
    out[i] = {specs[i].name, score / weight_sum};
  }

  double best = 0;
  for (const auto& r : out) best = std::max(best, r.score);
  if (best > 0)
    for (auto& r : out) r.score /= best;

  std::sort(out.begin(), out.end(), [](const RankedSorbent& a, const RankedSorbent& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.name < b.name;
  });
  return out;
}

const std::vector<SorbentSpec>& builtin_sorbents() {
  static const std::vector<SorbentSpec> table = [] {
    std::vector<SorbentSpec> t;
    t.push_back({"LiCl",
                 -408.0,
                 42.4,
                 {{1, -712.0, -56.0, std::nullopt},
                  {2, -1013.7, -109.7, std::nullopt},
                  {3, -1311.0, -159.0, std::nullopt},
                  {5, -1889.11, -241.11, -80.0}}});
    t.push_back({"MgSO4", -1278.0, 120.36, {{7, -3388.0, -374.0, std::nullopt}}});
    t.push_back({"MgCl2", -641.0, 95.21, {{6, -2499.0, -370.0, std::nullopt}}});
    t.push_back({"SrBr2", -717.0, 247.4, {{6, -2531.0, -326.0, std::nullopt}}});
    t.push_back({"CaCl2", -795.0, 110.98, {{6, -2607.0, -363.2, std::nullopt}}});
    for (const auto& s : t) s.validate();
    return t;
  }();
  return table;
}

const SorbentSpec& find_sorbent(const std::vector<SorbentSpec>& specs, const std::string& name) {
  for (const auto& s : specs)
    if (s.name == name) return s;
  throw InvalidInput("unknown sorbent '" + name + "'");
}

std::string sorbent_table_csv(const std::vector<SorbentSpec>& specs) {
  std::string out =
      "salt,water_moles,molar_mass_g_mol,formation_dry_kJ_mol,formation_hydrate_kJ_mol,"
      "reaction_enthalpy_kJ_mol,energy_density_Wh_kg,min_stable_temperature_C\n";
  for (const auto& s : specs) {
    for (const auto& h : s.hydrates) {
      out += s.name;
      out += ',' + format_double(h.water_moles);
      out += ',' + format_double(s.molar_mass);
      out += ',' + format_double(s.dehydrated_formation);
      out += ',' + format_double(h.hydrated_formation);
      out += ',' + format_double(h.reaction_enthalpy);
      out += ',' + format_double(energy_storage_density(h.reaction_enthalpy, s.molar_mass));
      out += ',';
      if (h.min_stable_temperature_C) out += format_double(*h.min_stable_temperature_C);
      out += '\n';
    }
  }
  return out;
}

std::vector<SorbentSpec> load_sorbents(const ConfigDoc& doc) {
  std::vector<SorbentSpec> out = builtin_sorbents();

  std::vector<std::string> order;  // declaration order of new names
  std::set<std::string> seen;
  for (const auto& e : doc.entries_with_prefix("sorbent")) {
    std::string rest = e.key.substr(std::string("sorbent.").size());
    std::string name = rest.substr(0, rest.find('.'));
    if (name.empty() || name == rest)
      throw ConfigError("malformed sorbent key '" + e.key + "'", e.line);
    if (seen.insert(name).second) order.push_back(name);
  }

  for (const std::string& name : order) {
    std::string base = "sorbent." + name;
    SorbentSpec spec;
    spec.name = name;
    spec.dehydrated_formation = doc.get_double(base + ".formation_dry");
    spec.molar_mass = doc.get_double(base + ".molar_mass");

    for (const auto& e : doc.entries_with_prefix(base + ".hydrate")) {
      std::string tail = e.key.substr((base + ".hydrate.").size());
      if (tail.find('.') != std::string::npos) continue;  // .min_stable_C handled below
      HydrateVariant h;
      auto [ptr, ec] = std::from_chars(tail.data(), tail.data() + tail.size(), h.water_moles);
      if (ec != std::errc() || ptr != tail.data() + tail.size())
        throw ConfigError("hydrate level in '" + e.key + "' is not an integer", e.line);
      auto parts = split_list(e.value);
      if (parts.size() != 2)
        throw ConfigError("'" + e.key + "' expects 'formation_kJ_mol, reaction_kJ_mol'", e.line);
      h.hydrated_formation = parse_double(parts[0], e.key);
      h.reaction_enthalpy = parse_double(parts[1], e.key);
      doc.mark_consumed(e.key);
      if (doc.has(e.key + ".min_stable_C"))
        h.min_stable_temperature_C = doc.get_double(e.key + ".min_stable_C");
      spec.hydrates.push_back(h);
    }
    std::sort(spec.hydrates.begin(), spec.hydrates.end(),
              [](const HydrateVariant& a, const HydrateVariant& b) {
                return a.water_moles < b.water_moles;
              });
    spec.validate();

    auto existing = std::find_if(out.begin(), out.end(),
                                 [&](const SorbentSpec& s) { return s.name == name; });
    if (existing != out.end())
      *existing = spec;
    else
      out.push_back(spec);
  }
  return out;
}

}  // namespace tessim
