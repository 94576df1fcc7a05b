#include "tessim/environment.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "tessim/errors.hpp"

namespace tessim {

std::string to_string(ProfileKind kind) {
  switch (kind) {
    case ProfileKind::Constant: return "constant";
    case ProfileKind::SquareWave: return "square_wave";
    case ProfileKind::Sinusoid: return "sinusoid";
    case ProfileKind::Table: return "table";
  }
  return "constant";
}

ProfileKind profile_kind_from_string(const std::string& name) {
  if (name == "constant") return ProfileKind::Constant;
  if (name == "square_wave") return ProfileKind::SquareWave;
  if (name == "sinusoid") return ProfileKind::Sinusoid;
  if (name == "table") return ProfileKind::Table;
  throw InvalidInput("unknown environment profile kind '" + name + "'");
}

EnvironmentProfile EnvironmentProfile::constant(double temperature_K) {
  EnvironmentProfile p;
  p.kind = ProfileKind::Constant;
  p.constant_K = temperature_K;
  p.validate();
  return p;
}

EnvironmentProfile EnvironmentProfile::square_wave(double day_K, double night_K, double period_s,
                                                   double phase_s) {
  EnvironmentProfile p;
  p.kind = ProfileKind::SquareWave;
  p.day_K = day_K;
  p.night_K = night_K;
  p.period_s = period_s;
  p.phase_s = phase_s;
  p.validate();
  return p;
}

EnvironmentProfile EnvironmentProfile::sinusoid(double day_K, double night_K, double period_s,
                                                double phase_s) {
  EnvironmentProfile p;
  p.kind = ProfileKind::Sinusoid;
  p.day_K = day_K;
  p.night_K = night_K;
  p.period_s = period_s;
  p.phase_s = phase_s;
  p.validate();
  return p;
}

EnvironmentProfile EnvironmentProfile::from_table(std::vector<std::pair<double, double>> samples) {
  EnvironmentProfile p;
  p.kind = ProfileKind::Table;
  p.table = std::move(samples);
  p.validate();
  return p;
}

void EnvironmentProfile::validate() const {
  auto check_temp = [](double T, const char* what) {
    if (!(T > 0) || !std::isfinite(T))
      throw InvalidInput(std::string("environment: ") + what + " must be a positive temperature");
  };
  switch (kind) {
    case ProfileKind::Constant:
      check_temp(constant_K, "constant temperature");
      break;
    case ProfileKind::SquareWave:
    case ProfileKind::Sinusoid:
      check_temp(day_K, "day temperature");
      check_temp(night_K, "night temperature");
      if (!(period_s > 0)) throw InvalidInput("environment: period must be positive");
      if (!std::isfinite(phase_s)) throw InvalidInput("environment: phase must be finite");
      if (day_K < night_K)
        throw InvalidInput("environment: day temperature must not be below night temperature");
      break;
    case ProfileKind::Table:
      if (table.size() < 2)
        throw InvalidInput("environment: table needs at least two samples");
      for (std::size_t i = 0; i < table.size(); ++i) {
        check_temp(table[i].second, "table temperature");
        if (i > 0 && !(table[i].first > table[i - 1].first))
          throw InvalidInput("environment: table times must be strictly increasing");
      }
      break;
  }
}

namespace {

// Position within the period, in [0, period). fmod is exact, so periodic
// profiles repeat exactly for times that are exact multiples of the period.
double phase_position(double t, double phase_s, double period_s) {
  double local = std::fmod(t - phase_s, period_s);
  if (local < 0) local += period_s;
  return local;
}

}  // namespace

double EnvironmentProfile::ambient_at(double t) const {
  switch (kind) {
    case ProfileKind::Constant:
      return constant_K;
    case ProfileKind::SquareWave: {
      double local = phase_position(t, phase_s, period_s);
      return local < 0.5 * period_s ? day_K : night_K;
    }
    case ProfileKind::Sinusoid: {
      double local = phase_position(t, phase_s, period_s);
      double mean = 0.5 * (day_K + night_K);
      double half_swing = 0.5 * (day_K - night_K);
      return mean + half_swing * std::cos(2.0 * std::numbers::pi * local / period_s);
    }
    case ProfileKind::Table: {
      if (t <= table.front().first) return table.front().second;
      if (t >= table.back().first) return table.back().second;
      auto it = std::upper_bound(table.begin(), table.end(), t,
                                 [](double v, const std::pair<double, double>& s) {
                                   return v < s.first;
                                 });
      auto lo = std::prev(it);
      double f = (t - lo->first) / (it->first - lo->first);
      return lo->second + f * (it->second - lo->second);
    }
  }
  return constant_K;
}

bool EnvironmentProfile::is_day(double t) const {
  switch (kind) {
    case ProfileKind::SquareWave: {
      double local = phase_position(t, phase_s, period_s);
      return local < 0.5 * period_s;
    }
    case ProfileKind::Sinusoid: {
      double local = phase_position(t, phase_s, period_s);
      return std::cos(2.0 * std::numbers::pi * local / period_s) >= 0.0;
    }
    default:
      return false;
  }
}

double EnvironmentProfile::min_temperature() const {
  switch (kind) {
    case ProfileKind::Constant: return constant_K;
    case ProfileKind::SquareWave:
    case ProfileKind::Sinusoid: return night_K;
    case ProfileKind::Table: {
      double m = table.front().second;
      for (const auto& s : table) m = std::min(m, s.second);
      return m;
    }
  }
  return constant_K;
}

double EnvironmentProfile::max_temperature() const {
  switch (kind) {
    case ProfileKind::Constant: return constant_K;
    case ProfileKind::SquareWave:
    case ProfileKind::Sinusoid: return day_K;
    case ProfileKind::Table: {
      double m = table.front().second;
      for (const auto& s : table) m = std::max(m, s.second);
      return m;
    }
  }
  return constant_K;
}

}  // namespace tessim
