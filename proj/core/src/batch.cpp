#include "tessim/batch.hpp"

#include <algorithm>
#include <future>
#include <iomanip>
#include <sstream>

#include "tessim/config.hpp"
#include "tessim/constants.hpp"
#include "tessim/errors.hpp"

namespace tessim {

namespace {

std::string sanitize(std::string text) {
  std::replace(text.begin(), text.end(), ',', ';');
  std::replace(text.begin(), text.end(), '\n', ' ');
  return text;
}

std::vector<ComparisonRow> rows_for_case(const ComparisonCase& item) {
  std::vector<ComparisonRow> rows;
  try {
    RunResult result = run_scenario(item.config);
    for (const std::string sensor : {"tmp36", "bma250"}) {
      std::string column = "T_" + sensor + "_K";
      auto it = std::find_if(result.summary.temperatures.begin(),
                             result.summary.temperatures.end(),
                             [&](const auto& entry) { return entry.first == column; });
      ComparisonRow row;
      row.case_label = item.label;
      row.sensor = sensor;
      if (it == result.summary.temperatures.end()) {
        row.error = "column " + column + " missing from the series";
      } else {
        row.ok = true;
        row.steady_reached = it->second.steady_reached;
        row.steady_C = it->second.steady_K - kCelsiusOffset;
        row.time_to_steady_min = it->second.time_to_steady_s / 60.0;
        row.time_above_threshold_min = it->second.time_above_threshold_s / 60.0;
      }
      rows.push_back(std::move(row));
    }
  } catch (const std::exception& e) {
    rows.clear();
    for (const std::string sensor : {"tmp36", "bma250"}) {
      ComparisonRow row;
      row.case_label = item.label;
      row.sensor = sensor;
      row.error = e.what();
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace

bool ComparisonReport::all_ok() const {
  return std::all_of(rows.begin(), rows.end(), [](const ComparisonRow& r) { return r.ok; });
}

std::string ComparisonReport::to_csv() const {
  std::ostringstream out;
  out << "case,sensor,steady_C,time_to_steady_min,time_above_threshold_min,error\n";
  for (const auto& r : rows) {
    out << sanitize(r.case_label) << ',' << r.sensor << ',';
    if (r.ok && r.steady_reached) out << format_double(r.steady_C);
    out << ',';
    if (r.ok && r.steady_reached) out << format_double(r.time_to_steady_min);
    out << ',';
    if (r.ok) out << format_double(r.time_above_threshold_min);
    out << ',' << sanitize(r.error) << '\n';
  }
  return out.str();
}

std::string ComparisonReport::to_text() const {
  // Rounded for reading at a glance; to_csv() carries full precision.
  auto fixed = [](double v, int places) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(places) << v;
    return s.str();
  };
  std::ostringstream out;
  out << std::left << std::setw(18) << "case" << std::setw(9) << "sensor" << std::right
      << std::setw(12) << "steady_C" << std::setw(16) << "t_steady_min" << std::setw(14)
      << "t_above_min" << '\n';
  for (const auto& r : rows) {
    out << std::left << std::setw(18) << r.case_label << std::setw(9) << r.sensor << std::right;
    if (!r.ok) {
      out << "  error: " << r.error << '\n';
      continue;
    }
    if (r.steady_reached) {
      out << std::setw(12) << fixed(r.steady_C, 2) << std::setw(16)
          << fixed(r.time_to_steady_min, 1);
    } else {
      out << std::setw(12) << "-" << std::setw(16) << "-";
    }
    out << std::setw(14) << fixed(r.time_above_threshold_min, 1) << '\n';
  }
  return out.str();
}

ComparisonReport run_comparison(const std::vector<ComparisonCase>& cases, bool parallel) {
  ComparisonReport report;
  if (parallel) {
    std::vector<std::future<std::vector<ComparisonRow>>> futures;
    futures.reserve(cases.size());
    for (const auto& item : cases)
      futures.push_back(
          std::async(std::launch::async, [&item] { return rows_for_case(item); }));
    for (auto& f : futures)
      for (auto& row : f.get()) report.rows.push_back(std::move(row));
  } else {
    for (const auto& item : cases)
      for (auto& row : rows_for_case(item)) report.rows.push_back(std::move(row));
  }
  return report;
}

std::vector<SweepPoint> run_sweep(const ScenarioConfig& base, const std::string& key,
                                  const std::vector<double>& values, bool parallel) {
  // Validate the key and build every configuration up front: a bad parameter
  // path must fail before any simulation starts.
  std::vector<ScenarioConfig> configs;
  configs.reserve(values.size());
  for (double v : values) configs.push_back(apply_override(base, key, format_double(v)));

  auto evaluate = [&](std::size_t i) {
    SweepPoint point;
    point.value = values[i];
    try {
      point.summary = run_scenario(configs[i]).summary;
      point.ok = true;
    } catch (const std::exception& e) {
      point.error = e.what();
    }
    return point;
  };

  std::vector<SweepPoint> points(values.size());
  if (parallel) {
    std::vector<std::future<SweepPoint>> futures;
    futures.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i)
      futures.push_back(std::async(std::launch::async, evaluate, i));
    for (std::size_t i = 0; i < futures.size(); ++i) points[i] = futures[i].get();
  } else {
    for (std::size_t i = 0; i < values.size(); ++i) points[i] = evaluate(i);
  }
  return points;
}

std::string sweep_csv(const std::string& key, const ScenarioConfig& base,
                      const std::vector<SweepPoint>& points) {
  std::string column = "T_" + base.controller.control_sensor().name + "_K";
  std::ostringstream out;
  out << key
      << ",steady_reached,steady_K,time_to_steady_min,time_above_threshold_min,"
         "area_above_ambient_K_min,residual_J,heat_released_J,heater_spent_J,error\n";
  for (const auto& p : points) {
    out << format_double(p.value) << ',';
    if (p.ok) {
      auto it = std::find_if(p.summary.temperatures.begin(), p.summary.temperatures.end(),
                             [&](const auto& entry) { return entry.first == column; });
      const ColumnSummary stats =
          it != p.summary.temperatures.end() ? it->second : ColumnSummary{};
      out << (stats.steady_reached ? "1" : "0") << ',';
      if (stats.steady_reached)
        out << format_double(stats.steady_K) << ','
            << format_double(stats.time_to_steady_s / 60.0) << ',';
      else
        out << ",,";
      out << format_double(stats.time_above_threshold_s / 60.0) << ','
          << format_double(stats.area_above_ambient_K_min) << ','
          << format_double(p.summary.residual_J) << ','
          << format_double(p.summary.tess_heat_released_J) << ','
          << format_double(p.summary.heater_energy_spent_J) << ",\n";
    } else {
      out << ",,,,,,,," << sanitize(p.error) << '\n';
    }
  }
  return out.str();
}

}  // namespace tessim
