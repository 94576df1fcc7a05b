#include "tessim/summary.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tessim/config.hpp"
#include "tessim/errors.hpp"

namespace tessim {

std::size_t SeriesTable::column_index(const std::string& name) const {
  auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw InvalidInput("series has no column '" + name + "'");
  return static_cast<std::size_t>(it - columns.begin());
}

bool SeriesTable::has_column(const std::string& name) const {
  return std::find(columns.begin(), columns.end(), name) != columns.end();
}

std::string SeriesTable::to_csv() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) out << ',';
    out << columns[i];
  }
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << format_double(row[i]);
    }
    out << '\n';
  }
  return out.str();
}

SeriesTable SeriesTable::from_csv(const std::string& text) {
  SeriesTable table;
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line.empty())
    throw InvalidInput("series CSV is empty");
  for (const auto& name : split_list(line)) table.columns.push_back(name);
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto parts = split_list(line);
    if (parts.size() != table.columns.size())
      throw InvalidInput("series CSV line " + std::to_string(line_no) + ": expected " +
                         std::to_string(table.columns.size()) + " values, got " +
                         std::to_string(parts.size()));
    std::vector<double> row;
    row.reserve(parts.size());
    for (const auto& p : parts) row.push_back(parse_double(p, "series value"));
    table.rows.push_back(std::move(row));
  }
  return table;
}

ColumnSummary summarize_column(const SeriesTable& series, const std::string& column,
                               const std::string& ambient_column, double threshold_K,
                               double steady_rate_K_per_min, double window_s) {
  std::size_t time_col = series.column_index("time_s");
  std::size_t value_col = series.column_index(column);
  std::size_t ambient_col = series.column_index(ambient_column);
  const auto& rows = series.rows;

  ColumnSummary s;
  if (rows.empty()) return s;

  // Settled window: walk back from the end until a sample-to-sample rate
  // exceeds the limit; the window must span at least window_s.
  std::size_t start = rows.size() - 1;
  while (start > 0) {
    double dt = rows[start][time_col] - rows[start - 1][time_col];
    double dT = rows[start][value_col] - rows[start - 1][value_col];
    if (dt <= 0) break;
    if (std::abs(dT) / dt * 60.0 >= steady_rate_K_per_min) break;
    --start;
  }
  double span = rows.back()[time_col] - rows[start][time_col];
  if (rows.size() > 1 && span >= window_s) {
    s.steady_reached = true;
    s.time_to_steady_s = rows[start][time_col];
    double sum = 0.0;
    for (std::size_t i = start; i < rows.size(); ++i) sum += rows[i][value_col];
    s.steady_K = sum / static_cast<double>(rows.size() - start);
  }

  for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
    double t0 = rows[i][time_col], t1 = rows[i + 1][time_col];
    double dt = t1 - t0;
    if (dt <= 0) continue;
    double a = rows[i][value_col], b = rows[i + 1][value_col];

    // Time at or above the threshold, crossing found by linear interpolation.
    bool a_on = a >= threshold_K, b_on = b >= threshold_K;
    if (a_on && b_on) {
      s.time_above_threshold_s += dt;
    } else if (a_on != b_on) {
      double frac = (threshold_K - a) / (b - a);
      s.time_above_threshold_s += a_on ? dt * frac : dt * (1.0 - frac);
    }

    // Area above ambient, trapezoid of the clamped excursion.
    double ea = std::max(0.0, a - rows[i][ambient_col]);
    double eb = std::max(0.0, b - rows[i + 1][ambient_col]);
    s.area_above_ambient_K_min += 0.5 * (ea + eb) * dt / 60.0;
  }
  return s;
}

std::string Summary::to_text() const {
  std::ostringstream out;
  auto put = [&out](std::string_view key, const std::string& value) {
    out << key << " = " << value << "\n";
  };
  auto put_d = [&put](std::string_view key, double v) { put(key, format_double(v)); };

  put_d("run.duration_s", duration_s);
  put_d("run.output_interval_s", output_interval_s);
  put_d("run.threshold_K", threshold_K);

  for (const auto& [name, c] : temperatures) {
    std::string base = "column." + name;
    put(base + ".steady_reached", c.steady_reached ? "true" : "false");
    if (c.steady_reached) {
      put_d(base + ".steady_K", c.steady_K);
      put_d(base + ".time_to_steady_s", c.time_to_steady_s);
    }
    put_d(base + ".time_above_threshold_s", c.time_above_threshold_s);
    put_d(base + ".area_above_ambient_K_min", c.area_above_ambient_K_min);
  }

  put_d("audit.source_heat_J", source_heat_J);
  put_d("audit.boundary_heat_J", boundary_heat_J);
  put_d("audit.residual_J", residual_J);
  put_d("audit.total_exchanged_J", total_exchanged_J);

  put_d("heater.energy_spent_J", heater_energy_spent_J);
  put_d("heater.budget_J", heater_budget_J);

  put("tess.present", tess_present ? "true" : "false");
  if (tess_present) {
    put_d("tess.capacity_Wh", tess_capacity_Wh);
    put_d("tess.heat_released_J", tess_heat_released_J);
    put_d("tess.final_hydration", tess_final_hydration);
    put_d("tess.final_water_g", tess_final_water_g);
  }
  return out.str();
}

}  // namespace tessim
