#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tessim/batch.hpp"
#include "tessim/errors.hpp"
#include "tessim/simulation.hpp"
#include "tessim/sorbent.hpp"

namespace tessim::cli {

namespace {

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write '" + path + "'");
  out << content;
}

int command_run(const std::string& config_path, const std::string& out_dir, bool emit_config) {
  ScenarioConfig config = ScenarioConfig::load_file(config_path);
  if (emit_config) {
    std::cout << config.emit();
    return 0;
  }
  RunResult result = run_scenario(config);

  std::filesystem::create_directories(out_dir);
  std::filesystem::path base = std::filesystem::path(out_dir) / config.run.label;
  write_file(base.string() + ".csv", result.series.to_csv());
  write_file(base.string() + "_summary.txt", result.summary.to_text());

  std::cout << result.summary.to_text();
  std::cerr << "wrote " << base.string() << ".csv and " << base.string() << "_summary.txt\n";
  return 0;
}

int command_compare(const std::vector<std::string>& config_paths, std::string labels_arg,
                    const std::string& csv_path, bool serial) {
  std::vector<std::string> labels;
  if (!labels_arg.empty()) {
    for (const auto& l : split_list(labels_arg)) labels.push_back(l);
    if (labels.size() != config_paths.size())
      throw InvalidInput("--labels needs exactly one label per config");
  } else {
    for (const auto& p : config_paths)
      labels.push_back(std::filesystem::path(p).stem().string());
  }

  std::vector<ComparisonCase> cases;
  for (std::size_t i = 0; i < config_paths.size(); ++i)
    cases.push_back({labels[i], ScenarioConfig::load_file(config_paths[i])});

  ComparisonReport report = run_comparison(cases, !serial);
  std::cout << report.to_text();
  if (!csv_path.empty()) write_file(csv_path, report.to_csv());
  return report.all_ok() ? 0 : 3;
}

int command_sweep(const std::string& config_path, const std::string& param,
                  const std::string& values_arg, bool serial) {
  ScenarioConfig base = ScenarioConfig::load_file(config_path);
  std::vector<double> values;
  for (const auto& v : split_list(values_arg)) values.push_back(parse_double(v, "--values"));
  if (values.empty()) throw InvalidInput("--values needs at least one number");

  auto points = run_sweep(base, param, values, !serial);
  std::cout << sweep_csv(param, base, points);
  return 0;
}

int command_sorbents(const std::string& export_path, const std::string& config_path) {
  std::string table;
  if (config_path.empty()) {
    table = sorbent_table_csv(builtin_sorbents());
  } else {
    table = sorbent_table_csv(ScenarioConfig::load_file(config_path).sorbents);
  }
  if (export_path.empty())
    std::cout << table;
  else
    write_file(export_path, table);
  return 0;
}

int command_geometry(const std::string& config_path, double dissipation_override,
                     double boundary_override, double reference_K) {
  ScenarioConfig config = ScenarioConfig::load_file(config_path);
  ScenarioConfig other = equal_volume_counterpart(config);
  double dissipation =
      dissipation_override >= 0 ? dissipation_override : config.run.dissipation_W;
  double boundary = boundary_override > 0 ? boundary_override
                                          : config.environment.profile.ambient_at(0.0);
  GeometryComparison cmp =
      compare_geometries(config, other, dissipation, boundary, reference_K);
  std::cout << cmp.to_text();
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"thermochemical probe heating simulator"};
  app.require_subcommand(1);

  // run
  std::string run_config, run_out = ".";
  bool run_emit = false;
  auto* cmd_run = app.add_subcommand("run", "simulate one scenario, write CSV + summary");
  cmd_run->add_option("config", run_config, "scenario file")->required();
  cmd_run->add_option("--out", run_out, "output directory (default .)");
  cmd_run->add_flag("--emit-config", run_emit, "print the canonical document and exit");

  // compare
  std::vector<std::string> cmp_configs;
  std::string cmp_labels, cmp_csv;
  bool cmp_serial = false;
  auto* cmd_cmp = app.add_subcommand("compare", "tabulate several scenarios side by side");
  cmd_cmp->add_option("configs", cmp_configs, "scenario files")->required()->expected(-1);
  cmd_cmp->add_option("--labels", cmp_labels, "comma-separated case labels");
  cmd_cmp->add_option("--csv", cmp_csv, "also write the table as CSV to this path");
  cmd_cmp->add_flag("--serial", cmp_serial, "run cases sequentially");

  // sweep
  std::string swp_config, swp_param, swp_values;
  bool swp_serial = false;
  auto* cmd_swp = app.add_subcommand("sweep", "re-run a scenario over a parameter range");
  cmd_swp->add_option("config", swp_config, "scenario file")->required();
  cmd_swp->add_option("--param", swp_param, "config key to vary")->required();
  cmd_swp->add_option("--values", swp_values, "comma-separated values")->required();
  cmd_swp->add_flag("--serial", swp_serial, "run points sequentially");

  // sorbents
  std::string srb_export, srb_config;
  auto* cmd_srb = app.add_subcommand("sorbents", "print the sorbent property table");
  cmd_srb->add_option("--export", srb_export, "write the CSV here instead of stdout");
  cmd_srb->add_option("--config", srb_config, "include sorbents declared in this scenario");

  // geometry
  std::string geo_config;
  double geo_dissipation = -1.0, geo_boundary = 0.0, geo_reference = 293.15;
  auto* cmd_geo =
      app.add_subcommand("geometry", "steady-state sphere-vs-cube hull comparison");
  cmd_geo->add_option("config", geo_config, "scenario file")->required();
  cmd_geo->add_option("--dissipation", geo_dissipation,
                      "payload heat in W (default: the scenario's)");
  cmd_geo->add_option("--boundary", geo_boundary,
                      "ambient in K (default: the scenario's at t = 0)");
  cmd_geo->add_option("--reference", geo_reference,
                      "core temperature for the loss-rate comparison (default 293.15 K)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;  // help/version exit cleanly, usage errors are config errors
  }

  try {
    if (cmd_run->parsed()) return command_run(run_config, run_out, run_emit);
    if (cmd_cmp->parsed()) return command_compare(cmp_configs, cmp_labels, cmp_csv, cmp_serial);
    if (cmd_swp->parsed()) return command_sweep(swp_config, swp_param, swp_values, swp_serial);
    if (cmd_srb->parsed()) return command_sorbents(srb_export, srb_config);
    if (cmd_geo->parsed())
      return command_geometry(geo_config, geo_dissipation, geo_boundary, geo_reference);
  } catch (const SolverError& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return 2;
  } catch (const NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}

}  // namespace tessim::cli
