#pragma once

#include <sstream>
#include <string>
#include <vector>

// Minimal constant-ambient scenario shared across suites. The base lines and
// `extra` are merged key-wise with the last occurrence winning, so helpers
// can stack overrides without tripping the duplicate-key check.
inline std::string base_scenario(const std::string& extra = "") {
  std::string document =
      "run.label = test\n"
      "run.duration_s = 3600\n"
      "run.output_interval_s = 60\n"
      "environment.kind = constant\n"
      "environment.temperature_K = 241\n" +
      extra;

  auto key_of = [](const std::string& line) {
    auto eq = line.find('=');
    std::string key = eq == std::string::npos ? line : line.substr(0, eq);
    while (!key.empty() && (key.back() == ' ' || key.back() == '\t')) key.pop_back();
    return key;
  };

  std::vector<std::string> lines;
  {
    std::istringstream in(document);
    std::string line;
    while (std::getline(in, line))
      if (!line.empty()) lines.push_back(line);
  }

  std::string text;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string key = key_of(lines[i]);
    std::size_t winner = i;
    bool already_emitted = false;
    for (std::size_t j = 0; j < lines.size(); ++j) {
      if (key_of(lines[j]) != key) continue;
      if (j < i) already_emitted = true;
      winner = j;  // ends at the last occurrence
    }
    if (!already_emitted) text += lines[winner] + "\n";
  }
  return text;
}

inline std::string scenario_dir() {
#ifdef TESSIM_SCENARIO_DIR
  return TESSIM_SCENARIO_DIR;
#else
  return "scenarios";
#endif
}
