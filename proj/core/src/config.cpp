#include "tessim/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "tessim/errors.hpp"

namespace tessim {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool valid_key(std::string_view key) {
  if (key.empty() || key.front() == '.' || key.back() == '.') return false;
  bool prev_dot = false;
  for (char c : key) {
    if (c == '.') {
      if (prev_dot) return false;
      prev_dot = true;
      continue;
    }
    prev_dot = false;
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return true;
}

}  // namespace

ConfigDoc ConfigDoc::parse(std::string_view text) {
  ConfigDoc doc;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    if (std::size_t hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    std::size_t eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("expected 'key = value', got '" + std::string(line) + "'", line_no);

    std::string key(trim(line.substr(0, eq)));
    std::string value(trim(line.substr(eq + 1)));
    if (!valid_key(key))
      throw ConfigError("malformed key '" + key + "'", line_no);
    if (value.empty())
      throw ConfigError("empty value for key '" + key + "'", line_no);
    if (doc.find(key))
      throw ConfigError("duplicate key '" + key + "'", line_no);

    doc.entries_.push_back({std::move(key), std::move(value), line_no});
  }
  doc.consumed_.assign(doc.entries_.size(), false);
  return doc;
}

ConfigDoc ConfigDoc::parse_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

const ConfigEntry* ConfigDoc::find(std::string_view key) const {
  for (const auto& e : entries_)
    if (e.key == key) return &e;
  return nullptr;
}

bool ConfigDoc::has(std::string_view key) const { return find(key) != nullptr; }

std::optional<std::string> ConfigDoc::get(std::string_view key) const {
  const ConfigEntry* e = find(key);
  if (!e) return std::nullopt;
  consumed_[static_cast<std::size_t>(e - entries_.data())] = true;
  return e->value;
}

void ConfigDoc::mark_consumed(std::string_view key) const {
  if (const ConfigEntry* e = find(key))
    consumed_[static_cast<std::size_t>(e - entries_.data())] = true;
}

int ConfigDoc::line_of(std::string_view key) const {
  const ConfigEntry* e = find(key);
  return e ? e->line : 0;
}

double ConfigDoc::get_double(std::string_view key) const {
  auto v = get(key);
  if (!v) throw ConfigError("missing required key '" + std::string(key) + "'");
  try {
    return parse_double(*v, key);
  } catch (const ConfigError& err) {
    throw ConfigError(err.what(), line_of(key));
  }
}

double ConfigDoc::get_double_or(std::string_view key, double fallback) const {
  return has(key) ? get_double(key) : fallback;
}

long ConfigDoc::get_int(std::string_view key) const {
  auto v = get(key);
  if (!v) throw ConfigError("missing required key '" + std::string(key) + "'");
  long out = 0;
  const char* first = v->data();
  const char* last = first + v->size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc() || ptr != last)
    throw ConfigError("value '" + *v + "' for '" + std::string(key) + "' is not an integer",
                      line_of(key));
  return out;
}

long ConfigDoc::get_int_or(std::string_view key, long fallback) const {
  return has(key) ? get_int(key) : fallback;
}

bool ConfigDoc::get_bool(std::string_view key) const {
  auto v = get(key);
  if (!v) throw ConfigError("missing required key '" + std::string(key) + "'");
  if (*v == "true") return true;
  if (*v == "false") return false;
  throw ConfigError("value '" + *v + "' for '" + std::string(key) + "' is not true/false",
                    line_of(key));
}

bool ConfigDoc::get_bool_or(std::string_view key, bool fallback) const {
  return has(key) ? get_bool(key) : fallback;
}

std::string ConfigDoc::get_string(std::string_view key) const {
  auto v = get(key);
  if (!v) throw ConfigError("missing required key '" + std::string(key) + "'");
  return *v;
}

std::string ConfigDoc::get_string_or(std::string_view key, std::string_view fallback) const {
  auto v = get(key);
  return v ? *v : std::string(fallback);
}

std::vector<ConfigEntry> ConfigDoc::entries_with_prefix(std::string_view prefix) const {
  std::vector<ConfigEntry> out;
  for (const auto& e : entries_) {
    if (e.key.size() > prefix.size() + 1 && e.key.compare(0, prefix.size(), prefix) == 0 &&
        e.key[prefix.size()] == '.')
      out.push_back(e);
  }
  return out;
}

void ConfigDoc::require_all_consumed() const {
  std::string unknown;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (!consumed_[i]) {
      if (!unknown.empty()) unknown += ", ";
      unknown += "'" + entries_[i].key + "' (line " + std::to_string(entries_[i].line) + ")";
    }
  }
  if (!unknown.empty()) throw ConfigError("unknown keys: " + unknown);
}

std::vector<std::string> split_list(std::string_view value) {
  std::vector<std::string> out;
  if (trim(value).empty()) return out;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = value.find(',', start);
    std::string_view piece = comma == std::string_view::npos
                                 ? value.substr(start)
                                 : value.substr(start, comma - start);
    out.emplace_back(trim(piece));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

double parse_double(std::string_view text, std::string_view what) {
  double out = 0;
  const char* first = text.data();
  const char* last = first + text.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc() || ptr != last)
    throw ConfigError("value '" + std::string(text) + "' for '" + std::string(what) +
                      "' is not a number");
  return out;
}

std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

}  // namespace tessim
