#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tessim {

/// One `key = value` assignment, in document order.
struct ConfigEntry {
  std::string key;
  std::string value;
  int line = 0;
};

/// A parsed line-oriented configuration document.
///
/// Grammar, one statement per line:
///   section.key = value        # trailing comment
/// Blank lines and full-line comments are ignored. Keys are dotted paths of
/// [A-Za-z0-9_] segments and must be unique within a document. Values run to
/// the first unescaped '#' and are trimmed.
///
/// Consumers mark keys as used via the typed getters; require_all_consumed()
/// then rejects documents containing keys nobody recognised.
class ConfigDoc {
public:
  ConfigDoc() = default;

  /// Parses `text`. Throws ConfigError (with line number) on malformed
  /// statements, bad key syntax, or duplicate keys.
  static ConfigDoc parse(std::string_view text);

  /// Reads the file at `path` and parses it.
  static ConfigDoc parse_file(const std::string& path);

  bool has(std::string_view key) const;

  /// Raw value lookup; marks the key consumed when present.
  std::optional<std::string> get(std::string_view key) const;

  /// Typed lookups. Throw ConfigError (with the key's line) when the value
  /// does not parse as the requested type. The *_or forms return the fallback
  /// when the key is absent.
  double get_double(std::string_view key) const;
  double get_double_or(std::string_view key, double fallback) const;
  long get_int(std::string_view key) const;
  long get_int_or(std::string_view key, long fallback) const;
  bool get_bool(std::string_view key) const;
  bool get_bool_or(std::string_view key, bool fallback) const;
  std::string get_string(std::string_view key) const;
  std::string get_string_or(std::string_view key, std::string_view fallback) const;

  /// All entries whose key starts with `prefix` + '.', in document order.
  /// Does not mark them consumed.
  std::vector<ConfigEntry> entries_with_prefix(std::string_view prefix) const;

  /// Marks a key consumed without reading it (used for keys handled as part
  /// of a prefix scan).
  void mark_consumed(std::string_view key) const;

  /// Throws ConfigError listing every key never consumed by a getter.
  void require_all_consumed() const;

  const std::vector<ConfigEntry>& entries() const { return entries_; }
  int line_of(std::string_view key) const;

private:
  const ConfigEntry* find(std::string_view key) const;

  std::vector<ConfigEntry> entries_;
  mutable std::vector<bool> consumed_;
};

/// Splits a comma-separated value list, trimming each element. Empty input
/// yields an empty vector; empty elements are preserved as empty strings.
std::vector<std::string> split_list(std::string_view value);

/// Parses a floating-point number, requiring the whole string to match.
/// Throws ConfigError on failure (no line context).
double parse_double(std::string_view text, std::string_view what);

/// Shortest decimal representation that parses back to exactly `v`.
std::string format_double(double v);

}  // namespace tessim
