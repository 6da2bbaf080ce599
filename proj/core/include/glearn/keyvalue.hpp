#pragma once

#include <cstdint>
#include <filesystem>
#include <initializer_list>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace glearn {

/// Sectioned key = value configuration text. `#` starts a comment, blank
/// lines are ignored, `[name]` opens a section. Keys preceding the first
/// section header belong to the unnamed global section. Duplicate keys
/// within one section are an error; sections may repeat.
struct KeyValueSection {
  std::string name;  ///< empty for the global section
  int line = 0;      ///< header line, 0 for the global section
  std::string source;
  std::vector<std::pair<std::string, std::string>> entries;

  bool has(std::string_view key) const;
  const std::string* find(std::string_view key) const;

  /// Typed getters; the non-`_or` forms throw ConfigError when absent.
  std::string get_string(std::string_view key) const;
  std::string get_string_or(std::string_view key, std::string fallback) const;
  double get_double(std::string_view key) const;
  double get_double_or(std::string_view key, double fallback) const;
  int get_int(std::string_view key) const;
  int get_int_or(std::string_view key, int fallback) const;
  std::uint64_t get_uint64_or(std::string_view key, std::uint64_t fallback) const;
  bool get_bool_or(std::string_view key, bool fallback) const;
  std::vector<double> get_doubles(std::string_view key) const;
  std::vector<int> get_ints(std::string_view key) const;
  std::vector<std::string> get_strings(std::string_view key) const;

  /// Throws ConfigError naming the first key outside `allowed`.
  void expect_keys(std::initializer_list<std::string_view> allowed) const;
};

struct KeyValueFile {
  std::string source;  ///< path or synthetic name, used in error messages
  std::vector<KeyValueSection> sections;  ///< [0] is always the global section

  static KeyValueFile parse_file(const std::filesystem::path& path);
  static KeyValueFile parse_string(std::string_view text, std::string source);

  const KeyValueSection& global() const { return sections.front(); }
  std::vector<const KeyValueSection*> named(std::string_view name) const;

  /// Throws ConfigError naming the first section outside `allowed`.
  void expect_sections(std::initializer_list<std::string_view> allowed) const;
};

}  // namespace glearn
