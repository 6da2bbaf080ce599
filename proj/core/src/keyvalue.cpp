#include "glearn/keyvalue.hpp"

#include <algorithm>
#include <charconv>
#include <climits>
#include <fstream>
#include <sstream>

#include "glearn/errors.hpp"

namespace glearn {

namespace {

std::string_view trim(std::string_view s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string_view::npos) return {};
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

[[noreturn]] void fail(const std::string& source, std::string_view what) {
  throw ConfigError(source + ": " + std::string(what));
}

double parse_double(const std::string& source, std::string_view key, std::string_view text) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    fail(source, "key '" + std::string(key) + "': '" + std::string(text) + "' is not a number");
  }
  return value;
}

long long parse_integer(const std::string& source, std::string_view key, std::string_view text) {
  long long value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    fail(source, "key '" + std::string(key) + "': '" + std::string(text) + "' is not an integer");
  }
  return value;
}

std::vector<std::string> split_words(std::string_view text) {
  std::vector<std::string> words;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < text.size() && text[j] != ' ' && text[j] != '\t') ++j;
    if (j > i) words.emplace_back(text.substr(i, j - i));
    i = j;
  }
  return words;
}

}  // namespace

bool KeyValueSection::has(std::string_view key) const { return find(key) != nullptr; }

const std::string* KeyValueSection::find(std::string_view key) const {
  for (const auto& [k, v] : entries) {
    if (k == key) return &v;
  }
  return nullptr;
}

std::string KeyValueSection::get_string(std::string_view key) const {
  const std::string* v = find(key);
  if (v == nullptr) {
    fail(source, (name.empty() ? "missing key '" : "section [" + name + "] missing key '") +
                     std::string(key) + "'");
  }
  return *v;
}

std::string KeyValueSection::get_string_or(std::string_view key, std::string fallback) const {
  const std::string* v = find(key);
  return v != nullptr ? *v : std::move(fallback);
}

double KeyValueSection::get_double(std::string_view key) const {
  return parse_double(source, key, get_string(key));
}

double KeyValueSection::get_double_or(std::string_view key, double fallback) const {
  const std::string* v = find(key);
  return v != nullptr ? parse_double(source, key, *v) : fallback;
}

int KeyValueSection::get_int(std::string_view key) const {
  const long long v = parse_integer(source, key, get_string(key));
  if (v < INT_MIN || v > INT_MAX) fail(source, "key '" + std::string(key) + "' out of range");
  return static_cast<int>(v);
}

int KeyValueSection::get_int_or(std::string_view key, int fallback) const {
  return find(key) != nullptr ? get_int(key) : fallback;
}

std::uint64_t KeyValueSection::get_uint64_or(std::string_view key, std::uint64_t fallback) const {
  const std::string* v = find(key);
  if (v == nullptr) return fallback;
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), value);
  if (ec != std::errc{} || ptr != v->data() + v->size()) {
    fail(source, "key '" + std::string(key) + "': '" + *v + "' is not an unsigned integer");
  }
  return value;
}

bool KeyValueSection::get_bool_or(std::string_view key, bool fallback) const {
  const std::string* v = find(key);
  if (v == nullptr) return fallback;
  if (*v == "true" || *v == "1" || *v == "yes" || *v == "on") return true;
  if (*v == "false" || *v == "0" || *v == "no" || *v == "off") return false;
  fail(source, "key '" + std::string(key) + "': '" + *v + "' is not a boolean");
}

std::vector<double> KeyValueSection::get_doubles(std::string_view key) const {
  std::vector<double> values;
  for (const std::string& word : split_words(get_string(key))) {
    values.push_back(parse_double(source, key, word));
  }
  if (values.empty()) fail(source, "key '" + std::string(key) + "' has an empty list");
  return values;
}

std::vector<int> KeyValueSection::get_ints(std::string_view key) const {
  std::vector<int> values;
  for (const std::string& word : split_words(get_string(key))) {
    const long long v = parse_integer(source, key, word);
    if (v < INT_MIN || v > INT_MAX) fail(source, "key '" + std::string(key) + "' out of range");
    values.push_back(static_cast<int>(v));
  }
  if (values.empty()) fail(source, "key '" + std::string(key) + "' has an empty list");
  return values;
}

std::vector<std::string> KeyValueSection::get_strings(std::string_view key) const {
  std::vector<std::string> words = split_words(get_string(key));
  if (words.empty()) fail(source, "key '" + std::string(key) + "' has an empty list");
  return words;
}

void KeyValueSection::expect_keys(std::initializer_list<std::string_view> allowed) const {
  for (const auto& [k, v] : entries) {
    if (std::find(allowed.begin(), allowed.end(), k) == allowed.end()) {
      fail(source, (name.empty() ? std::string("unknown key '")
                                 : "section [" + name + "]: unknown key '") +
                       k + "'");
    }
  }
}

KeyValueFile KeyValueFile::parse_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_string(buffer.str(), path.string());
}

KeyValueFile KeyValueFile::parse_string(std::string_view text, std::string source) {
  KeyValueFile file;
  file.source = source;
  file.sections.push_back(KeyValueSection{"", 0, source, {}});

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line =
        eol == std::string_view::npos ? text.substr(pos) : text.substr(pos, eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    const auto comment = line.find('#');
    if (comment != std::string_view::npos) line = line.substr(0, comment);
    line = trim(line);
    if (line.empty()) continue;

    const std::string where = source + ":" + std::to_string(line_no);
    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3) fail(where, "malformed section header");
      file.sections.push_back(
          KeyValueSection{std::string(trim(line.substr(1, line.size() - 2))), line_no, source, {}});
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) fail(where, "expected 'key = value'");
    const std::string key{trim(line.substr(0, eq))};
    const std::string value{trim(line.substr(eq + 1))};
    if (key.empty()) fail(where, "empty key");

    KeyValueSection& section = file.sections.back();
    if (section.has(key)) {
      fail(where, "duplicate key '" + key + "'" +
                      (section.name.empty() ? "" : " in section [" + section.name + "]"));
    }
    section.entries.emplace_back(key, value);
  }
  return file;
}

std::vector<const KeyValueSection*> KeyValueFile::named(std::string_view name) const {
  std::vector<const KeyValueSection*> out;
  for (const KeyValueSection& s : sections) {
    if (s.name == name) out.push_back(&s);
  }
  return out;
}

void KeyValueFile::expect_sections(std::initializer_list<std::string_view> allowed) const {
  for (std::size_t i = 1; i < sections.size(); ++i) {
    if (std::find(allowed.begin(), allowed.end(), sections[i].name) == allowed.end()) {
      fail(source + ":" + std::to_string(sections[i].line),
           "unknown section [" + sections[i].name + "]");
    }
  }
}

}  // namespace glearn
