#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace scenopt {

/// Plain-text `key = value` configuration. `#` starts a comment; blank lines
/// are ignored; later assignments override earlier ones.
class KeyValueConfig {
 public:
  KeyValueConfig() = default;

  static KeyValueConfig parse(const std::string& text, const std::string& origin = "<text>");
  static KeyValueConfig load(const std::string& path);

  void set(const std::string& key, const std::string& value) { values_[key] = value; }
  bool has(const std::string& key) const { return values_.count(key) != 0; }
  void merge(const KeyValueConfig& other);

  std::string get_string(const std::string& key, const std::string& fallback) const;
  std::string require_string(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
  std::vector<double> get_doubles(const std::string& key, std::vector<double> fallback) const;

  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::optional<std::string> find(const std::string& key) const;
  std::map<std::string, std::string> values_;
};

double parse_double(const std::string& text, const std::string& what);
std::int64_t parse_int(const std::string& text, const std::string& what);
std::vector<double> parse_doubles(const std::string& text, const std::string& what);

/// Shortest decimal string that reads back to exactly `value`; locale independent.
std::string format_double(double value);

}  // namespace scenopt
