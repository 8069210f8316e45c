#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>

namespace routine {

// Flat key/value config with INI-style sections. Keys are stored as
// "section.key"; lines starting with '#' or ';' are comments.
class KeyValueConfig {
 public:
  KeyValueConfig() = default;

  static KeyValueConfig parse(std::istream& in);        // throws ConfigError
  static KeyValueConfig load(const std::string& path);  // throws ConfigError

  bool has(const std::string& key) const { return values_.count(key) > 0; }
  std::optional<std::string> get(const std::string& key) const;
  std::string get_or(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;     // throws on junk
  long long get_int(const std::string& key, long long fallback) const;  // throws on junk
  void set(const std::string& key, const std::string& value) { values_[key] = value; }

  // All keys under "section." with the prefix stripped.
  std::map<std::string, std::string> section(const std::string& name) const;

  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

}  // namespace routine
