#pragma once

#include <map>
#include <string>
#include <vector>

namespace drstokes {

enum class ValueType { Int, Real, Bool, Text, IntList, RealList, TextList };

struct ConfigKey {
  std::string name;
  ValueType type;
  std::string default_value;
  std::string help;
  /// Allowed values for Text / TextList keys; empty means free text.
  std::vector<std::string> choices;
};

/// The full key table with defaults and allowed values.
const std::vector<ConfigKey>& config_keys();

/// Flat key=value configuration. Every key is validated when it is set, so a
/// RunConfig that exists is well formed: unknown keys and unparsable values
/// throw ConfigError before any computation starts.
class RunConfig {
 public:
  /// All keys at their defaults.
  RunConfig();

  /// Lines "key = value"; '#' starts a comment, blank lines are ignored.
  static RunConfig parse(const std::string& text, const std::string& origin = "<config>");
  static RunConfig load(const std::string& path);

  void set(const std::string& key, const std::string& value);
  /// "key=value" from the command line.
  void set_override(const std::string& assignment);

  const std::string& text(const std::string& key) const;
  long long integer(const std::string& key) const;
  double real(const std::string& key) const;
  bool flag(const std::string& key) const;
  std::vector<long long> integers(const std::string& key) const;
  std::vector<double> reals(const std::string& key) const;
  std::vector<std::string> texts(const std::string& key) const;

  /// Every key with its current value, sorted by key.
  const std::map<std::string, std::string>& values() const noexcept { return values_; }
  bool is_default(const std::string& key) const;

 private:
  const ConfigKey& lookup(const std::string& key) const;
  std::map<std::string, std::string> values_;
};

}  // namespace drstokes
