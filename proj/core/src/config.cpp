#include "drstokes/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "drstokes/errors.hpp"

namespace drstokes {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  if (trim(s).empty()) return out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  return out;
}

bool parse_int(const std::string& s, long long& v) {
  const char* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, v);
  return ec == std::errc() && p == end && !s.empty();
}

bool parse_real(const std::string& s, double& v) {
  if (s.empty()) return false;
  try {
    std::size_t used = 0;
    v = std::stod(s, &used);
    return used == s.size();
  } catch (const std::exception&) {
    return false;
  }
}

bool parse_bool(const std::string& s, bool& v) {
  if (s == "true" || s == "1" || s == "yes" || s == "on") return v = true, true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return v = false, true;
  return false;
}

void check_value(const ConfigKey& k, const std::string& value) {
  auto bad = [&](const std::string& why) {
    throw ConfigError("config key '" + k.name + "': " + why + " (got '" + value + "')");
  };
  auto check_choice = [&](const std::string& v) {
    if (!k.choices.empty() && std::find(k.choices.begin(), k.choices.end(), v) == k.choices.end()) {
      std::string list;
      for (const auto& c : k.choices) list += (list.empty() ? "" : ", ") + c;
      bad("expected one of " + list);
    }
  };
  long long i;
  double r;
  bool b;
  switch (k.type) {
    case ValueType::Int:
      if (!parse_int(value, i)) bad("expected an integer");
      break;
    case ValueType::Real:
      if (!parse_real(value, r)) bad("expected a number");
      break;
    case ValueType::Bool:
      if (!parse_bool(value, b)) bad("expected true or false");
      break;
    case ValueType::Text:
      check_choice(value);
      break;
    case ValueType::IntList:
      for (const auto& s : split_list(value))
        if (!parse_int(s, i)) bad("expected a comma-separated list of integers");
      break;
    case ValueType::RealList:
      for (const auto& s : split_list(value))
        if (!parse_real(s, r)) bad("expected a comma-separated list of numbers");
      break;
    case ValueType::TextList:
      for (const auto& s : split_list(value)) check_choice(s);
      break;
  }
}

}  // namespace

const std::vector<ConfigKey>& config_keys() {
  static const std::vector<ConfigKey> keys = {
      {"n", ValueType::Int, "2", "ambient dimension", {}},
      {"q", ValueType::Int, "1", "top form degree of the system", {}},
      {"j0", ValueType::Int, "0", "lowest degree with a Lame block; 0 means j0 = q", {}},
      {"matrices", ValueType::Text, "identity", "Lame matrices for numerical commands", {"identity", "scalar"}},
      {"lame.a", ValueType::Real, "1", "scalar M at degree q", {}},
      {"lame.a_tilde", ValueType::Real, "1", "scalar Mt at degree q", {}},
      {"algebra.n", ValueType::Int, "4", "dimension used by verify-algebra", {}},
      {"algebra.max_q", ValueType::Int, "3", "largest q checked by verify-algebra", {}},
      {"algebra.budget", ValueType::Int, "1000000", "rewrite step budget per normalization", {}},
      {"algebra.corrupt", ValueType::Bool, "false", "negative control: corrupted commutation rule", {}},
      {"algebra.corpus", ValueType::Int, "100", "random polynomial forms per complex check", {}},
      {"grid.levels", ValueType::IntList, "", "nodes per axis, each twice the previous; empty picks 32,64,128 (n=2) or 24,48 (n=3)", {}},
      {"grid.extent", ValueType::Real, "1", "half side of the cube [-L, L]^n", {}},
      {"kernel.method", ValueType::Text, "fft", "convolution method", {"fft", "direct"}},
      {"kernel.pad_factor", ValueType::Int, "2", "FFT padding factor", {}},
      {"kernel.singular_tol", ValueType::Real, "1e-10", "tolerance of the singular cell average", {}},
      {"kernel.suites", ValueType::TextList, "inversion,commutation,stokes", "suites run by verify-kernels",
       {"inversion", "commutation", "stokes"}},
      {"bump.radius", ValueType::Real, "0.8", "radius of the test bumps", {}},
      {"bump.sharpness", ValueType::Real, "2", "bump sharpness s in exp(-s/(1-t^2))", {}},
      {"tol.kernel_residual", ValueType::Real, "5e-3", "final residual bound for inversion and commutation", {}},
      {"tol.stokes_residual", ValueType::Real, "5e-2", "final residual bound for the Stokes suite", {}},
      {"tol.order", ValueType::Real, "1.5", "minimum observed convergence order", {}},
      {"tol.reconstruct", ValueType::Real, "1e-3", "reconstruction error bound", {}},
      {"tol.pole_relative", ValueType::Real, "1e-2", "relative error bound for the exterior pole", {}},
      {"domain.shape", ValueType::Text, "ball", "reconstruction domain", {"ball", "box"}},
      {"domain.radius", ValueType::Real, "1", "ball radius (centered at the origin)", {}},
      {"domain.box", ValueType::RealList, "", "box corners lo_1..lo_n,hi_1..hi_n; empty means [-1,1]^n", {}},
      {"quad.nodes_per_axis", ValueType::Int, "48", "boundary quadrature nodes per axis", {}},
      {"solution.kind", ValueType::TextList, "constant_pressure,exterior_pole,manufactured", "analytic solutions",
       {"constant_pressure", "exterior_pole", "manufactured"}},
      {"solution.pole", ValueType::RealList, "", "pole of exterior_pole; empty means (2, 0.5, 0, ...)", {}},
      {"points.interior", ValueType::Int, "10", "interior evaluation points", {}},
      {"points.exterior", ValueType::Int, "10", "exterior evaluation points", {}},
      {"seed", ValueType::Int, "1", "random seed", {}},
      {"output.csv", ValueType::Text, "", "reconstruction table path; empty disables the table", {}},
  };
  return keys;
}

RunConfig::RunConfig() {
  for (const auto& k : config_keys()) values_[k.name] = k.default_value;
}

const ConfigKey& RunConfig::lookup(const std::string& key) const {
  for (const auto& k : config_keys())
    if (k.name == key) return k;
  throw ConfigError("unknown config key '" + key + "'");
}

void RunConfig::set(const std::string& key, const std::string& value) {
  const ConfigKey& k = lookup(key);
  const std::string v = trim(value);
  check_value(k, v);
  values_[k.name] = v;
}

void RunConfig::set_override(const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw ConfigError("override '" + assignment + "' is not of the form key=value");
  set(trim(assignment.substr(0, eq)), assignment.substr(eq + 1));
}

RunConfig RunConfig::parse(const std::string& text, const std::string& origin) {
  RunConfig c;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    const std::string where = origin + ":" + std::to_string(lineno) + ": ";
    if (eq == std::string::npos) throw ConfigError(where + "expected key = value");
    try {
      c.set(trim(line.substr(0, eq)), line.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError(where + e.what());
    }
  }
  return c;
}

RunConfig RunConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path);
}

const std::string& RunConfig::text(const std::string& key) const {
  lookup(key);
  return values_.at(key);
}

long long RunConfig::integer(const std::string& key) const {
  if (lookup(key).type != ValueType::Int) throw ConfigError("config key '" + key + "' is not an integer");
  long long v = 0;
  parse_int(values_.at(key), v);
  return v;
}

double RunConfig::real(const std::string& key) const {
  const ValueType t = lookup(key).type;
  if (t == ValueType::Int) return static_cast<double>(integer(key));
  if (t != ValueType::Real) throw ConfigError("config key '" + key + "' is not a number");
  double v = 0;
  parse_real(values_.at(key), v);
  return v;
}

bool RunConfig::flag(const std::string& key) const {
  if (lookup(key).type != ValueType::Bool) throw ConfigError("config key '" + key + "' is not a flag");
  bool v = false;
  parse_bool(values_.at(key), v);
  return v;
}

std::vector<long long> RunConfig::integers(const std::string& key) const {
  if (lookup(key).type != ValueType::IntList) throw ConfigError("config key '" + key + "' is not an integer list");
  std::vector<long long> out;
  for (const auto& s : split_list(values_.at(key))) {
    long long v = 0;
    parse_int(s, v);
    out.push_back(v);
  }
  return out;
}

std::vector<double> RunConfig::reals(const std::string& key) const {
  if (lookup(key).type != ValueType::RealList) throw ConfigError("config key '" + key + "' is not a number list");
  std::vector<double> out;
  for (const auto& s : split_list(values_.at(key))) {
    double v = 0;
    parse_real(s, v);
    out.push_back(v);
  }
  return out;
}

std::vector<std::string> RunConfig::texts(const std::string& key) const {
  if (lookup(key).type != ValueType::TextList) throw ConfigError("config key '" + key + "' is not a text list");
  return split_list(values_.at(key));
}

bool RunConfig::is_default(const std::string& key) const { return values_.at(key) == lookup(key).default_value; }

}  // namespace drstokes
