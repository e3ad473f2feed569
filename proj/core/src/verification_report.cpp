#include "drstokes/verification_report.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <limits>

#include "drstokes/errors.hpp"
#include "json.hpp"

namespace drstokes {

using json = nlohmann::ordered_json;

namespace {

json metric_to_json(const Metric& m) {
  if (const auto* d = std::get_if<double>(&m)) return std::isfinite(*d) ? json(*d) : json(nullptr);
  if (const auto* i = std::get_if<long long>(&m)) return json(*i);
  return json(std::get<std::string>(m));
}

Metric metric_from_json(const json& j) {
  if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
  if (j.is_number_integer()) return j.get<long long>();
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return j.get<std::string>();
  throw FormatError("metric values must be numbers, strings or null");
}

}  // namespace

const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "PASS";
    case CheckStatus::Fail: return "FAIL";
    case CheckStatus::Stuck: return "STUCK";
  }
  return "FAIL";
}

CheckStatus parse_check_status(const std::string& s) {
  if (s == "PASS") return CheckStatus::Pass;
  if (s == "FAIL") return CheckStatus::Fail;
  if (s == "STUCK") return CheckStatus::Stuck;
  throw FormatError("unknown check status '" + s + "'");
}

CheckStatus VerificationReport::overall() const {
  if (records.empty()) return CheckStatus::Fail;
  bool stuck = false;
  for (const auto& r : records) {
    if (r.status == CheckStatus::Fail) return CheckStatus::Fail;
    stuck = stuck || r.status == CheckStatus::Stuck;
  }
  return stuck ? CheckStatus::Stuck : CheckStatus::Pass;
}

int exit_code(const VerificationReport& r) { return r.overall() == CheckStatus::Pass ? 0 : 1; }

std::string to_json(const VerificationReport& r) {
  json j;
  j["tool_version"] = r.tool_version;
  j["command"] = r.command;
  j["timestamp"] = r.timestamp;
  j["config"] = json::object();
  for (const auto& [k, v] : r.config) j["config"][k] = v;
  j["records"] = json::array();
  for (const auto& c : r.records) {
    json rec;
    rec["name"] = c.name;
    rec["identity"] = c.identity;
    rec["status"] = to_string(c.status);
    rec["metrics"] = json::object();
    for (const auto& [k, v] : c.metrics) rec["metrics"][k] = metric_to_json(v);
    rec["detail"] = c.detail;
    j["records"].push_back(std::move(rec));
  }
  j["overall"] = to_string(r.overall());
  return j.dump(2) + "\n";
}

VerificationReport report_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    VerificationReport r;
    r.tool_version = j.at("tool_version").get<std::string>();
    r.command = j.at("command").get<std::string>();
    r.timestamp = j.value("timestamp", "");
    for (const auto& [k, v] : j.at("config").items()) r.config[k] = v.get<std::string>();
    for (const auto& rec : j.at("records")) {
      CheckRecord c;
      c.name = rec.at("name").get<std::string>();
      c.identity = rec.value("identity", "");
      c.status = parse_check_status(rec.at("status").get<std::string>());
      for (const auto& [k, v] : rec.at("metrics").items()) c.metrics[k] = metric_from_json(v);
      c.detail = rec.value("detail", "");
      r.records.push_back(std::move(c));
    }
    if (j.contains("overall") && j["overall"].get<std::string>() != to_string(r.overall()))
      throw FormatError("report overall status does not match its records");
    return r;
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed verification report: ") + e.what());
  }
}

VerificationReport merge_reports(const std::vector<VerificationReport>& parts, const std::string& tool_version) {
  VerificationReport m;
  m.tool_version = tool_version;
  m.command = "report-merge";
  m.timestamp = utc_timestamp();
  for (std::size_t p = 0; p < parts.size(); ++p) {
    const auto& r = parts[p];
    const std::string prefix = r.command + "#" + std::to_string(p);
    for (const auto& [k, v] : r.config) m.config[prefix + "." + k] = v;
    for (auto c : r.records) {
      c.name = r.command + "/" + c.name;
      m.records.push_back(std::move(c));
    }
  }
  return m;
}

const char* library_version() { return "0.1.0"; }

std::string utc_timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace drstokes
