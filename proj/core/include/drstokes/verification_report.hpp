#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

namespace drstokes {

enum class CheckStatus { Pass, Fail, Stuck };

const char* to_string(CheckStatus s);
CheckStatus parse_check_status(const std::string& s);

/// Metric value: a number, an integer count, or a short text.
using Metric = std::variant<double, long long, std::string>;

struct CheckRecord {
  std::string name;
  /// The identity or property checked, in operator notation.
  std::string identity;
  CheckStatus status = CheckStatus::Fail;
  /// Sorted by key, so the JSON output is deterministic.
  std::map<std::string, Metric> metrics;
  /// Human-readable reason for FAIL / STUCK (first non-reducing identity,
  /// offending residual, ...). Empty on PASS.
  std::string detail;
};

struct VerificationReport {
  std::string tool_version;
  std::string command;
  /// Only field allowed to differ between runs of the same config.
  std::string timestamp;
  std::map<std::string, std::string> config;
  std::vector<CheckRecord> records;

  /// PASS iff every record passes (and there is at least one).
  CheckStatus overall() const;
};

/// Exit code contract: 0 for overall PASS, 1 otherwise.
int exit_code(const VerificationReport& r);

/// Pretty-printed JSON with a fixed key order.
std::string to_json(const VerificationReport& r);
/// Throws FormatError on malformed input.
VerificationReport report_from_json(const std::string& text);

/// Concatenates the records of several reports; record names are prefixed
/// with the source command ("verify-kernels/inversion.q1") and the configs
/// are echoed per command.
VerificationReport merge_reports(const std::vector<VerificationReport>& parts, const std::string& tool_version);

/// Library version string.
const char* library_version();

/// UTC time "YYYY-MM-DDTHH:MM:SSZ".
std::string utc_timestamp();

}  // namespace drstokes
