#pragma once

// Verification reports as JSON with a fixed key order:
// {"n", "field", "checks": [{"id", "status", "detail", "elapsed_ms"}], "version"}.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace unproj {

inline constexpr const char* kToolVersion = "1.0.0";

enum class CheckStatus { pass, fail, timeout };

inline std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::timeout: return "timeout";
  }
  return "fail";
}

inline CheckStatus parse_status(std::string_view s) {
  if (s == "pass") return CheckStatus::pass;
  if (s == "fail") return CheckStatus::fail;
  if (s == "timeout") return CheckStatus::timeout;
  throw std::invalid_argument("unknown check status '" + std::string(s) + "'");
}

struct CheckRecord {
  std::string id;
  CheckStatus status = CheckStatus::fail;
  std::string detail;
  std::int64_t elapsed_ms = 0;

  friend bool operator==(const CheckRecord&, const CheckRecord&) = default;
};

struct ReportDocument {
  int n = 0;
  std::string field;
  std::vector<CheckRecord> checks;
  std::string version = kToolVersion;

  friend bool operator==(const ReportDocument&, const ReportDocument&) = default;
};

inline std::string emit_report(const ReportDocument& r) {
  nlohmann::ordered_json doc;
  doc["n"] = r.n;
  doc["field"] = r.field;
  doc["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : r.checks) {
    if (c.elapsed_ms < 0) throw std::invalid_argument("negative elapsed time in check " + c.id);
    nlohmann::ordered_json rec;
    rec["id"] = c.id;
    rec["status"] = to_string(c.status);
    rec["detail"] = c.detail;
    rec["elapsed_ms"] = c.elapsed_ms;
    doc["checks"].push_back(std::move(rec));
  }
  doc["version"] = r.version;
  return doc.dump(2) + "\n";
}

inline ReportDocument parse_report(std::string_view text) {
  auto doc = nlohmann::json::parse(text);
  ReportDocument r;
  r.n = doc.at("n").get<int>();
  r.field = doc.at("field").get<std::string>();
  for (const auto& c : doc.at("checks")) {
    CheckRecord rec;
    rec.id = c.at("id").get<std::string>();
    rec.status = parse_status(c.at("status").get<std::string>());
    rec.detail = c.at("detail").get<std::string>();
    rec.elapsed_ms = c.at("elapsed_ms").get<std::int64_t>();
    if (rec.elapsed_ms < 0) throw std::invalid_argument("negative elapsed time in check " + rec.id);
    r.checks.push_back(std::move(rec));
  }
  r.version = doc.at("version").get<std::string>();
  return r;
}

}  // namespace unproj
