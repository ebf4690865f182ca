#pragma once

// Persisted result of one bound evaluation. JSON with stable (lexicographic)
// key ordering; serialization round-trips losslessly.

#include <chrono>
#include <cmath>
#include <map>
#include <string>

#include <json.hpp>

namespace pacbayes {

inline constexpr const char* kToolVersion = "0.1.0";

struct BoundReport {
  std::string bound_id;
  std::map<std::string, double> inputs;
  std::map<std::string, std::string> text_inputs;
  std::map<std::string, double> optimized;  // lambda_star, k_star, ...
  double value = 0.0;      // clipped to [0,1]
  double raw_value = 0.0;  // as computed
  bool vacuous = false;
  std::string paper_anchor;
  std::string timestamp;
  std::string tool_version = kToolVersion;

  void set_value(double raw) {
    raw_value = raw;
    vacuous = !(raw <= 1.0);
    value = std::isnan(raw) ? 1.0 : std::min(std::max(raw, 0.0), 1.0);
  }

  void stamp_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&tt));
    timestamp = buf;
  }
};

inline nlohmann::json to_json(const BoundReport& r) {
  nlohmann::json j;
  j["bound_id"] = r.bound_id;
  j["inputs"] = r.inputs;
  j["text_inputs"] = r.text_inputs;
  j["optimized"] = r.optimized;
  j["value"] = r.value;
  j["raw_value"] = r.raw_value;
  j["vacuous"] = r.vacuous;
  j["paper_anchor"] = r.paper_anchor;
  j["timestamp"] = r.timestamp;
  j["tool_version"] = r.tool_version;
  return j;
}

inline BoundReport report_from_json(const nlohmann::json& j) {
  BoundReport r;
  r.bound_id = j.at("bound_id").get<std::string>();
  r.inputs = j.at("inputs").get<std::map<std::string, double>>();
  r.text_inputs = j.at("text_inputs").get<std::map<std::string, std::string>>();
  r.optimized = j.at("optimized").get<std::map<std::string, double>>();
  r.value = j.at("value").get<double>();
  r.raw_value = j.at("raw_value").get<double>();
  r.vacuous = j.at("vacuous").get<bool>();
  r.paper_anchor = j.at("paper_anchor").get<std::string>();
  r.timestamp = j.at("timestamp").get<std::string>();
  r.tool_version = j.at("tool_version").get<std::string>();
  return r;
}

}  // namespace pacbayes
