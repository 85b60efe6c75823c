#pragma once

#include <filesystem>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "hurstlab/corpus_stats.hpp"
#include "hurstlab/screening.hpp"

// JSON documents exchanged with other tools. Every document carries
// "schema_version"; readers reject versions they do not know with Error(Format).
namespace hurstlab::persist {

inline constexpr int kSchemaVersion = 1;

using nlohmann::json;

// created_at is an ISO-8601 UTC string; pass "" to omit it.
json to_json(const corpus::EmotionBaseline& b, const std::string& created_at = {});
corpus::EmotionBaseline baseline_from_json(const json& j);

// Accepts a single baseline object, an array of them, or {"baselines": [...]}.
std::vector<corpus::EmotionBaseline> baselines_from_json(const json& j);

json to_json(const screening::ControlElement& e);
screening::ControlElement control_from_json(const json& j);

struct ControlDocument {
  screening::ControlElement normal;
  screening::ControlElement diseased;
  screening::SeverityConfig severity;
};
json to_json(const ControlDocument& doc);
ControlDocument controls_from_json(const json& j);

json to_json(const screening::MonitorHistory& h);
screening::MonitorHistory monitor_from_json(const json& j);

json to_json(const corpus::HurstHistogram& h);

// "bin_center,count" rows with a header line.
std::string histogram_csv(const corpus::HurstHistogram& h);

// File helpers. Parse failures surface as Error(Format), missing files as Error(Io).
json read_json(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& contents);

// Current UTC time as YYYY-MM-DDTHH:MM:SSZ.
std::string utc_timestamp();

}  // namespace hurstlab::persist
