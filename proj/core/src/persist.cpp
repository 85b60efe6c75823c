#include "hurstlab/persist.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <iterator>
#include <sstream>

#include "hurstlab/error.hpp"

namespace hurstlab::persist {

namespace {

void check_version(const json& j, std::string_view what) {
  if (!j.is_object()) throw Error(ErrorKind::Format, std::string(what) + ": expected a JSON object");
  const auto it = j.find("schema_version");
  if (it == j.end() || !it->is_number_integer() || it->get<int>() != kSchemaVersion)
    throw Error(ErrorKind::Format, std::string(what) + ": unsupported or missing schema_version");
}

template <typename T>
T field(const json& j, const char* key, std::string_view what) {
  const auto it = j.find(key);
  if (it == j.end()) throw Error(ErrorKind::Format, std::string(what) + ": missing field '" + key + "'");
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw Error(ErrorKind::Format, std::string(what) + ": field '" + key + "' has the wrong type");
  }
}

}  // namespace

json to_json(const corpus::EmotionBaseline& b, const std::string& created_at) {
  json j = {{"schema_version", kSchemaVersion},
            {"kind", "emotion_baseline"},
            {"emotion", b.emotion},
            {"language", b.language},
            {"modal_h", b.modal_h},
            {"h_low", b.h_low},
            {"h_high", b.h_high},
            {"n", b.n},
            {"bin_width", b.bin_width}};
  if (!created_at.empty()) j["created_at"] = created_at;
  return j;
}

corpus::EmotionBaseline baseline_from_json(const json& j) {
  constexpr std::string_view what = "baseline";
  check_version(j, what);
  corpus::EmotionBaseline b;
  b.emotion = field<std::string>(j, "emotion", what);
  b.language = field<std::string>(j, "language", what);
  b.modal_h = field<double>(j, "modal_h", what);
  b.h_low = field<double>(j, "h_low", what);
  b.h_high = field<double>(j, "h_high", what);
  b.n = field<std::size_t>(j, "n", what);
  b.bin_width = field<double>(j, "bin_width", what);
  if (!(b.h_low <= b.modal_h && b.modal_h <= b.h_high))
    throw Error(ErrorKind::Format, "baseline: modal_h lies outside [h_low, h_high]");
  return b;
}

std::vector<corpus::EmotionBaseline> baselines_from_json(const json& j) {
  const json* list = &j;
  if (j.is_object() && j.contains("baselines")) list = &j.at("baselines");
  std::vector<corpus::EmotionBaseline> out;
  if (list->is_array()) {
    for (const auto& item : *list) out.push_back(baseline_from_json(item));
  } else {
    out.push_back(baseline_from_json(*list));
  }
  if (out.empty()) throw Error(ErrorKind::Format, "baselines: document holds no baselines");
  return out;
}

json to_json(const screening::ControlElement& e) {
  return {{"center_h", e.center_h}, {"delta", e.delta}, {"role", std::string(screening::to_string(e.role))}, {"n", e.n}};
}

screening::ControlElement control_from_json(const json& j) {
  constexpr std::string_view what = "control element";
  if (!j.is_object()) throw Error(ErrorKind::Format, "control element: expected an object");
  screening::ControlElement e;
  e.center_h = field<double>(j, "center_h", what);
  e.delta = field<double>(j, "delta", what);
  e.role = screening::role_from_string(field<std::string>(j, "role", what));
  e.n = field<std::size_t>(j, "n", what);
  return e;
}

json to_json(const ControlDocument& doc) {
  return {{"schema_version", kSchemaVersion},
          {"kind", "control_elements"},
          {"normal", to_json(doc.normal)},
          {"diseased", to_json(doc.diseased)},
          {"severity",
           {{"k1", doc.severity.k1},
            {"approach_fraction", doc.severity.approach_fraction},
            {"alarm_threshold", doc.severity.alarm_threshold}}}};
}

ControlDocument controls_from_json(const json& j) {
  constexpr std::string_view what = "control elements";
  check_version(j, what);
  ControlDocument doc;
  doc.normal = control_from_json(field<json>(j, "normal", what));
  doc.diseased = control_from_json(field<json>(j, "diseased", what));
  if (j.contains("severity")) {
    const json s = field<json>(j, "severity", what);
    doc.severity.k1 = field<double>(s, "k1", what);
    doc.severity.approach_fraction = field<double>(s, "approach_fraction", what);
    doc.severity.alarm_threshold = field<std::size_t>(s, "alarm_threshold", what);
  }
  return doc;
}

json to_json(const screening::MonitorHistory& h) {
  json obs = json::array();
  for (const auto& o : h.observations)
    obs.push_back({{"timestamp", o.timestamp}, {"h", o.h}, {"severity", std::string(screening::to_string(o.severity))}});
  return {{"schema_version", kSchemaVersion}, {"kind", "monitor_history"}, {"subject", h.subject}, {"observations", obs}};
}

screening::MonitorHistory monitor_from_json(const json& j) {
  constexpr std::string_view what = "monitor history";
  check_version(j, what);
  screening::MonitorHistory h;
  h.subject = j.value("subject", std::string{});
  for (const auto& o : field<json>(j, "observations", what)) {
    screening::Observation obs;
    obs.timestamp = field<std::int64_t>(o, "timestamp", what);
    obs.h = field<double>(o, "h", what);
    obs.severity = screening::severity_from_string(field<std::string>(o, "severity", what));
    if (!h.observations.empty() && obs.timestamp <= h.observations.back().timestamp)
      throw Error(ErrorKind::Format, "monitor history: timestamps must be strictly increasing");
    h.observations.push_back(obs);
  }
  return h;
}

json to_json(const corpus::HurstHistogram& h) {
  return {{"bin_edges", h.bin_edges}, {"counts", h.counts}, {"bin_width", h.bin_width},
          {"modal_value", h.modal_value}, {"n", h.n}};
}

std::string histogram_csv(const corpus::HurstHistogram& h) {
  std::ostringstream out;
  out.precision(17);
  out << "bin_center,count\n";
  for (std::size_t k = 0; k < h.counts.size(); ++k) out << h.bin_center(k) << ',' << h.counts[k] << '\n';
  return out.str();
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Format, path.string() + ": invalid JSON (" + e.what() + ")");
  }
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  out << contents;
  if (!out) throw Error(ErrorKind::Io, "write failed for " + path.string());
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace hurstlab::persist
