#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hurstlab/corpus_stats.hpp"
#include "hurstlab/dfa.hpp"

namespace hurstlab::screening {

enum class Role { Normal, Diseased };

// A baselined band center_h +/- delta for one population.
struct ControlElement {
  double center_h = 0.0;
  double delta = 0.0;
  Role role = Role::Normal;
  std::size_t n = 0;

  void validate() const;
};

enum class Severity { None, Severity1, Severity2, Severity3 };

// Severity bands:
//   None       |h - H_norm| <= k1 * delta_norm
//   Severity2  |h - H_dis|  <= delta_dis
//   Severity3  otherwise, if |h - H_dis| <= approach_fraction * |H_norm - H_dis|
//   Severity1  everything else off-normal
// alarm_threshold is the run length of consecutive flagged observations.
struct SeverityConfig {
  double k1 = 1.0;
  double approach_fraction = 0.3;
  std::size_t alarm_threshold = 3;

  void validate() const;
};

struct Observation {
  std::int64_t timestamp = 0;
  double h = 0.0;
  Severity severity = Severity::None;
};

struct MonitorHistory {
  std::string subject;
  std::vector<Observation> observations;
};

struct MonitorUpdate {
  MonitorHistory history;
  bool alarm = false;
};

inline constexpr std::string_view kUnknownEmotion = "Unknown";

std::string_view to_string(Role r) noexcept;
std::string_view to_string(Severity s) noexcept;
Role role_from_string(std::string_view s);
Severity severity_from_string(std::string_view s);

// Label of the single baseline whose [h_low, h_high] holds h. Several matches go
// to the nearest modal_h; an exact tie, or no match, yields kUnknownEmotion.
std::string classify_emotion(double h, std::span<const corpus::EmotionBaseline> baselines);

// Throws Error(Config) if the roles are wrong or the bands overlap.
Severity severity(double h, const ControlElement& normal, const ControlElement& diseased,
                  const SeverityConfig& cfg = {});

// Returns a new history with the observation appended; the input is untouched.
MonitorUpdate monitor_update(const MonitorHistory& history, std::int64_t timestamp, double h,
                             const ControlElement& normal, const ControlElement& diseased,
                             const SeverityConfig& cfg = {});

enum class DeltaRule { HalfSupport, StdDev };

struct ControlOptions {
  std::size_t min_corpus = 10;
  DeltaRule delta_rule = DeltaRule::HalfSupport;
  double k = 1.0;  // multiplier for DeltaRule::StdDev
  std::optional<double> bin_width;
};

struct ControlPair {
  ControlElement normal;
  ControlElement diseased;
};

ControlElement build_control_element(std::span<const double> h_values, Role role, const ControlOptions& options = {});

ControlPair build_control_elements(std::span<const dfa::HurstEstimate> normal_corpus,
                                   std::span<const dfa::HurstEstimate> diseased_corpus,
                                   const ControlOptions& options = {});

}  // namespace hurstlab::screening
