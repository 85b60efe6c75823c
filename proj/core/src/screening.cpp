#include "hurstlab/screening.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hurstlab/error.hpp"

namespace hurstlab::screening {

namespace {

constexpr double kTieTolerance = 1e-12;

void check_pair(const ControlElement& normal, const ControlElement& diseased, const SeverityConfig& cfg) {
  normal.validate();
  diseased.validate();
  cfg.validate();
  if (normal.role != Role::Normal || diseased.role != Role::Diseased)
    throw Error(ErrorKind::Config, "control elements must be one Normal and one Diseased");
  const double gap = std::abs(normal.center_h - diseased.center_h);
  if (gap < cfg.k1 * normal.delta + diseased.delta)
    throw Error(ErrorKind::Config, "normal and diseased bands overlap; baselines are not separable");
}

}  // namespace

void ControlElement::validate() const {
  if (!(delta > 0.0) || !std::isfinite(delta)) throw Error(ErrorKind::Config, "control element delta must be positive");
  if (!(center_h > 0.0 && center_h < 2.0)) throw Error(ErrorKind::Config, "control element center must lie in (0, 2)");
}

void SeverityConfig::validate() const {
  if (!(k1 >= 1.0)) throw Error(ErrorKind::Config, "k1 must be >= 1");
  if (!(approach_fraction > 0.0 && approach_fraction < 1.0))
    throw Error(ErrorKind::Config, "approach fraction must lie in (0, 1)");
  if (alarm_threshold < 1) throw Error(ErrorKind::Config, "alarm threshold must be >= 1");
}

std::string_view to_string(Role r) noexcept { return r == Role::Normal ? "normal" : "diseased"; }

std::string_view to_string(Severity s) noexcept {
  switch (s) {
    case Severity::None: return "none";
    case Severity::Severity1: return "severity1";
    case Severity::Severity2: return "severity2";
    case Severity::Severity3: return "severity3";
  }
  return "unknown";
}

Role role_from_string(std::string_view s) {
  if (s == "normal") return Role::Normal;
  if (s == "diseased") return Role::Diseased;
  throw Error(ErrorKind::Format, "unknown role '" + std::string(s) + "'");
}

Severity severity_from_string(std::string_view s) {
  for (auto v : {Severity::None, Severity::Severity1, Severity::Severity2, Severity::Severity3})
    if (to_string(v) == s) return v;
  throw Error(ErrorKind::Format, "unknown severity '" + std::string(s) + "'");
}

std::string classify_emotion(double h, std::span<const corpus::EmotionBaseline> baselines) {
  if (baselines.empty()) throw Error(ErrorKind::Config, "classification needs at least one baseline");
  const corpus::EmotionBaseline* best = nullptr;
  double best_dist = 0.0;
  bool tied = false;
  for (const auto& b : baselines) {
    if (h < b.h_low || h > b.h_high) continue;
    const double d = std::abs(h - b.modal_h);
    if (!best || d < best_dist - kTieTolerance) {
      best = &b;
      best_dist = d;
      tied = false;
    } else if (std::abs(d - best_dist) <= kTieTolerance && b.emotion != best->emotion) {
      tied = true;
    }
  }
  if (!best || tied) return std::string(kUnknownEmotion);
  return best->emotion;
}

Severity severity(double h, const ControlElement& normal, const ControlElement& diseased, const SeverityConfig& cfg) {
  check_pair(normal, diseased, cfg);
  const double to_normal = std::abs(h - normal.center_h);
  const double to_diseased = std::abs(h - diseased.center_h);
  if (to_normal <= cfg.k1 * normal.delta) return Severity::None;
  if (to_diseased <= diseased.delta) return Severity::Severity2;
  const double gap = std::abs(normal.center_h - diseased.center_h);
  if (to_diseased <= cfg.approach_fraction * gap) return Severity::Severity3;
  return Severity::Severity1;
}

MonitorUpdate monitor_update(const MonitorHistory& history, std::int64_t timestamp, double h,
                             const ControlElement& normal, const ControlElement& diseased,
                             const SeverityConfig& cfg) {
  if (!history.observations.empty() && timestamp <= history.observations.back().timestamp)
    throw Error(ErrorKind::Data, "observation timestamp " + std::to_string(timestamp) +
                                     " is not after the last recorded one");
  if (!std::isfinite(h)) throw Error(ErrorKind::Data, "observation h must be finite");

  MonitorUpdate out{history, false};
  out.history.observations.push_back({timestamp, h, severity(h, normal, diseased, cfg)});

  const auto& obs = out.history.observations;
  if (obs.size() < cfg.alarm_threshold) return out;
  const auto first = obs.end() - std::ptrdiff_t(cfg.alarm_threshold);
  bool alarm = std::all_of(first, obs.end(), [](const Observation& o) { return o.severity != Severity::None; });
  for (auto it = first; alarm && it + 1 != obs.end(); ++it) {
    const double d0 = std::abs(it->h - diseased.center_h);
    const double d1 = std::abs((it + 1)->h - diseased.center_h);
    if (d1 > d0) alarm = false;
  }
  out.alarm = alarm;
  return out;
}

ControlElement build_control_element(std::span<const double> h_values, Role role, const ControlOptions& options) {
  if (h_values.size() < options.min_corpus)
    throw Error(ErrorKind::Data, "control corpus needs at least " + std::to_string(options.min_corpus) +
                                     " estimates, got " + std::to_string(h_values.size()));
  const auto hist = corpus::histogram(h_values, options.bin_width);
  ControlElement e;
  e.center_h = hist.modal_value;
  e.role = role;
  e.n = h_values.size();
  if (options.delta_rule == DeltaRule::HalfSupport) {
    e.delta = 0.5 * (hist.bin_edges.back() - hist.bin_edges.front());
  } else {
    const double mean = std::accumulate(h_values.begin(), h_values.end(), 0.0) / double(h_values.size());
    double ss = 0.0;
    for (double v : h_values) ss += (v - mean) * (v - mean);
    e.delta = options.k * std::sqrt(ss / double(h_values.size() - 1));
  }
  if (!(e.delta > 0.0))
    throw Error(ErrorKind::Data, "control corpus has zero spread; delta would be zero");
  return e;
}

ControlPair build_control_elements(std::span<const dfa::HurstEstimate> normal_corpus,
                                   std::span<const dfa::HurstEstimate> diseased_corpus,
                                   const ControlOptions& options) {
  auto values = [](std::span<const dfa::HurstEstimate> c) {
    std::vector<double> out;
    out.reserve(c.size());
    for (const auto& e : c) out.push_back(e.h);
    return out;
  };
  ControlPair pair{build_control_element(values(normal_corpus), Role::Normal, options),
                   build_control_element(values(diseased_corpus), Role::Diseased, options)};
  const double gap = std::abs(pair.normal.center_h - pair.diseased.center_h);
  if (gap < pair.normal.delta + pair.diseased.delta)
    throw Error(ErrorKind::Data, "normal and diseased bands overlap; screening would be unreliable");
  return pair;
}

}  // namespace hurstlab::screening
