#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "hurstlab/signal_io.hpp"

namespace hurstlab::dfa {

struct DfaConfig {
  std::size_t s_min = 16;
  std::size_t s_max = 1024;
  int order = 1;          // detrending polynomial degree m
  double q = 2.0;         // fluctuation-function moment, never 0
  bool bidirectional = false;  // also segment from the series end (2*N_s segments)

  // Throws Error(Config) on s_min < 4, s_min >= s_max, order < 1, q == 0 or non-finite q.
  void validate() const;
};

// Accumulated deviation series X(i) = sum_{k<=i} (x(k) - mean).
struct Profile {
  std::vector<double> values;
  std::size_t size() const noexcept { return values.size(); }
};

// Local polynomial trend of one segment, x_v(i) = sum_k C_k * i^(m-k), i = 1..s.
// coefficients[0] multiplies the highest power.
struct TrendFit {
  std::vector<double> coefficients;
  std::size_t segment = 0;  // 1-based
  std::size_t scale = 0;
};

struct CurvePoint {
  double scale;
  double fluctuation;
};

struct FluctuationCurve {
  std::vector<CurvePoint> points;
  double q = 2.0;
  std::size_t dropped_points = 0;  // scales whose F_q(s) was zero
  std::vector<std::size_t> dropped_scales;
};

struct HurstEstimate {
  double h = 0.0;  // slope of log2 F_q(s) against log2 s
  double intercept = 0.0;
  double r_squared = 0.0;
  double q = 2.0;
  std::vector<double> scales_used;
  std::size_t dropped_points = 0;
};

enum class Correlation { AntiPersistent, Uncorrelated, Persistent };
std::string_view to_string(Correlation c) noexcept;

Profile profile(std::span<const double> x);
inline Profile profile(const SignalSeries& x) { return profile(x.samples); }

// Powers of two s_min * 2^k, capped at min(s_max, floor(n / 4)). Refuses (Error(Data))
// when n < 4 * s_min or fewer than four scales survive.
std::vector<std::size_t> scales(const DfaConfig& config, std::size_t n);

// Least-squares trend of segment v (1-based) of length s, in the raw i = 1..s basis.
TrendFit fit_trend(const Profile& p, std::size_t s, std::size_t v, int order);

// F^2(s, v): mean squared residual of segment v after removing its degree-m trend.
double segment_variance(const Profile& p, std::size_t s, std::size_t v, int order);

// Forward segments only unless bidirectional; each entry is F^2(s, v).
std::vector<double> segment_variances(const Profile& p, std::size_t s, int order,
                                      bool bidirectional = false);

// q-th order average of the given segment variances. For q < 0 zero-variance
// segments are excluded; throws if none remain.
double fluctuation_from_variances(std::span<const double> variances, double q);

double fluctuation_function(const Profile& p, std::size_t s, double q, int order,
                            bool bidirectional = false);

FluctuationCurve fluctuation_curve(const Profile& p, const DfaConfig& config);
FluctuationCurve fluctuation_curve(const SignalSeries& x, const DfaConfig& config);

// Ordinary least squares of log2 F on log2 s.
HurstEstimate fit_hurst(const FluctuationCurve& curve);

HurstEstimate hurst(const SignalSeries& x, const DfaConfig& config = {});

// Generalised exponents h(q) for each q in the grid (q == 0 entries are rejected).
std::vector<HurstEstimate> hurst_spectrum(const SignalSeries& x, const DfaConfig& config,
                                          std::span<const double> q_grid);
// q in [-5, 5] step 1, zero excluded.
std::vector<double> default_q_grid();

constexpr double fractal_dimension(double h) noexcept { return 2.0 - h; }

Correlation classify_correlation(double h, double band = 0.02);

}  // namespace hurstlab::dfa
