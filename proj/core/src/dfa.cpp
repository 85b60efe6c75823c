#include "hurstlab/dfa.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "hurstlab/error.hpp"

namespace hurstlab::dfa {

namespace {

// Orthonormal basis of degree-<=m polynomials sampled at i = 1..s.
class DetrendBasis {
 public:
  DetrendBasis(std::size_t s, int order) : s_(s), rows_(std::size_t(order) + 1) {
    const double centre = 0.5 * double(s + 1);
    const double half = 0.5 * double(s);
    basis_.assign(rows_ * s, 0.0);
    for (std::size_t k = 0; k < rows_; ++k) {
      double* col = &basis_[k * s];
      for (std::size_t i = 0; i < s; ++i) col[i] = std::pow((double(i + 1) - centre) / half, double(k));
      // Modified Gram-Schmidt, two passes.
      for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t j = 0; j < k; ++j) {
          const double* prev = &basis_[j * s];
          const double d = std::inner_product(col, col + s, prev, 0.0);
          for (std::size_t i = 0; i < s; ++i) col[i] -= d * prev[i];
        }
      }
      const double norm = std::sqrt(std::inner_product(col, col + s, col, 0.0));
      if (!(norm > 0.0))
        throw Error(ErrorKind::Config, "polynomial order too high for scale " + std::to_string(s));
      for (std::size_t i = 0; i < s; ++i) col[i] /= norm;
    }
  }

  // Mean squared residual of segment after removing its projection.
  double residual_variance(const double* segment, std::vector<double>& work) const {
    work.assign(segment, segment + s_);
    for (std::size_t k = 0; k < rows_; ++k) {
      const double* col = &basis_[k * s_];
      const double c = std::inner_product(work.begin(), work.end(), col, 0.0);
      for (std::size_t i = 0; i < s_; ++i) work[i] -= c * col[i];
    }
    double acc = 0.0;
    for (double r : work) acc += r * r;
    return acc / double(s_);
  }

 private:
  std::size_t s_;
  std::size_t rows_;
  std::vector<double> basis_;
};

std::size_t segment_count(std::size_t n, std::size_t s) { return s == 0 ? 0 : n / s; }

void check_segment(const Profile& p, std::size_t s, std::size_t v, int order) {
  if (order < 1) throw Error(ErrorKind::Config, "polynomial order must be >= 1");
  if (s <= std::size_t(order))
    throw Error(ErrorKind::Config, "scale must exceed the polynomial order");
  const std::size_t ns = segment_count(p.size(), s);
  if (v < 1 || v > ns)
    throw Error(ErrorKind::Data, "segment index " + std::to_string(v) + " out of range [1, " +
                                     std::to_string(ns) + "]");
}

}  // namespace

std::string_view to_string(Correlation c) noexcept {
  switch (c) {
    case Correlation::AntiPersistent: return "anti-persistent";
    case Correlation::Uncorrelated: return "uncorrelated";
    case Correlation::Persistent: return "persistent";
  }
  return "unknown";
}

void DfaConfig::validate() const {
  if (s_min < 4) throw Error(ErrorKind::Config, "s_min must be at least 4");
  if (s_min >= s_max) throw Error(ErrorKind::Config, "s_min must be smaller than s_max");
  if (order < 1) throw Error(ErrorKind::Config, "polynomial order must be >= 1");
  if (std::size_t(order) >= s_min) throw Error(ErrorKind::Config, "polynomial order must be below s_min");
  if (!std::isfinite(q)) throw Error(ErrorKind::Config, "q must be finite");
  if (q == 0.0) throw Error(ErrorKind::Config, "q = 0 is excluded: 1/q diverges");
}

Profile profile(std::span<const double> x) {
  if (x.size() < 2) throw Error(ErrorKind::Data, "profile needs at least 2 samples");
  for (double v : x)
    if (!std::isfinite(v)) throw Error(ErrorKind::Data, "profile input contains non-finite samples");

  Profile p;
  p.values.assign(x.size(), 0.0);
  if (std::all_of(x.begin(), x.end(), [&](double v) { return v == x.front(); })) return p;

  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / double(x.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    acc += x[i] - mean;
    p.values[i] = acc;
  }
  return p;
}

std::vector<std::size_t> scales(const DfaConfig& config, std::size_t n) {
  config.validate();
  if (n < 4 * config.s_min)
    throw Error(ErrorKind::Data, "series of length " + std::to_string(n) +
                                     " is too short: need at least " +
                                     std::to_string(4 * config.s_min) + " samples");
  const std::size_t cap = std::min(config.s_max, n / 4);
  std::vector<std::size_t> out;
  for (std::size_t s = config.s_min; s <= cap; s *= 2) out.push_back(s);
  if (out.size() < 4)
    throw Error(ErrorKind::Data, "only " + std::to_string(out.size()) +
                                     " scales fit a series of length " + std::to_string(n) +
                                     "; at least 4 are required");
  return out;
}

TrendFit fit_trend(const Profile& p, std::size_t s, std::size_t v, int order) {
  check_segment(p, s, v, order);
  const Eigen::Index rows = Eigen::Index(s);
  const Eigen::Index cols = order + 1;
  Eigen::MatrixXd design(rows, cols);
  Eigen::VectorXd y(rows);
  const std::size_t offset = (v - 1) * s;
  for (Eigen::Index i = 0; i < rows; ++i) {
    const double t = double(i + 1);
    for (Eigen::Index k = 0; k < cols; ++k) design(i, k) = std::pow(t, double(order - k));
    y(i) = p.values[offset + std::size_t(i)];
  }
  const Eigen::VectorXd c = design.colPivHouseholderQr().solve(y);
  TrendFit fit;
  fit.coefficients.assign(c.data(), c.data() + c.size());
  fit.segment = v;
  fit.scale = s;
  return fit;
}

double segment_variance(const Profile& p, std::size_t s, std::size_t v, int order) {
  check_segment(p, s, v, order);
  const DetrendBasis basis(s, order);
  std::vector<double> work;
  return basis.residual_variance(p.values.data() + (v - 1) * s, work);
}

std::vector<double> segment_variances(const Profile& p, std::size_t s, int order, bool bidirectional) {
  const std::size_t ns = segment_count(p.size(), s);
  if (ns == 0) throw Error(ErrorKind::Data, "scale " + std::to_string(s) + " exceeds series length");
  check_segment(p, s, 1, order);
  const DetrendBasis basis(s, order);
  std::vector<double> out;
  out.reserve(bidirectional ? 2 * ns : ns);
  std::vector<double> work;
  for (std::size_t v = 0; v < ns; ++v) out.push_back(basis.residual_variance(p.values.data() + v * s, work));
  if (bidirectional) {
    const std::size_t n = p.size();
    for (std::size_t v = 1; v <= ns; ++v)
      out.push_back(basis.residual_variance(p.values.data() + (n - v * s), work));
  }
  return out;
}

double fluctuation_from_variances(std::span<const double> variances, double q) {
  if (q == 0.0) throw Error(ErrorKind::Config, "q = 0 is excluded: 1/q diverges");
  if (variances.empty()) throw Error(ErrorKind::Data, "no segments to average");
  double acc = 0.0;
  std::size_t used = 0;
  for (double f2 : variances) {
    if (q < 0.0 && f2 <= 0.0) continue;
    acc += q == 2.0 ? f2 : std::pow(f2, 0.5 * q);
    ++used;
  }
  if (used == 0)
    throw Error(ErrorKind::Numeric, "all segment variances are zero; negative q diverges");
  const double mean = acc / double(used);
  return q == 2.0 ? std::sqrt(mean) : std::pow(mean, 1.0 / q);
}

double fluctuation_function(const Profile& p, std::size_t s, double q, int order, bool bidirectional) {
  const auto v = segment_variances(p, s, order, bidirectional);
  return fluctuation_from_variances(v, q);
}

FluctuationCurve fluctuation_curve(const Profile& p, const DfaConfig& config) {
  const auto scale_set = scales(config, p.size());
  FluctuationCurve curve;
  curve.q = config.q;
  for (std::size_t s : scale_set) {
    const auto variances = segment_variances(p, s, config.order, config.bidirectional);
    const bool all_zero = std::all_of(variances.begin(), variances.end(), [](double v) { return v == 0.0; });
    const double f = all_zero ? 0.0 : fluctuation_from_variances(variances, config.q);
    if (f > 0.0 && std::isfinite(f)) {
      curve.points.push_back({double(s), f});
    } else {
      ++curve.dropped_points;
      curve.dropped_scales.push_back(s);
    }
  }
  if (2 * curve.dropped_points > scale_set.size())
    throw Error(ErrorKind::Numeric, std::to_string(curve.dropped_points) + " of " +
                                        std::to_string(scale_set.size()) +
                                        " scales have zero fluctuation; cannot fit");
  return curve;
}

FluctuationCurve fluctuation_curve(const SignalSeries& x, const DfaConfig& config) {
  config.validate();
  return fluctuation_curve(profile(x), config);
}

HurstEstimate fit_hurst(const FluctuationCurve& curve) {
  const auto& pts = curve.points;
  if (pts.size() < 4)
    throw Error(ErrorKind::Numeric, "power-law fit needs at least 4 points, got " + std::to_string(pts.size()));
  std::vector<double> lx, ly;
  lx.reserve(pts.size());
  ly.reserve(pts.size());
  for (const auto& pt : pts) {
    if (!(pt.fluctuation > 0.0) || !std::isfinite(pt.fluctuation) || !(pt.scale > 0.0))
      throw Error(ErrorKind::Numeric, "non-positive fluctuation value at scale " + std::to_string(pt.scale));
    lx.push_back(std::log2(pt.scale));
    ly.push_back(std::log2(pt.fluctuation));
  }
  const double n = double(lx.size());
  const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / n;
  const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    const double dx = lx[i] - mx, dy = ly[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (!(sxx > 0.0)) throw Error(ErrorKind::Numeric, "scales must be distinct for the fit");

  HurstEstimate est;
  est.h = sxy / sxx;
  est.intercept = my - est.h * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    const double r = ly[i] - (est.intercept + est.h * lx[i]);
    ss_res += r * r;
  }
  est.r_squared = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
  est.q = curve.q;
  est.dropped_points = curve.dropped_points;
  for (const auto& pt : pts) est.scales_used.push_back(pt.scale);
  return est;
}

HurstEstimate hurst(const SignalSeries& x, const DfaConfig& config) {
  return fit_hurst(fluctuation_curve(x, config));
}

std::vector<HurstEstimate> hurst_spectrum(const SignalSeries& x, const DfaConfig& config,
                                          std::span<const double> q_grid) {
  config.validate();
  const Profile p = profile(x);
  std::vector<HurstEstimate> out;
  out.reserve(q_grid.size());
  for (double q : q_grid) {
    DfaConfig c = config;
    c.q = q;
    c.validate();
    out.push_back(fit_hurst(fluctuation_curve(p, c)));
  }
  return out;
}

std::vector<double> default_q_grid() { return {-5, -4, -3, -2, -1, 1, 2, 3, 4, 5}; }

Correlation classify_correlation(double h, double band) {
  if (!(band >= 0.0)) throw Error(ErrorKind::Config, "correlation band must be non-negative");
  if (std::abs(h - 0.5) <= band) return Correlation::Uncorrelated;
  return h > 0.5 ? Correlation::Persistent : Correlation::AntiPersistent;
}

}  // namespace hurstlab::dfa
