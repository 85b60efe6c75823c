#include "hurstlab/corpus_stats.hpp"

#include <algorithm>
#include <cmath>

#include "hurstlab/error.hpp"

namespace hurstlab::corpus {

namespace {

// Linear-interpolation quantile of sorted data.
double quantile(const std::vector<double>& sorted, double p) {
  const double pos = p * double(sorted.size() - 1);
  const auto lo = std::size_t(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - double(lo)) * (sorted[hi] - sorted[lo]);
}

}  // namespace

double freedman_diaconis_width(std::span<const double> values) {
  if (values.size() < 2) throw Error(ErrorKind::Data, "bin width needs at least 2 values");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = double(sorted.size());
  const double iqr = quantile(sorted, 0.75) - quantile(sorted, 0.25);
  if (iqr > 0.0) return 2.0 * iqr * std::cbrt(1.0 / n);
  return (sorted.back() - sorted.front()) / std::sqrt(n);
}

HurstHistogram histogram(std::span<const double> values, std::optional<double> bin_width) {
  if (values.size() < 2) throw Error(ErrorKind::Data, "histogram needs at least 2 values");
  for (double v : values)
    if (!std::isfinite(v)) throw Error(ErrorKind::Data, "histogram values must be finite");
  if (bin_width && !(*bin_width > 0.0 && std::isfinite(*bin_width)))
    throw Error(ErrorKind::Config, "bin width must be positive");

  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *lo_it, hi = *hi_it;

  HurstHistogram h;
  h.n = values.size();
  h.bin_width = bin_width ? *bin_width : freedman_diaconis_width(values);

  if (hi == lo || h.bin_width == 0.0) {
    h.bin_edges = {lo, hi};
    h.counts = {values.size()};
    h.modal_value = modal_hurst(h);
    return h;
  }

  const double ratio = (hi - lo) / h.bin_width;
  const auto bins = std::max<std::size_t>(1, std::size_t(std::ceil(ratio - 1e-9)));
  h.bin_edges.resize(bins + 1);
  for (std::size_t k = 0; k < bins; ++k) h.bin_edges[k] = lo + double(k) * h.bin_width;
  h.bin_edges[bins] = hi;
  h.counts.assign(bins, 0);

  for (double v : values) {
    auto k = std::min(bins - 1, std::size_t(std::max(0.0, std::floor((v - lo) / h.bin_width))));
    while (k > 0 && v < h.bin_edges[k]) --k;
    while (k + 1 < bins && v >= h.bin_edges[k + 1]) ++k;
    ++h.counts[k];
  }
  h.modal_value = modal_hurst(h);
  return h;
}

double modal_hurst(const HurstHistogram& h) {
  if (h.counts.empty() || h.bin_edges.size() != h.counts.size() + 1)
    throw Error(ErrorKind::Data, "malformed histogram");
  // max_element returns the first maximum, i.e. the lowest bin on ties.
  const auto k = std::size_t(std::max_element(h.counts.begin(), h.counts.end()) - h.counts.begin());
  return h.bin_center(k);
}

EmotionBaseline build_baseline(std::span<const double> h_values, std::string emotion, std::string language,
                               const BaselineOptions& options) {
  if (h_values.size() < 2)
    throw Error(ErrorKind::Data, "baseline needs at least 2 Hurst estimates, got " +
                                     std::to_string(h_values.size()));
  EmotionBaseline b;
  if (h_values.size() < options.min_corpus)
    b.warnings.push_back("corpus of " + std::to_string(h_values.size()) + " estimates is below the floor of " +
                         std::to_string(options.min_corpus));
  const auto hist = histogram(h_values, options.bin_width);
  b.emotion = std::move(emotion);
  b.language = std::move(language);
  b.modal_h = hist.modal_value;
  b.h_low = hist.bin_edges.front();
  b.h_high = hist.bin_edges.back();
  b.n = hist.n;
  b.bin_width = hist.bin_width;
  return b;
}

EmotionBaseline build_baseline(std::span<const dfa::HurstEstimate> estimates, std::string emotion,
                               std::string language, const BaselineOptions& options) {
  std::vector<double> hs;
  hs.reserve(estimates.size());
  for (const auto& e : estimates) hs.push_back(e.h);
  return build_baseline(hs, std::move(emotion), std::move(language), options);
}

}  // namespace hurstlab::corpus
