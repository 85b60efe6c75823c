#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hurstlab/dfa.hpp"

namespace hurstlab::corpus {

// Bins are half-open [edge_k, edge_{k+1}) except the last, which is closed. The
// final edge is pinned to the largest value, so the last bin may be narrower
// than bin_width.
struct HurstHistogram {
  std::vector<double> bin_edges;
  std::vector<std::size_t> counts;
  double bin_width = 0.0;
  double modal_value = 0.0;
  std::size_t n = 0;

  double bin_center(std::size_t k) const { return 0.5 * (bin_edges[k] + bin_edges[k + 1]); }
};

struct EmotionBaseline {
  std::string emotion;
  std::string language;
  double modal_h = 0.0;
  double h_low = 0.0;
  double h_high = 0.0;
  std::size_t n = 0;
  double bin_width = 0.0;
  std::vector<std::string> warnings;
};

// Freedman-Diaconis width 2 * IQR * n^(-1/3); range / sqrt(n) when IQR is zero;
// 0 when all values coincide.
double freedman_diaconis_width(std::span<const double> values);

// bin_width = std::nullopt selects the automatic width. Needs at least two finite values.
HurstHistogram histogram(std::span<const double> values, std::optional<double> bin_width = std::nullopt);

// Center of the highest bin; ties go to the lower bin.
double modal_hurst(const HurstHistogram& h);

struct BaselineOptions {
  std::size_t min_corpus = 10;  // below this a warning is recorded
  std::optional<double> bin_width;
};

EmotionBaseline build_baseline(std::span<const dfa::HurstEstimate> estimates, std::string emotion,
                               std::string language, const BaselineOptions& options = {});
EmotionBaseline build_baseline(std::span<const double> h_values, std::string emotion, std::string language,
                               const BaselineOptions& options = {});

}  // namespace hurstlab::corpus
