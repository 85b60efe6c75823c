#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hurstlab/signal_io.hpp"

namespace hurstlab::emd {

struct Extrema {
  std::vector<std::size_t> maxima;
  std::vector<std::size_t> minima;
};

struct SiftOptions {
  double sd_threshold = 0.3;
  int max_iters = 100;
};

struct ImfSet {
  std::vector<std::vector<double>> imfs;  // highest frequency first
  std::vector<double> residual;
};

// Strictly interior local extrema. A flat run that rises then falls (or falls then
// rises) counts once, at floor of the run's midpoint. Requires x.size() >= 3.
Extrema find_extrema(std::span<const double> x);

std::size_t zero_crossings(std::span<const double> x);

// |#extrema - #zero crossings| <= 1.
bool is_imf(std::span<const double> x);

// Natural cubic spline through (knots, values), evaluated at 0, 1, ..., n-1.
// Knots must be strictly increasing and at least two.
std::vector<double> natural_spline(std::span<const double> knots, std::span<const double> values,
                                   std::size_t n);

// Extracts one IMF. Sifting stops once the normalised squared change between
// consecutive sifts, sum (h_prev - h)^2 / sum h_prev^2, falls below sd_threshold
// and the result satisfies is_imf(), or after max_iters sifts. Throws
// Error(Data) "insufficient extrema" when x has fewer than two interior extrema.
std::vector<double> sift(std::span<const double> x, const SiftOptions& options = {});

// Repeatedly sifts until the residual has fewer than two interior extrema, its
// peak-to-peak range drops below 1e-10 of the input's, or max_imfs IMFs have
// been extracted. Requires at least 16 samples.
ImfSet decompose(std::span<const double> x, std::size_t max_imfs = 32, const SiftOptions& options = {});
inline ImfSet decompose(const SignalSeries& x, std::size_t max_imfs = 32, const SiftOptions& options = {}) {
  return decompose(x.samples, max_imfs, options);
}

// Input minus its first drop_count IMFs; label and sample rate carried over.
SignalSeries denoise(const SignalSeries& x, std::size_t drop_count = 1, std::size_t max_imfs = 32,
                     const SiftOptions& options = {});

}  // namespace hurstlab::emd
