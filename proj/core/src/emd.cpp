#include "hurstlab/emd.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hurstlab/error.hpp"

namespace hurstlab::emd {

namespace {

constexpr std::size_t kMirrored = 2;

// Envelope through the given extrema, extended past both ends by reflecting the
// first/last kMirrored extrema about the boundary samples.
std::vector<double> envelope(std::span<const double> x, const std::vector<std::size_t>& idx) {
  const std::size_t n = x.size();
  const double last = double(n - 1);
  const std::size_t k = std::min(kMirrored, idx.size());

  std::vector<double> knots, values;
  knots.reserve(idx.size() + 2 * k);
  values.reserve(idx.size() + 2 * k);
  for (std::size_t j = k; j-- > 0;) {
    knots.push_back(-double(idx[j]));
    values.push_back(x[idx[j]]);
  }
  for (std::size_t i : idx) {
    knots.push_back(double(i));
    values.push_back(x[i]);
  }
  for (std::size_t j = 0; j < k; ++j) {
    const std::size_t i = idx[idx.size() - 1 - j];
    knots.push_back(2.0 * last - double(i));
    values.push_back(x[i]);
  }
  return natural_spline(knots, values, n);
}

bool has_oscillation(const Extrema& e) { return !e.maxima.empty() && !e.minima.empty(); }

double peak_to_peak(std::span<const double> x) {
  const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
  return *hi - *lo;
}

constexpr double kFlatResidual = 1e-10;

}  // namespace

Extrema find_extrema(std::span<const double> x) {
  if (x.size() < 3) throw Error(ErrorKind::Data, "extrema search needs at least 3 samples");
  Extrema out;
  const std::size_t n = x.size();
  std::size_t i = 1;
  while (i + 1 < n) {
    std::size_t j = i;
    while (j + 1 < n && x[j + 1] == x[i]) ++j;
    if (j + 1 >= n) break;  // run touches the right boundary
    const double left = x[i - 1], right = x[j + 1], here = x[i];
    const std::size_t mid = (i + j) / 2;
    if (here > left && here > right) out.maxima.push_back(mid);
    else if (here < left && here < right) out.minima.push_back(mid);
    i = j + 1;
  }
  return out;
}

std::size_t zero_crossings(std::span<const double> x) {
  std::size_t count = 0;
  int prev = 0;
  for (double v : x) {
    const int sign = (v > 0.0) - (v < 0.0);
    if (sign == 0) continue;
    if (prev != 0 && sign != prev) ++count;
    prev = sign;
  }
  return count;
}

bool is_imf(std::span<const double> x) {
  if (x.size() < 3) return false;
  const auto e = find_extrema(x);
  const auto extrema = e.maxima.size() + e.minima.size();
  const auto zc = zero_crossings(x);
  return (extrema > zc ? extrema - zc : zc - extrema) <= 1;
}

std::vector<double> natural_spline(std::span<const double> knots, std::span<const double> values,
                                   std::size_t n) {
  const std::size_t k = knots.size();
  if (k < 2 || values.size() != k) throw Error(ErrorKind::Data, "spline needs at least two knots");
  for (std::size_t i = 1; i < k; ++i)
    if (!(knots[i] > knots[i - 1])) throw Error(ErrorKind::Data, "spline knots must be strictly increasing");

  // Second derivatives M_i with M_0 = M_{k-1} = 0; tridiagonal system by Thomas' algorithm.
  std::vector<double> m(k, 0.0);
  if (k > 2) {
    const std::size_t inner = k - 2;
    std::vector<double> diag(inner), upper(inner), rhs(inner);
    for (std::size_t r = 0; r < inner; ++r) {
      const std::size_t i = r + 1;
      const double h0 = knots[i] - knots[i - 1], h1 = knots[i + 1] - knots[i];
      diag[r] = 2.0 * (h0 + h1);
      upper[r] = h1;
      rhs[r] = 6.0 * ((values[i + 1] - values[i]) / h1 - (values[i] - values[i - 1]) / h0);
    }
    for (std::size_t r = 1; r < inner; ++r) {
      const double sub = knots[r + 1] - knots[r];  // h_{i-1} for row r (i = r + 1)
      const double w = sub / diag[r - 1];
      diag[r] -= w * upper[r - 1];
      rhs[r] -= w * rhs[r - 1];
    }
    m[inner] = rhs[inner - 1] / diag[inner - 1];
    for (std::size_t r = inner - 1; r-- > 0;) m[r + 1] = (rhs[r] - upper[r] * m[r + 2]) / diag[r];
  }

  std::vector<double> out(n);
  std::size_t seg = 0;
  for (std::size_t t = 0; t < n; ++t) {
    const double xt = double(t);
    while (seg + 2 < k && xt > knots[seg + 1]) ++seg;
    const double x0 = knots[seg], x1 = knots[seg + 1];
    const double h = x1 - x0;
    const double a = (x1 - xt) / h, b = (xt - x0) / h;
    out[t] = a * values[seg] + b * values[seg + 1] +
             ((a * a * a - a) * m[seg] + (b * b * b - b) * m[seg + 1]) * h * h / 6.0;
  }
  return out;
}

std::vector<double> sift(std::span<const double> x, const SiftOptions& options) {
  if (x.size() < 3 || !has_oscillation(find_extrema(x)))
    throw Error(ErrorKind::Data, "insufficient extrema: monotone component, decomposition complete");
  if (!(options.sd_threshold > 0.0) || options.max_iters < 1)
    throw Error(ErrorKind::Config, "sift needs sd_threshold > 0 and max_iters >= 1");

  std::vector<double> h(x.begin(), x.end());
  for (int it = 0; it < options.max_iters; ++it) {
    const auto ext = find_extrema(h);
    if (!has_oscillation(ext)) break;
    const auto upper = envelope(h, ext.maxima);
    const auto lower = envelope(h, ext.minima);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < h.size(); ++i) {
      const double mean = 0.5 * (upper[i] + lower[i]);
      den += h[i] * h[i];
      num += mean * mean;
      h[i] -= mean;
    }
    const double sd = den > 0.0 ? num / den : 0.0;
    if (sd < options.sd_threshold && is_imf(h)) break;
  }
  return h;
}

ImfSet decompose(std::span<const double> x, std::size_t max_imfs, const SiftOptions& options) {
  if (x.size() < 16) throw Error(ErrorKind::Data, "EMD needs at least 16 samples");
  for (double v : x)
    if (!std::isfinite(v)) throw Error(ErrorKind::Data, "EMD input contains non-finite samples");

  ImfSet out;
  out.residual.assign(x.begin(), x.end());
  const double floor = kFlatResidual * peak_to_peak(x);
  while (out.imfs.size() < max_imfs && peak_to_peak(out.residual) > floor &&
         has_oscillation(find_extrema(out.residual))) {
    auto imf = sift(out.residual, options);
    for (std::size_t i = 0; i < imf.size(); ++i) out.residual[i] -= imf[i];
    out.imfs.push_back(std::move(imf));
  }
  return out;
}

SignalSeries denoise(const SignalSeries& x, std::size_t drop_count, std::size_t max_imfs,
                     const SiftOptions& options) {
  validate(x);
  if (drop_count == 0) return x;
  const auto set = decompose(x.samples, max_imfs, options);
  if (drop_count >= set.imfs.size())
    throw Error(ErrorKind::Data, "dropping " + std::to_string(drop_count) + " of " +
                                     std::to_string(set.imfs.size()) +
                                     " IMFs would remove entire signal");
  SignalSeries out = x;
  for (std::size_t k = 0; k < drop_count; ++k)
    for (std::size_t i = 0; i < out.samples.size(); ++i) out.samples[i] -= set.imfs[k][i];
  return out;
}

}  // namespace hurstlab::emd
