#include "hurstlab/synth.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

#include "hurstlab/error.hpp"

namespace hurstlab::synth {

namespace {

std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(void* p) const noexcept { fftw_free(p); }
};
using FftwBuffer = std::unique_ptr<fftw_complex[], FftwFree>;

struct FftwPlan {
  fftw_plan plan = nullptr;
  ~FftwPlan() {
    std::lock_guard lock(fftw_planner_mutex());
    if (plan) fftw_destroy_plan(plan);
  }
};

// In-place forward DFT, X_k = sum_j x_j exp(-2 pi i jk / n).
void forward_dft(fftw_complex* data, std::size_t n) {
  FftwPlan p;
  {
    std::lock_guard lock(fftw_planner_mutex());
    p.plan = fftw_plan_dft_1d(int(n), data, data, FFTW_FORWARD, FFTW_ESTIMATE);
  }
  if (!p.plan) throw Error(ErrorKind::Numeric, "FFT planning failed");
  fftw_execute(p.plan);
}

}  // namespace

double GaussianSource::uniform() { return double(engine_() >> 11) * 0x1.0p-53; }

double GaussianSource::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * f;
  has_spare_ = true;
  return u * f;
}

SignalSeries white_noise(std::size_t n, std::uint64_t seed) {
  if (n < 1) throw Error(ErrorKind::Config, "white noise needs n >= 1");
  GaussianSource rng(seed);
  SignalSeries out;
  out.samples.resize(n);
  for (auto& v : out.samples) v = rng.normal();
  out.label = "white_noise";
  return out;
}

double fgn_autocovariance(double hurst, std::size_t k) {
  const double two_h = 2.0 * hurst;
  const double kk = double(k);
  return 0.5 * (std::pow(kk + 1.0, two_h) - 2.0 * std::pow(kk, two_h) + std::pow(std::abs(kk - 1.0), two_h));
}

SignalSeries fgn(double hurst, std::size_t n, std::uint64_t seed) {
  if (!(hurst > 0.0 && hurst < 1.0))
    throw Error(ErrorKind::Config, "fGn Hurst exponent must lie in (0, 1), got " + std::to_string(hurst));
  if (n < 16) throw Error(ErrorKind::Config, "fGn needs n >= 16");

  // First row of the 2n circulant: gamma(0..n), gamma(n-1..1).
  const std::size_t m = 2 * n;
  FftwBuffer buf(fftw_alloc_complex(m));
  if (!buf) throw Error(ErrorKind::Numeric, "FFT buffer allocation failed");
  for (std::size_t j = 0; j <= n; ++j) {
    buf[j][0] = fgn_autocovariance(hurst, j);
    buf[j][1] = 0.0;
  }
  for (std::size_t j = n + 1; j < m; ++j) {
    buf[j][0] = buf[m - j][0];
    buf[j][1] = 0.0;
  }
  forward_dft(buf.get(), m);

  std::vector<double> scale(m);
  for (std::size_t k = 0; k < m; ++k) {
    const double lambda = buf[k][0];
    // Negative eigenvalues are clipped to zero.
    scale[k] = lambda > 0.0 ? std::sqrt(lambda / double(m)) : 0.0;
  }

  GaussianSource rng(seed);
  for (std::size_t k = 0; k < m; ++k) {
    buf[k][0] = scale[k] * rng.normal();
    buf[k][1] = scale[k] * rng.normal();
  }
  forward_dft(buf.get(), m);

  SignalSeries out;
  out.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.samples[i] = buf[i][0];
  out.label = "fgn";
  return out;
}

SignalSeries random_walk(std::size_t n, std::uint64_t seed) {
  SignalSeries out = white_noise(n, seed);
  double acc = 0.0;
  for (auto& v : out.samples) v = (acc += v);
  out.label = "random_walk";
  return out;
}

SignalSeries sine(double freq, double rate, std::size_t n, double amplitude) {
  if (!(rate > 0.0)) throw Error(ErrorKind::Config, "sample rate must be positive");
  if (!(freq > 0.0 && freq < rate / 2.0))
    throw Error(ErrorKind::Config, "sine frequency must lie in (0, rate/2)");
  if (n < 1) throw Error(ErrorKind::Config, "sine needs n >= 1");
  SignalSeries out;
  out.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    out.samples[i] = amplitude * std::sin(2.0 * std::numbers::pi * freq * double(i) / rate);
  const double rounded = std::round(rate);
  if (rounded == rate && rate <= 4.0e9) out.sample_rate = std::uint32_t(rounded);
  out.label = "sine";
  return out;
}

SignalSeries generate(const GeneratorSpec& spec) {
  switch (spec.kind) {
    case Kind::WhiteNoise: return white_noise(spec.n, spec.seed);
    case Kind::Fgn: return fgn(spec.hurst, spec.n, spec.seed);
    case Kind::Sine: return sine(spec.freq, spec.rate, spec.n, spec.amplitude);
    case Kind::RandomWalk: return random_walk(spec.n, spec.seed);
  }
  throw Error(ErrorKind::Config, "unknown generator kind");
}

}  // namespace hurstlab::synth
