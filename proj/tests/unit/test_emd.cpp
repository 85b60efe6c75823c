#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "hurstlab/emd.hpp"
#include "hurstlab/error.hpp"
#include "hurstlab/synth.hpp"
#include "oracles.hpp"

using namespace hurstlab;
using namespace hurstlab::emd;

namespace {

std::vector<double> tone(double cycles, std::size_t n, double amp = 1.0) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = amp * std::sin(2 * std::numbers::pi * cycles * double(i) / double(n));
  return out;
}

double max_rel_reconstruction_error(std::span<const double> x, const ImfSet& set) {
  double err = 0, scale = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double sum = set.residual[i];
    for (const auto& imf : set.imfs) sum += imf[i];
    err = std::max(err, std::abs(sum - x[i]));
    scale = std::max(scale, std::abs(x[i]));
  }
  return err / scale;
}

}  // namespace

TEST_CASE("find_extrema examples") {
  auto e = find_extrema(std::vector<double>{0, 1, 0});
  CHECK(e.maxima == std::vector<std::size_t>{1});
  CHECK(e.minima.empty());

  e = find_extrema(std::vector<double>{1, 2, 3, 4});
  CHECK(e.maxima.empty());
  CHECK(e.minima.empty());

  e = find_extrema(std::vector<double>{0, 2, 2, 0});
  CHECK(e.maxima == std::vector<std::size_t>{1});

  e = find_extrema(std::vector<double>{3, 1, 1, 1, 4, 2, 2, 5});
  CHECK(e.minima == std::vector<std::size_t>{2, 5});
  CHECK(e.maxima == std::vector<std::size_t>{4});

  // A step (rise, flat, rise) is not an extremum.
  e = find_extrema(std::vector<double>{0, 1, 1, 2});
  CHECK(e.maxima.empty());
  CHECK(e.minima.empty());

  CHECK_THROWS_AS(find_extrema(std::vector<double>{1, 2}), Error);
}

TEST_CASE("natural spline reproduces lines and interpolates knots") {
  const std::vector<double> knots{-3, 0, 2, 7, 11};
  std::vector<double> line;
  for (double k : knots) line.push_back(2.5 * k - 1);
  const auto y = natural_spline(knots, line, 10);
  for (std::size_t t = 0; t < y.size(); ++t) CHECK(y[t] == doctest::Approx(2.5 * double(t) - 1).epsilon(1e-12));

  const std::vector<double> vals{1, -2, 0.5, 4, 3};
  const auto z = natural_spline(knots, vals, 12);
  CHECK(z[0] == doctest::Approx(-2));
  CHECK(z[2] == doctest::Approx(0.5));
  CHECK(z[7] == doctest::Approx(4));
  CHECK(z[11] == doctest::Approx(3));
  CHECK_THROWS_AS(natural_spline(std::vector<double>{0, 0}, std::vector<double>{1, 1}, 3), Error);
}

TEST_CASE("sift of a pure sinusoid returns the sinusoid") {
  const auto x = tone(8, 1024);
  const auto imf = sift(x);
  double worst = 0;
  for (std::size_t i = 102; i < 922; ++i) worst = std::max(worst, std::abs(imf[i] - x[i]));
  CHECK(worst < 0.05);
  CHECK(is_imf(imf));
}

TEST_CASE("sift refuses monotone input") {
  std::vector<double> ramp(64);
  for (std::size_t i = 0; i < ramp.size(); ++i) ramp[i] = double(i);
  try {
    sift(ramp);
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("insufficient extrema") != std::string::npos);
  }
}

TEST_CASE("first IMF of a two-tone signal tracks the fast tone") {
  const std::size_t n = 1024;
  const auto fast = tone(32, n), slow = tone(2, n);
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = fast[i] + slow[i];
  const auto imf = sift(x);
  const std::size_t lo = n / 10, hi = n - n / 10;
  const double r = oracle::pearson(std::span(imf).subspan(lo, hi - lo), std::span(fast).subspan(lo, hi - lo));
  CHECK(r > 0.95);
}

TEST_CASE("decompose: monotone input has no IMFs") {
  std::vector<double> ramp(100);
  for (std::size_t i = 0; i < ramp.size(); ++i) ramp[i] = 0.1 * double(i) + 2;
  const auto set = decompose(ramp);
  CHECK(set.imfs.empty());
  CHECK(set.residual == ramp);
  CHECK_THROWS_AS(decompose(std::vector<double>(15, 1.0)), Error);
}

TEST_CASE("decompose: sinusoid energy lands in the first IMF") {
  const auto x = tone(8, 1024);
  const auto set = decompose(x);
  REQUIRE(!set.imfs.empty());
  CHECK(set.imfs.size() <= 2);
  CHECK(oracle::energy(set.imfs[0]) / oracle::energy(x) >= 0.99);
}

TEST_CASE("decompose: white noise yields about log2(N) IMFs") {
  const auto x = synth::white_noise(4096, 21).samples;
  const auto set = decompose(x);
  const double expected = std::log2(4096.0);
  CHECK(std::abs(double(set.imfs.size()) - expected) <= 2.0);
}

TEST_CASE("decomposition reconstructs the input and yields valid IMFs") {
  std::mt19937 rng(99);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 16 + std::size_t(rng() % 2000);
    std::vector<double> x;
    if (t % 2) x = oracle::random_vector(rng, n, -5, 5);
    else x = synth::fgn(0.2 + 0.015 * t, n, std::uint64_t(t)).samples;
    const auto set = decompose(x);
    CHECK(max_rel_reconstruction_error(x, set) < 1e-8);
    for (const auto& imf : set.imfs) {
      CHECK(imf.size() == n);
      CHECK(is_imf(imf));
    }
    const auto res = find_extrema(set.residual);
    const auto [lo, hi] = std::minmax_element(set.residual.begin(), set.residual.end());
    const auto [xlo, xhi] = std::minmax_element(x.begin(), x.end());
    CHECK((res.maxima.size() + res.minima.size() < 2 || *hi - *lo <= 1e-10 * (*xhi - *xlo)));
  }
}

TEST_CASE("decompose is deterministic") {
  const auto x = synth::fgn(0.4, 2048, 6).samples;
  const auto a = decompose(x), b = decompose(x);
  CHECK(a.imfs == b.imfs);
  CHECK(a.residual == b.residual);
}

TEST_CASE("denoise examples") {
  const auto noisy_src = synth::white_noise(1024, 17).samples;
  const auto clean = tone(8, 1024);
  SignalSeries x{{}, 16000, "sad"};
  for (std::size_t i = 0; i < clean.size(); ++i) x.samples.push_back(clean[i] + 0.05 * noisy_src[i]);

  const auto same = denoise(x, 0);
  for (std::size_t i = 0; i < x.size(); ++i) CHECK(std::abs(same.samples[i] - x.samples[i]) <= 1e-8);

  const auto den = denoise(x, 1);
  CHECK(den.label == "sad");
  CHECK(den.sample_rate == 16000);
  double rms_in = 0, rms_out = 0;
  for (std::size_t i = 0; i < clean.size(); ++i) {
    rms_in += std::pow(x.samples[i] - clean[i], 2);
    rms_out += std::pow(den.samples[i] - clean[i], 2);
  }
  CHECK(rms_out < rms_in);

  SignalSeries ramp{{}, 0, ""};
  for (int i = 0; i < 64; ++i) ramp.samples.push_back(double(i));
  CHECK_THROWS_AS(denoise(ramp, 1), Error);
  CHECK_THROWS_AS(denoise(x, 40), Error);
}
