#include <doctest.h>

#include <cmath>
#include <random>

#include "hurstlab/error.hpp"
#include "hurstlab/synth.hpp"
#include "oracles.hpp"

using namespace hurstlab;
using namespace hurstlab::synth;

TEST_CASE("uniforms are the top 53 bits of mt19937_64") {
  GaussianSource src(1234);
  std::mt19937_64 ref(1234);
  for (int i = 0; i < 100; ++i) CHECK(src.uniform() == std::ldexp(double(ref() >> 11), -53));
}

TEST_CASE("white noise is deterministic per seed") {
  CHECK(white_noise(1000, 7).samples == white_noise(1000, 7).samples);
  CHECK(white_noise(1000, 7).samples != white_noise(1000, 8).samples);
  CHECK(white_noise(16, 0).size() == 16);
  CHECK_THROWS_AS(white_noise(0, 1), Error);
}

TEST_CASE("white noise moments and independence at 2^16") {
  const auto x = white_noise(1 << 16, 2024).samples;
  CHECK(std::abs(oracle::mean(x)) < 0.02);
  CHECK(std::abs(oracle::variance(x) - 1.0) < 0.05);
  CHECK(std::abs(oracle::autocorrelation(x, 1)) < 0.02);
}

TEST_CASE("fGn with H = 0.5 is uncorrelated") {
  const auto x = fgn(0.5, 1 << 16, 77).samples;
  CHECK(std::abs(oracle::autocorrelation(x, 1)) < 0.02);
  CHECK(std::abs(oracle::variance(x) - 1.0) < 0.05);
}

TEST_CASE("fGn sample autocovariance follows the closed form") {
  CHECK(fgn_autocovariance(0.7, 0) == 1.0);
  CHECK(fgn_autocovariance(0.5, 3) == doctest::Approx(0.0));
  const double h = 0.7;
  const auto x = fgn(h, 1 << 16, 4242).samples;
  for (std::size_t k = 1; k <= 8; ++k) {
    CHECK(fgn_autocovariance(h, k) == doctest::Approx(oracle::fgn_gamma(h, double(k))));
    CHECK(std::abs(oracle::autocovariance(x, k) - oracle::fgn_gamma(h, double(k))) < 0.03);
  }
}

TEST_CASE("fGn is deterministic and validates its inputs") {
  CHECK(fgn(0.3, 500, 9).samples == fgn(0.3, 500, 9).samples);
  CHECK(fgn(0.3, 17, 9).size() == 17);
  CHECK_THROWS_AS(fgn(1.2, 100, 1), Error);
  CHECK_THROWS_AS(fgn(0.0, 100, 1), Error);
  CHECK_THROWS_AS(fgn(1.0, 100, 1), Error);
  CHECK_THROWS_AS(fgn(0.5, 15, 1), Error);
}

TEST_CASE("random walk is the running sum of white noise") {
  const auto w = white_noise(300, 5).samples;
  const auto r = random_walk(300, 5).samples;
  double acc = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    acc += w[i];
    CHECK(r[i] == acc);
  }
}

TEST_CASE("sine sampling") {
  const auto s = sine(1, 4, 4, 1.0).samples;
  const std::vector<double> expect{0, 1, 0, -1};
  for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(s[i] - expect[i]) < 1e-12);
  for (double v : sine(3, 100, 50, 0.0).samples) CHECK(v == 0.0);
  CHECK(sine(1, 4, 4).sample_rate == 4);
  CHECK_THROWS_AS(sine(2, 4, 4), Error);
  CHECK_THROWS_AS(sine(5, 4, 4), Error);
}

TEST_CASE("generate dispatches on kind") {
  CHECK(generate({.kind = Kind::Fgn, .n = 64, .seed = 3, .hurst = 0.8}).samples == fgn(0.8, 64, 3).samples);
  CHECK(generate({.kind = Kind::RandomWalk, .n = 64, .seed = 3}).samples == random_walk(64, 3).samples);
  CHECK(generate({.kind = Kind::Sine, .n = 8, .freq = 1, .rate = 8}).samples == sine(1, 8, 8).samples);
}
