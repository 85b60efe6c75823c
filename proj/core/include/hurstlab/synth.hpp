#pragma once

#include <cstdint>
#include <random>

#include "hurstlab/signal_io.hpp"

namespace hurstlab::synth {

// Standard normal deviates from std::mt19937_64. The engine's output sequence is
// fixed by the C++ standard; uniforms take the top 53 bits and normals come from
// the Marsaglia polar method, so streams match across platforms (unlike
// std::normal_distribution, whose algorithm is implementation-defined).
class GaussianSource {
 public:
  explicit GaussianSource(std::uint64_t seed) : engine_(seed) {}
  double uniform();  // [0, 1)
  double normal();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

enum class Kind { WhiteNoise, Fgn, Sine, RandomWalk };

struct GeneratorSpec {
  Kind kind = Kind::WhiteNoise;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  double hurst = 0.5;      // Fgn
  double freq = 1.0;       // Sine, Hz
  double rate = 16000.0;   // Sine sample rate, Hz
  double amplitude = 1.0;  // Sine
};

SignalSeries generate(const GeneratorSpec& spec);

SignalSeries white_noise(std::size_t n, std::uint64_t seed);

// Exact autocovariance of unit-variance fractional Gaussian noise at lag k.
double fgn_autocovariance(double hurst, std::size_t k);

// Circulant embedding (Davies-Harte). Should the embedding ever have negative
// eigenvalues beyond round-off they are zeroed, which degrades to approximate
// spectral synthesis.
SignalSeries fgn(double hurst, std::size_t n, std::uint64_t seed);

// Cumulative sum of white_noise(n, seed).
SignalSeries random_walk(std::size_t n, std::uint64_t seed);

SignalSeries sine(double freq, double rate, std::size_t n, double amplitude = 1.0);

}  // namespace hurstlab::synth
