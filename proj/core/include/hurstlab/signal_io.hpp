#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace hurstlab {

// Amplitude samples plus the metadata that travels with them through the pipeline.
// sample_rate == 0 means "unknown" (plain-text input).
struct SignalSeries {
  std::vector<double> samples;
  std::uint32_t sample_rate = 0;
  std::string label;

  std::size_t size() const noexcept { return samples.size(); }
};

// Throws Error(Data) unless the series is non-empty and every sample is finite.
void validate(const SignalSeries& series);

// RIFF/WAVE reader. Integer PCM (8/16/24/32 bit) is divided by 2^(bits-1) so the
// most negative code maps to -1.0; 8-bit data is unsigned and re-centred first.
// IEEE float (32/64 bit) is taken as-is and clamped to [-1, 1]. Multi-channel
// frames are averaged to mono.
SignalSeries read_wav(const std::filesystem::path& path);

// Writes 16-bit PCM (values clipped to [-1, 1)) or 32-bit float mono.
enum class WavEncoding { Pcm16, Float32 };
void write_wav(const SignalSeries& series, const std::filesystem::path& path,
               WavEncoding encoding = WavEncoding::Pcm16);

// One decimal amplitude per line. Blank lines are skipped, surrounding
// whitespace and CRLF endings tolerated.
SignalSeries read_text(const std::filesystem::path& path);

// Shortest round-trip decimal form, LF line endings.
std::string to_text(const SignalSeries& series);
void write_text(const SignalSeries& series, const std::filesystem::path& path);

// Dispatches on extension: .wav -> read_wav, anything else -> read_text.
SignalSeries read_signal(const std::filesystem::path& path);

}  // namespace hurstlab
