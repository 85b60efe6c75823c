#include <doctest.h>

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <random>

#include "hurstlab/error.hpp"
#include "hurstlab/signal_io.hpp"
#include "temp_dir.hpp"

using namespace hurstlab;
using testing_support::TempDir;

namespace {

// Builds a canonical 44-byte-header WAV by hand.
std::string wav_bytes(std::uint16_t format, std::uint16_t channels, std::uint32_t rate, std::uint16_t bits,
                      const std::string& payload, bool extensible = false) {
  auto u16 = [](std::string& s, std::uint16_t v) { s.push_back(char(v & 0xFF)), s.push_back(char(v >> 8)); };
  auto u32 = [](std::string& s, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) s.push_back(char((v >> (8 * i)) & 0xFF));
  };
  std::string fmt;
  u16(fmt, extensible ? 0xFFFE : format);
  u16(fmt, channels);
  u32(fmt, rate);
  u32(fmt, rate * channels * bits / 8);
  u16(fmt, std::uint16_t(channels * bits / 8));
  u16(fmt, bits);
  if (extensible) {
    u16(fmt, 22);
    u16(fmt, bits);
    u32(fmt, 0);
    u16(fmt, format);
    fmt.append("\x00\x00\x00\x00\x10\x00\x80\x00\x00\xAA\x00\x38\x9B\x71", 14);
  }
  std::string out = "RIFF";
  u32(out, std::uint32_t(4 + 8 + fmt.size() + 8 + payload.size()));
  out += "WAVE";
  // An unrelated chunk before fmt exercises the chunk walker.
  out += "LIST";
  u32(out, 3);
  out += std::string("abc\0", 4);
  out += "fmt ";
  u32(out, std::uint32_t(fmt.size()));
  out += fmt;
  out += "data";
  u32(out, std::uint32_t(payload.size()));
  out += payload;
  return out;
}

std::string pcm16(std::initializer_list<std::int16_t> v) {
  std::string s;
  for (auto x : v) s.push_back(char(std::uint16_t(x) & 0xFF)), s.push_back(char(std::uint16_t(x) >> 8));
  return s;
}

std::string f32(std::initializer_list<float> v) {
  std::string s;
  for (float x : v) {
    const auto bits = std::bit_cast<std::uint32_t>(x);
    for (int i = 0; i < 4; ++i) s.push_back(char((bits >> (8 * i)) & 0xFF));
  }
  return s;
}

void put(const std::filesystem::path& p, const std::string& bytes) {
  std::ofstream(p, std::ios::binary) << bytes;
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected hurstlab::Error");
  return ErrorKind::Numeric;
}

}  // namespace

TEST_CASE("16-bit PCM divides by 2^15") {
  TempDir dir;
  put(dir / "a.wav", wav_bytes(1, 1, 16000, 16, pcm16({0, 16384, -16384, -32768})));
  const auto s = read_wav(dir / "a.wav");
  REQUIRE(s.size() == 4);
  CHECK(s.samples[0] == 0.0);
  CHECK(s.samples[1] == 0.5);
  CHECK(s.samples[2] == -0.5);
  CHECK(s.samples[3] == -1.0);
  CHECK(s.sample_rate == 16000);
}

TEST_CASE("16 kHz mono file keeps rate and frame count") {
  TempDir dir;
  std::string payload;
  for (int i = 0; i < 1000; ++i) payload += pcm16({std::int16_t(i)});
  put(dir / "b.wav", wav_bytes(1, 1, 16000, 16, payload));
  const auto s = read_wav(dir / "b.wav");
  CHECK(s.sample_rate == 16000);
  CHECK(s.size() == 1000);
}

TEST_CASE("stereo frames are averaged to mono") {
  TempDir dir;
  put(dir / "c.wav", wav_bytes(3, 2, 24414, 32, f32({0.2f, 0.4f})));
  const auto s = read_wav(dir / "c.wav");
  REQUIRE(s.size() == 1);
  CHECK(s.samples[0] == doctest::Approx(0.3).epsilon(1e-7));
  CHECK(s.sample_rate == 24414);
}

TEST_CASE("8, 24 and 32-bit integer PCM and extensible headers") {
  TempDir dir;
  put(dir / "u8.wav", wav_bytes(1, 1, 8000, 8, std::string("\x80\xC0\x40\x00", 4)));
  auto s = read_wav(dir / "u8.wav");
  CHECK(s.samples == std::vector<double>{0.0, 0.5, -0.5, -1.0});

  // 24-bit little endian: 0x400000 = 2^22 -> 0.5, 0xC00000 -> -0.5
  put(dir / "i24.wav", wav_bytes(1, 1, 8000, 24, std::string("\x00\x00\x40\x00\x00\xC0", 6)));
  s = read_wav(dir / "i24.wav");
  CHECK(s.samples == std::vector<double>{0.5, -0.5});

  put(dir / "i32.wav", wav_bytes(1, 1, 8000, 32, std::string("\x00\x00\x00\x80\x00\x00\x00\x40", 8)));
  s = read_wav(dir / "i32.wav");
  CHECK(s.samples == std::vector<double>{-1.0, 0.5});

  put(dir / "ext.wav", wav_bytes(1, 1, 16000, 16, pcm16({16384}), true));
  s = read_wav(dir / "ext.wav");
  CHECK(s.samples == std::vector<double>{0.5});
}

TEST_CASE("WAV errors are distinct") {
  TempDir dir;
  CHECK(kind_of([&] { read_wav(dir / "missing.wav"); }) == ErrorKind::Io);

  put(dir / "adpcm.wav", wav_bytes(2, 1, 8000, 4, std::string(8, '\0')));
  CHECK(kind_of([&] { read_wav(dir / "adpcm.wav"); }) == ErrorKind::Format);

  put(dir / "empty.wav", wav_bytes(1, 1, 8000, 16, ""));
  CHECK(kind_of([&] { read_wav(dir / "empty.wav"); }) == ErrorKind::Data);

  put(dir / "junk.wav", "not a wav file at all");
  CHECK(kind_of([&] { read_wav(dir / "junk.wav"); }) == ErrorKind::Format);
}

TEST_CASE("normalization preserves ordering of raw codes") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> d(-32768, 32767);
  std::vector<std::int16_t> raw(500);
  for (auto& v : raw) v = std::int16_t(d(rng));
  std::string payload;
  for (auto v : raw) payload += pcm16({v});
  TempDir dir;
  put(dir / "o.wav", wav_bytes(1, 1, 16000, 16, payload));
  const auto s = read_wav(dir / "o.wav");
  for (std::size_t i = 0; i < raw.size(); ++i)
    for (std::size_t j = i + 1; j < std::min(raw.size(), i + 20); ++j) {
      if (raw[i] < raw[j]) CHECK(s.samples[i] < s.samples[j]);
      if (raw[i] == raw[j]) CHECK(s.samples[i] == s.samples[j]);
    }
  for (double v : s.samples) CHECK((v >= -1.0 && v <= 1.0));
}

TEST_CASE("read_text parses one amplitude per line") {
  TempDir dir;
  put(dir / "a.txt", "1.0\n-0.5\n0.25\n");
  auto s = read_text(dir / "a.txt");
  CHECK(s.samples == std::vector<double>{1.0, -0.5, 0.25});
  CHECK(s.sample_rate == 0);

  put(dir / "b.txt", "1.0\n-0.5\n0.25\n\n");
  CHECK(read_text(dir / "b.txt").samples == s.samples);

  put(dir / "crlf.txt", "  1.0\r\n-0.5 \r\n\r\n+0.25\r\n");
  CHECK(read_text(dir / "crlf.txt").samples == s.samples);
}

TEST_CASE("read_text reports the failing line") {
  TempDir dir;
  put(dir / "bad.txt", "abc\n");
  try {
    read_text(dir / "bad.txt");
    FAIL("expected parse error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Format);
    CHECK(std::string(e.what()).find(":1:") != std::string::npos);
  }
  put(dir / "bad3.txt", "1\n2\nnan\n");
  try {
    read_text(dir / "bad3.txt");
    FAIL("expected parse error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find(":3:") != std::string::npos);
  }
  put(dir / "empty.txt", "\n\n");
  CHECK(kind_of([&] { read_text(dir / "empty.txt"); }) == ErrorKind::Data);
}

TEST_CASE("write_text emits shortest decimal forms") {
  TempDir dir;
  write_text({{0.0, 0.5}, 0, ""}, dir / "o.txt");
  std::ifstream in(dir / "o.txt", std::ios::binary);
  const std::string body{std::istreambuf_iterator<char>(in), {}};
  CHECK(body == "0\n0.5\n");

  write_text({{1e-7}, 0, ""}, dir / "tiny.txt");
  CHECK(read_text(dir / "tiny.txt").samples == std::vector<double>{1e-7});
}

TEST_CASE("write_text refuses an empty series and writes nothing") {
  TempDir dir;
  CHECK(kind_of([&] { write_text({}, dir / "none.txt"); }) == ErrorKind::Data);
  CHECK_FALSE(std::filesystem::exists(dir / "none.txt"));
  CHECK(kind_of([&] { write_text({{1.0}, 0, ""}, dir / "no_such_dir" / "x.txt"); }) == ErrorKind::Io);
}

TEST_CASE("text round trip is exact for arbitrary finite doubles") {
  TempDir dir;
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> mant(-1.0, 1.0);
  std::uniform_int_distribution<int> expo(-300, 300);
  for (int trial = 0; trial < 20; ++trial) {
    SignalSeries s;
    for (int i = 0; i < 200; ++i) s.samples.push_back(std::ldexp(mant(rng), expo(rng)));
    write_text(s, dir / "rt.txt");
    CHECK(read_text(dir / "rt.txt").samples == s.samples);
  }
}

TEST_CASE("WAV writer round trip through the reader") {
  TempDir dir;
  SignalSeries s{{0.0, 0.5, -0.5, -1.0, 0.25}, 16000, ""};
  write_wav(s, dir / "w.wav");
  CHECK(read_wav(dir / "w.wav").samples == s.samples);
  write_wav(s, dir / "wf.wav", WavEncoding::Float32);
  const auto f = read_wav(dir / "wf.wav");
  CHECK(f.samples == s.samples);
  CHECK(f.sample_rate == 16000);
  CHECK(read_signal(dir / "wf.wav").samples == s.samples);
}

TEST_CASE("validate rejects non-finite samples") {
  CHECK(kind_of([] { validate({{1.0, std::nan("")}, 0, ""}); }) == ErrorKind::Data);
  CHECK(kind_of([] { validate({}); }) == ErrorKind::Data);
}
