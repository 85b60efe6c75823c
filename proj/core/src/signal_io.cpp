#include "hurstlab/signal_io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <optional>
#include <string_view>

#include "hurstlab/error.hpp"

namespace hurstlab {

void validate(const SignalSeries& series) {
  if (series.samples.empty()) throw Error(ErrorKind::Data, "signal has no samples");
  for (std::size_t i = 0; i < series.samples.size(); ++i) {
    if (!std::isfinite(series.samples[i]))
      throw Error(ErrorKind::Data, "non-finite sample at index " + std::to_string(i));
  }
}

namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

std::vector<unsigned char> slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::uint32_t le32(const unsigned char* p) {
  return std::uint32_t(p[0]) | std::uint32_t(p[1]) << 8 | std::uint32_t(p[2]) << 16 |
         std::uint32_t(p[3]) << 24;
}
std::uint16_t le16(const unsigned char* p) { return std::uint16_t(p[0] | p[1] << 8); }

void put16(std::string& out, std::uint16_t v) {
  out.push_back(char(v & 0xFF));
  out.push_back(char(v >> 8));
}
void put32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(char((v >> (8 * i)) & 0xFF));
}

struct WavFormat {
  std::uint16_t encoding = 0;
  std::uint16_t channels = 0;
  std::uint32_t sample_rate = 0;
  std::uint16_t block_align = 0;
  std::uint16_t bits = 0;
};

double decode_sample(const unsigned char* p, const WavFormat& fmt) {
  if (fmt.encoding == kFormatFloat) {
    double v;
    if (fmt.bits == 32) {
      v = std::bit_cast<float>(le32(p));
    } else {
      std::uint64_t raw = std::uint64_t(le32(p)) | std::uint64_t(le32(p + 4)) << 32;
      v = std::bit_cast<double>(raw);
    }
    return std::clamp(v, -1.0, 1.0);
  }
  switch (fmt.bits) {
    case 8: return (double(p[0]) - 128.0) / 128.0;
    case 16: return double(std::int16_t(le16(p))) / 32768.0;
    case 24: {
      std::int32_t v = std::int32_t(std::uint32_t(p[0]) << 8 | std::uint32_t(p[1]) << 16 |
                                    std::uint32_t(p[2]) << 24) >> 8;
      return double(v) / 8388608.0;
    }
    default: return double(std::int32_t(le32(p))) / 2147483648.0;
  }
}

std::string_view trim(std::string_view s) {
  constexpr std::string_view ws = " \t\r\n\f\v";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

}  // namespace

SignalSeries read_wav(const std::filesystem::path& path) {
  const auto bytes = slurp(path);
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0)
    throw Error(ErrorKind::Format, path.string() + ": not a RIFF/WAVE file");

  std::optional<WavFormat> fmt;
  const unsigned char* data = nullptr;
  std::size_t data_size = 0;
  bool have_data = false;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const unsigned char* hdr = bytes.data() + pos;
    const std::size_t size = le32(hdr + 4);
    const std::size_t body = pos + 8;
    const std::size_t avail = std::min(size, bytes.size() - body);
    if (std::memcmp(hdr, "fmt ", 4) == 0) {
      if (avail < 16) throw Error(ErrorKind::Format, path.string() + ": truncated fmt chunk");
      const unsigned char* f = bytes.data() + body;
      WavFormat w;
      w.encoding = le16(f);
      w.channels = le16(f + 2);
      w.sample_rate = le32(f + 4);
      w.block_align = le16(f + 12);
      w.bits = le16(f + 14);
      if (w.encoding == kFormatExtensible) {
        if (avail < 26) throw Error(ErrorKind::Format, path.string() + ": truncated extensible fmt");
        w.encoding = le16(f + 24);
      }
      fmt = w;
    } else if (std::memcmp(hdr, "data", 4) == 0) {
      data = bytes.data() + body;
      data_size = avail;
      have_data = true;
    }
    pos = body + size + (size & 1);
  }

  if (!fmt) throw Error(ErrorKind::Format, path.string() + ": missing fmt chunk");
  if (!have_data) throw Error(ErrorKind::Format, path.string() + ": missing data chunk");

  const bool pcm_ok = fmt->encoding == kFormatPcm &&
                      (fmt->bits == 8 || fmt->bits == 16 || fmt->bits == 24 || fmt->bits == 32);
  const bool float_ok = fmt->encoding == kFormatFloat && (fmt->bits == 32 || fmt->bits == 64);
  if (!pcm_ok && !float_ok)
    throw Error(ErrorKind::Format, path.string() + ": unsupported encoding (format tag " +
                                       std::to_string(fmt->encoding) + ", " +
                                       std::to_string(fmt->bits) + " bits)");
  if (fmt->channels == 0)
    throw Error(ErrorKind::Format, path.string() + ": zero channels declared");

  const std::size_t sample_bytes = fmt->bits / 8;
  const std::size_t frame_bytes =
      std::max<std::size_t>(fmt->block_align, sample_bytes * fmt->channels);
  const std::size_t frames = data_size / frame_bytes;
  if (frames == 0) throw Error(ErrorKind::Data, path.string() + ": zero-length data chunk");

  SignalSeries out;
  out.sample_rate = fmt->sample_rate;
  out.samples.resize(frames);
  for (std::size_t i = 0; i < frames; ++i) {
    const unsigned char* frame = data + i * frame_bytes;
    double acc = 0.0;
    for (std::size_t c = 0; c < fmt->channels; ++c) acc += decode_sample(frame + c * sample_bytes, *fmt);
    out.samples[i] = acc / fmt->channels;
  }
  validate(out);
  return out;
}

void write_wav(const SignalSeries& series, const std::filesystem::path& path, WavEncoding encoding) {
  validate(series);
  const bool pcm = encoding == WavEncoding::Pcm16;
  const std::uint16_t bits = pcm ? 16 : 32;
  const std::uint32_t rate = series.sample_rate == 0 ? 16000 : series.sample_rate;
  const std::uint32_t data_size = std::uint32_t(series.size() * bits / 8);

  std::string out;
  out.reserve(44 + data_size);
  out += "RIFF";
  put32(out, 36 + data_size);
  out += "WAVEfmt ";
  put32(out, 16);
  put16(out, pcm ? kFormatPcm : kFormatFloat);
  put16(out, 1);
  put32(out, rate);
  put32(out, rate * bits / 8);
  put16(out, bits / 8);
  put16(out, bits);
  out += "data";
  put32(out, data_size);
  for (double v : series.samples) {
    if (pcm) {
      const double scaled = std::round(std::clamp(v, -1.0, 1.0) * 32768.0);
      put16(out, std::uint16_t(std::int16_t(std::clamp(scaled, -32768.0, 32767.0))));
    } else {
      put32(out, std::bit_cast<std::uint32_t>(float(v)));
    }
  }

  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorKind::Io, "cannot write " + path.string());
  f.write(out.data(), std::streamsize(out.size()));
  if (!f) throw Error(ErrorKind::Io, "write failed for " + path.string());
}

SignalSeries read_text(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());

  SignalSeries out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto field = trim(line);
    if (field.empty()) continue;
    double v = 0.0;
    const auto num = field.front() == '+' ? field.substr(1) : field;
    const auto [end, ec] = std::from_chars(num.data(), num.data() + num.size(), v);
    if (ec != std::errc{} || end != num.data() + num.size() || !std::isfinite(v))
      throw Error(ErrorKind::Format, path.string() + ":" + std::to_string(lineno) +
                                         ": cannot parse amplitude '" + std::string(field) + "'");
    out.samples.push_back(v);
  }
  if (out.samples.empty()) throw Error(ErrorKind::Data, path.string() + ": no samples in file");
  return out;
}

std::string to_text(const SignalSeries& series) {
  validate(series);
  std::string out;
  out.reserve(series.size() * 20);
  std::array<char, 32> buf{};
  for (double v : series.samples) {
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    out.append(buf.data(), res.ptr);
    out.push_back('\n');
  }
  return out;
}

void write_text(const SignalSeries& series, const std::filesystem::path& path) {
  const std::string out = to_text(series);
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorKind::Io, "cannot write " + path.string());
  f.write(out.data(), std::streamsize(out.size()));
  if (!f) throw Error(ErrorKind::Io, "write failed for " + path.string());
}

SignalSeries read_signal(const std::filesystem::path& path) {
  auto ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return char(std::tolower(c)); });
  return ext == ".wav" ? read_wav(path) : read_text(path);
}

}  // namespace hurstlab
