// Copyright 2026 kissgev contributors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "kissgev/wav_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

#include "kissgev/error.hpp"

namespace kissgev {
namespace {

constexpr int kMaxChannels = 64;

constexpr std::uint16_t kFormatPcm = 0x0001;
constexpr std::uint16_t kFormatIeeeFloat = 0x0003;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

std::string format_name(std::uint16_t code) {
  switch (code) {
    case 0x0002: return "ADPCM (2)";
    case 0x0006: return "A-law (6)";
    case 0x0007: return "mu-law (7)";
    case 0x0011: return "IMA ADPCM (17)";
    case 0x0055: return "MP3 (85)";
    default: return "format code " + std::to_string(code);
  }
}

struct Reader {
  const std::vector<std::uint8_t>& data;
  std::size_t pos = 0;

  void require(std::size_t n, const char* what) const {
    if (pos + n > data.size()) {
      throw IoError(std::string("truncated WAV file while reading ") + what);
    }
  }
  std::uint16_t u16(const char* what) {
    require(2, what);
    std::uint16_t v = static_cast<std::uint16_t>(data[pos] | (data[pos + 1] << 8));
    pos += 2;
    return v;
  }
  std::uint32_t u32(const char* what) {
    require(4, what);
    std::uint32_t v = data[pos] | (data[pos + 1] << 8) |
                      (data[pos + 2] << 16) |
                      (static_cast<std::uint32_t>(data[pos + 3]) << 24);
    pos += 4;
    return v;
  }
  std::string tag(const char* what) {
    require(4, what);
    std::string s(reinterpret_cast<const char*>(&data[pos]), 4);
    pos += 4;
    return s;
  }
};

struct FmtChunk {
  std::uint16_t format = 0;
  std::uint16_t channels = 0;
  std::uint32_t sample_rate = 0;
  std::uint16_t bits_per_sample = 0;
  std::uint16_t block_align = 0;
};

FmtChunk parse_fmt(const std::vector<std::uint8_t>& bytes, std::size_t offset,
                   std::uint32_t size) {
  if (size < 16) throw FormatError("WAV fmt chunk shorter than 16 bytes");
  Reader r{bytes, offset};
  FmtChunk fmt;
  fmt.format = r.u16("fmt.format");
  fmt.channels = r.u16("fmt.channels");
  fmt.sample_rate = r.u32("fmt.sample_rate");
  r.u32("fmt.byte_rate");
  fmt.block_align = r.u16("fmt.block_align");
  fmt.bits_per_sample = r.u16("fmt.bits_per_sample");
  if (fmt.format == kFormatExtensible) {
    if (size < 40) throw FormatError("WAVE_FORMAT_EXTENSIBLE fmt chunk shorter than 40 bytes");
    r.u16("fmt.cb_size");
    r.u16("fmt.valid_bits");
    r.u32("fmt.channel_mask");
    fmt.format = r.u16("fmt.sub_format");  // first two GUID bytes carry the code
  }
  return fmt;
}

double decode_pcm16(const std::uint8_t* p) {
  std::int16_t v;
  std::memcpy(&v, p, 2);
  return static_cast<double>(v) / 32768.0;
}

double decode_pcm32(const std::uint8_t* p) {
  std::int32_t v;
  std::memcpy(&v, p, 4);
  return static_cast<double>(v) / 2147483648.0;
}

double decode_float32(const std::uint8_t* p) {
  float v;
  std::memcpy(&v, p, 4);
  return static_cast<double>(v);
}

void append_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xFF));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void append_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xFF));
  out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xFF));
  out.push_back(static_cast<std::uint8_t>((v >> 16) & 0xFF));
  out.push_back(static_cast<std::uint8_t>(v >> 24));
}

void append_tag(std::vector<std::uint8_t>& out, const char* tag) {
  out.insert(out.end(), tag, tag + 4);
}

}  // namespace

AudioClip AudioClip::channel(int channel) const {
  if (channel < 0 || channel >= channels()) {
    throw InvalidArgument("channel index " + std::to_string(channel) +
                          " out of range for " + std::to_string(channels()) +
                          "-channel clip");
  }
  AudioClip out;
  out.samples = samples.row(channel);
  out.sample_rate = sample_rate;
  return out;
}

void AudioClip::validate() const {
  if (samples.rows() < 1 || samples.cols() < 1) {
    throw InvalidArgument("audio clip has no samples");
  }
  if (sample_rate <= 0) {
    throw InvalidArgument("audio clip sample rate must be positive");
  }
  if (!samples.allFinite()) {
    throw NumericError("audio clip contains non-finite samples");
  }
}

AudioClip read_wav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open WAV file: " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  in.close();

  Reader r{bytes};
  if (r.tag("RIFF header") != "RIFF") throw FormatError("not a RIFF file: " + path.string());
  r.u32("RIFF size");
  if (r.tag("WAVE tag") != "WAVE") throw FormatError("not a WAVE file: " + path.string());

  bool have_fmt = false;
  FmtChunk fmt;
  std::size_t data_offset = 0;
  std::uint32_t data_size = 0;
  bool have_data = false;

  while (r.pos + 8 <= bytes.size()) {
    std::string id = r.tag("chunk id");
    std::uint32_t size = r.u32("chunk size");
    if (id == "fmt ") {
      r.require(size, "fmt chunk");
      fmt = parse_fmt(bytes, r.pos, size);
      have_fmt = true;
    } else if (id == "data") {
      data_offset = r.pos;
      data_size = size;
      have_data = true;
    }
    r.require(size, "chunk body");
    r.pos += size + (size & 1);  // chunks are word aligned
    if (have_fmt && have_data) break;
  }
  if (!have_fmt) throw FormatError("WAV file has no fmt chunk: " + path.string());
  if (!have_data) throw FormatError("WAV file has no data chunk: " + path.string());

  if (fmt.channels < 1 || fmt.channels > kMaxChannels) {
    throw FormatError("unsupported channel count " + std::to_string(fmt.channels));
  }
  if (fmt.sample_rate == 0) throw FormatError("WAV sample rate is zero");

  double (*decode)(const std::uint8_t*) = nullptr;
  int bytes_per_sample = 0;
  if (fmt.format == kFormatPcm && fmt.bits_per_sample == 16) {
    decode = decode_pcm16;
    bytes_per_sample = 2;
  } else if (fmt.format == kFormatPcm && fmt.bits_per_sample == 32) {
    decode = decode_pcm32;
    bytes_per_sample = 4;
  } else if (fmt.format == kFormatIeeeFloat && fmt.bits_per_sample == 32) {
    decode = decode_float32;
    bytes_per_sample = 4;
  } else if (fmt.format == kFormatPcm || fmt.format == kFormatIeeeFloat) {
    throw FormatError("unsupported WAV bit depth: " +
                      std::to_string(fmt.bits_per_sample) + " bits (" +
                      (fmt.format == kFormatPcm ? "PCM" : "IEEE float") + ")");
  } else {
    throw FormatError("unsupported WAV encoding: " + format_name(fmt.format));
  }

  const int frame_bytes = bytes_per_sample * fmt.channels;
  if (data_size % frame_bytes != 0) {
    throw IoError("WAV data chunk is not a whole number of sample frames");
  }
  const std::size_t frames = data_size / frame_bytes;
  if (frames == 0) throw FormatError("WAV file holds no samples: " + path.string());

  AudioClip clip;
  clip.sample_rate = static_cast<int>(fmt.sample_rate);
  clip.samples.resize(fmt.channels, static_cast<Eigen::Index>(frames));
  const std::uint8_t* p = bytes.data() + data_offset;
  for (std::size_t t = 0; t < frames; ++t) {
    for (int d = 0; d < fmt.channels; ++d) {
      clip.samples(d, static_cast<Eigen::Index>(t)) = decode(p);
      p += bytes_per_sample;
    }
  }
  return clip;
}

void write_wav(const AudioClip& clip, const std::filesystem::path& path,
               WavEncoding encoding) {
  clip.validate();
  if (clip.channels() > kMaxChannels) {
    throw InvalidArgument("cannot write more than 64 channels");
  }

  const int channels = clip.channels();
  const Eigen::Index frames = clip.length();
  const bool is_float = encoding == WavEncoding::Float32;
  const int bytes_per_sample = is_float ? 4 : 2;
  const std::uint32_t data_size =
      static_cast<std::uint32_t>(frames) * channels * bytes_per_sample;

  std::vector<std::uint8_t> out;
  out.reserve(data_size + 64);
  append_tag(out, "RIFF");
  append_u32(out, 0);  // patched below
  append_tag(out, "WAVE");

  append_tag(out, "fmt ");
  append_u32(out, is_float ? 18 : 16);
  append_u16(out, is_float ? kFormatIeeeFloat : kFormatPcm);
  append_u16(out, static_cast<std::uint16_t>(channels));
  append_u32(out, static_cast<std::uint32_t>(clip.sample_rate));
  append_u32(out, static_cast<std::uint32_t>(clip.sample_rate) * channels * bytes_per_sample);
  append_u16(out, static_cast<std::uint16_t>(channels * bytes_per_sample));
  append_u16(out, static_cast<std::uint16_t>(bytes_per_sample * 8));
  if (is_float) {
    append_u16(out, 0);  // cbSize
    append_tag(out, "fact");
    append_u32(out, 4);
    append_u32(out, static_cast<std::uint32_t>(frames));
  }

  append_tag(out, "data");
  append_u32(out, data_size);
  for (Eigen::Index t = 0; t < frames; ++t) {
    for (int d = 0; d < channels; ++d) {
      const double x = clip.samples(d, t);
      if (is_float) {
        const float f = static_cast<float>(x);
        std::uint32_t bits;
        std::memcpy(&bits, &f, 4);
        append_u32(out, bits);
      } else {
        const double clamped = std::clamp(x, -1.0, 1.0);
        const long q = std::lround(clamped * 32768.0);
        const std::int16_t v = static_cast<std::int16_t>(std::clamp<long>(q, -32768, 32767));
        append_u16(out, static_cast<std::uint16_t>(v));
      }
    }
  }

  const std::uint32_t riff_size = static_cast<std::uint32_t>(out.size()) - 8;
  out[4] = static_cast<std::uint8_t>(riff_size & 0xFF);
  out[5] = static_cast<std::uint8_t>((riff_size >> 8) & 0xFF);
  out[6] = static_cast<std::uint8_t>((riff_size >> 16) & 0xFF);
  out[7] = static_cast<std::uint8_t>(riff_size >> 24);

  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open for writing: " + path.string());
  f.write(reinterpret_cast<const char*>(out.data()),
          static_cast<std::streamsize>(out.size()));
  if (!f) throw IoError("failed to write WAV file: " + path.string());
}

}  // namespace kissgev
