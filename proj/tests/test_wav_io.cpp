// Copyright 2026 kissgev contributors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <fstream>
#include <random>
#include <vector>

#include "kissgev/error.hpp"
#include "kissgev/wav_io.hpp"
#include "support/test_support.hpp"

using namespace kissgev;
using kissgev::testing::TempDir;

namespace {

void push_u16(std::vector<std::uint8_t>& v, std::uint16_t x) {
  v.push_back(x & 0xFF);
  v.push_back(x >> 8);
}
void push_u32(std::vector<std::uint8_t>& v, std::uint32_t x) {
  for (int i = 0; i < 4; ++i) v.push_back((x >> (8 * i)) & 0xFF);
}
void push_tag(std::vector<std::uint8_t>& v, const char* t) {
  v.insert(v.end(), t, t + 4);
}

// Minimal hand-rolled WAV with an arbitrary format code and bit depth.
std::vector<std::uint8_t> raw_wav(std::uint16_t format, std::uint16_t bits,
                                  std::uint16_t channels,
                                  const std::vector<std::uint8_t>& payload) {
  std::vector<std::uint8_t> v;
  push_tag(v, "RIFF");
  push_u32(v, 0);
  push_tag(v, "WAVE");
  push_tag(v, "fmt ");
  push_u32(v, 16);
  push_u16(v, format);
  push_u16(v, channels);
  push_u32(v, 16000);
  push_u32(v, 16000u * channels * bits / 8);
  push_u16(v, channels * bits / 8);
  push_u16(v, bits);
  push_tag(v, "data");
  push_u32(v, static_cast<std::uint32_t>(payload.size()));
  v.insert(v.end(), payload.begin(), payload.end());
  const std::uint32_t riff = static_cast<std::uint32_t>(v.size()) - 8;
  for (int i = 0; i < 4; ++i) v[4 + i] = (riff >> (8 * i)) & 0xFF;
  return v;
}

void dump(const std::filesystem::path& p, const std::vector<std::uint8_t>& v) {
  std::ofstream out(p, std::ios::binary);
  out.write(reinterpret_cast<const char*>(v.data()),
            static_cast<std::streamsize>(v.size()));
}

}  // namespace

TEST_CASE("pcm16 full scale normalizes to 32767/32768") {
  TempDir tmp;
  std::vector<std::uint8_t> payload;
  push_u16(payload, 32767);               // ch 1
  push_u16(payload, 0x8000);              // ch 2: -32768
  dump(tmp / "x.wav", raw_wav(1, 16, 2, payload));
  const AudioClip clip = read_wav(tmp / "x.wav");
  CHECK(clip.channels() == 2);
  CHECK(clip.sample_rate == 16000);
  CHECK(clip.samples(0, 0) == doctest::Approx(32767.0 / 32768.0).epsilon(1e-12));
  CHECK(clip.samples(1, 0) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("ieee float sample is read exactly") {
  TempDir tmp;
  std::vector<std::uint8_t> payload;
  const float f = 0.5f;
  std::uint32_t bits;
  std::memcpy(&bits, &f, 4);
  push_u32(payload, bits);
  dump(tmp / "f.wav", raw_wav(3, 32, 1, payload));
  const AudioClip clip = read_wav(tmp / "f.wav");
  CHECK(clip.samples(0, 0) == 0.5);
}

TEST_CASE("pcm32 normalizes by 2^31") {
  TempDir tmp;
  std::vector<std::uint8_t> payload;
  push_u32(payload, 1u << 30);
  dump(tmp / "p32.wav", raw_wav(1, 32, 1, payload));
  CHECK(read_wav(tmp / "p32.wav").samples(0, 0) == 0.5);
}

TEST_CASE("float32 round trip is the identity on float-valued clips") {
  TempDir tmp;
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<float> uni(-1.0f, 1.0f);
  for (int trial = 0; trial < 5; ++trial) {
    AudioClip clip;
    clip.sample_rate = 8000 + 4000 * trial;
    clip.samples.resize(1 + trial % 3, 211);
    for (Eigen::Index d = 0; d < clip.samples.rows(); ++d) {
      for (Eigen::Index t = 0; t < clip.samples.cols(); ++t) {
        clip.samples(d, t) = static_cast<double>(uni(rng));
      }
    }
    write_wav(clip, tmp / "rt.wav", WavEncoding::Float32);
    const AudioClip back = read_wav(tmp / "rt.wav");
    CHECK(back.sample_rate == clip.sample_rate);
    CHECK(back.channels() == clip.channels());
    CHECK((back.samples - clip.samples).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("pcm16 clamps out-of-range samples") {
  TempDir tmp;
  AudioClip clip;
  clip.sample_rate = 16000;
  clip.samples.resize(1, 2);
  clip.samples << 2.0, -3.0;
  write_wav(clip, tmp / "c.wav", WavEncoding::Pcm16);
  const AudioClip back = read_wav(tmp / "c.wav");
  CHECK(back.samples(0, 0) == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(back.samples(0, 1) == -1.0);
}

TEST_CASE("pcm16 round trip error is at most 2^-15 per sample") {
  TempDir tmp;
  const AudioClip clip = kissgev::testing::random_clip(2, 512, 16000, 7, 0.999);
  write_wav(clip, tmp / "q.wav", WavEncoding::Pcm16);
  const AudioClip back = read_wav(tmp / "q.wav");
  const double max_err = (back.samples - clip.samples).cwiseAbs().maxCoeff();
  CHECK(max_err <= std::pow(2.0, -15.0));
}

TEST_CASE("unsupported encodings are named") {
  TempDir tmp;
  dump(tmp / "mulaw.wav", raw_wav(7, 8, 1, {0x00, 0x00}));
  CHECK_THROWS_WITH_AS(read_wav(tmp / "mulaw.wav"),
                       doctest::Contains("mu-law"), FormatError);
  dump(tmp / "pcm8.wav", raw_wav(1, 8, 1, {0x00, 0x00}));
  CHECK_THROWS_WITH_AS(read_wav(tmp / "pcm8.wav"),
                       doctest::Contains("8 bits"), FormatError);
}

TEST_CASE("truncated and malformed files raise I/O and format errors") {
  TempDir tmp;
  std::vector<std::uint8_t> payload;
  for (int i = 0; i < 8; ++i) push_u16(payload, 1000);
  auto good = raw_wav(1, 16, 1, payload);
  good.resize(good.size() - 6);  // cut into the data chunk
  dump(tmp / "trunc.wav", good);
  CHECK_THROWS_AS(read_wav(tmp / "trunc.wav"), IoError);

  dump(tmp / "norff.wav", {'N', 'O', 'P', 'E', 0, 0, 0, 0});
  CHECK_THROWS_AS(read_wav(tmp / "norff.wav"), FormatError);

  CHECK_THROWS_AS(read_wav(tmp / "missing.wav"), IoError);
}

TEST_CASE("extra chunks before data are skipped") {
  TempDir tmp;
  std::vector<std::uint8_t> v;
  push_tag(v, "RIFF");
  push_u32(v, 0);
  push_tag(v, "WAVE");
  push_tag(v, "fmt ");
  push_u32(v, 16);
  push_u16(v, 1);
  push_u16(v, 1);
  push_u32(v, 44100);
  push_u32(v, 88200);
  push_u16(v, 2);
  push_u16(v, 16);
  push_tag(v, "LIST");
  push_u32(v, 5);
  v.insert(v.end(), {'h', 'e', 'l', 'l', 'o', 0});  // odd size + pad byte
  push_tag(v, "data");
  push_u32(v, 2);
  push_u16(v, 0x4000);
  const std::uint32_t riff = static_cast<std::uint32_t>(v.size()) - 8;
  for (int i = 0; i < 4; ++i) v[4 + i] = (riff >> (8 * i)) & 0xFF;
  dump(tmp / "list.wav", v);
  const AudioClip clip = read_wav(tmp / "list.wav");
  CHECK(clip.sample_rate == 44100);
  CHECK(clip.samples(0, 0) == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("clip validation rejects bad shapes and values") {
  AudioClip clip;
  CHECK_THROWS_AS(clip.validate(), InvalidArgument);
  clip.samples.resize(1, 4);
  clip.samples.setZero();
  clip.sample_rate = 0;
  CHECK_THROWS_AS(clip.validate(), InvalidArgument);
  clip.sample_rate = 16000;
  CHECK_NOTHROW(clip.validate());
  clip.samples(0, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(clip.validate(), NumericError);
}

TEST_CASE("channel extraction keeps rate and row") {
  AudioClip clip = kissgev::testing::random_clip(3, 10, 48000, 5);
  const AudioClip one = clip.channel(2);
  CHECK(one.channels() == 1);
  CHECK(one.sample_rate == 48000);
  CHECK((one.samples.row(0) - clip.samples.row(2)).cwiseAbs().maxCoeff() == 0.0);
  CHECK_THROWS_AS(clip.channel(3), InvalidArgument);
}
