// Copyright 2026 kissgev contributors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

// Writes small synthetic WAV corpora (speech-like targets plus ambient,
// music and speech interference) so the simulate/evaluate pipeline can be
// exercised without external datasets.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "kissgev/error.hpp"
#include "kissgev/synth.hpp"
#include "kissgev/wav_io.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Generate a synthetic demo corpus for the kissgev tools"};
  std::string out_dir = "corpus";
  int count = 20;
  double seconds = 3.0;
  int sample_rate = 16000;
  std::uint64_t seed = 1;
  double target_rms = 0.1;
  double interference_rms = 0.2;
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--count", count, "clips per corpus");
  app.add_option("--seconds", seconds, "clip duration");
  app.add_option("--sample-rate", sample_rate, "sample rate in Hz");
  app.add_option("--seed", seed, "random seed");
  app.add_option("--target-rms", target_rms, "RMS level of target clips");
  app.add_option("--interference-rms", interference_rms,
                 "RMS level of interference clips");
  CLI11_PARSE(app, argc, argv);

  namespace fs = std::filesystem;
  namespace synth = kissgev::synth;
  try {
    const fs::path base(out_dir);
    const auto make_babble = [](double sec, int rate, std::uint64_t sd,
                                double level) {
      return synth::babble(sec, rate, sd, level);
    };
    const struct {
      const char* name;
      kissgev::AudioClip (*make)(double, int, std::uint64_t, double);
      std::uint64_t offset;
      double rms;
    } corpora[] = {
        {"targets", synth::speech_like, 0x1000, target_rms},
        {"ambient", synth::ambient_noise, 0x2000, interference_rms},
        {"music", synth::music_like, 0x3000, interference_rms},
        {"speech", make_babble, 0x4000, interference_rms},
    };
    for (const auto& corpus : corpora) {
      fs::create_directories(base / corpus.name);
      for (int i = 0; i < count; ++i) {
        char name[32];
        std::snprintf(name, sizeof(name), "%s_%03d.wav", corpus.name, i);
        kissgev::write_wav(
            corpus.make(seconds, sample_rate, seed + corpus.offset + i, corpus.rms),
            base / corpus.name / name);
      }
    }
    std::cout << "wrote 4 corpora of " << count << " clips each under "
              << base.string() << std::endl;
  } catch (const kissgev::Error& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 1;
  }
  return 0;
}
