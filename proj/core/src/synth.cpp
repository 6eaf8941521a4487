// Copyright 2026 kissgev contributors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "kissgev/synth.hpp"

#include <cmath>
#include <random>

#include "kissgev/error.hpp"

namespace kissgev::synth {
namespace {

Eigen::Index sample_count(double seconds, int sample_rate) {
  if (!(seconds > 0.0)) throw InvalidArgument("duration must be positive");
  if (sample_rate <= 0) throw InvalidArgument("sample rate must be positive");
  return static_cast<Eigen::Index>(std::llround(seconds * sample_rate));
}

AudioClip make_clip(Eigen::VectorXd samples, int sample_rate) {
  AudioClip clip;
  clip.sample_rate = sample_rate;
  clip.samples = samples.transpose();
  return clip;
}

void normalize_rms(Eigen::VectorXd& x, double rms) {
  const double current = std::sqrt(x.squaredNorm() / x.size());
  if (current > 0.0) x *= rms / current;
}

}  // namespace

AudioClip white_noise(double seconds, int sample_rate, std::uint64_t seed,
                      double rms) {
  const Eigen::Index n = sample_count(seconds, sample_rate);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXd x(n);
  for (Eigen::Index i = 0; i < n; ++i) x(i) = gauss(rng);
  normalize_rms(x, rms);
  return make_clip(std::move(x), sample_rate);
}

AudioClip tone(double seconds, int sample_rate, double frequency_hz,
               double amplitude) {
  const Eigen::Index n = sample_count(seconds, sample_rate);
  Eigen::VectorXd x(n);
  const double w = 2.0 * M_PI * frequency_hz / sample_rate;
  for (Eigen::Index i = 0; i < n; ++i) x(i) = amplitude * std::sin(w * i);
  return make_clip(std::move(x), sample_rate);
}

AudioClip speech_like(double seconds, int sample_rate, std::uint64_t seed,
                      double rms) {
  const Eigen::Index n = sample_count(seconds, sample_rate);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);

  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  Eigen::Index pos = 0;
  double pitch = 110.0 + 110.0 * unit(rng);
  double phase = 0.0;
  double hp_state = 0.0;

  while (pos < n) {
    const double r = unit(rng);
    if (r < 0.55) {
      // Voiced segment: harmonic stack shaped by two wandering formant
      // resonances, with syllabic AM.
      const Eigen::Index len = static_cast<Eigen::Index>(
          (0.15 + 0.25 * unit(rng)) * sample_rate);
      pitch = std::clamp(pitch + 40.0 * (unit(rng) - 0.5), 90.0, 240.0);
      const double formant1 = 400.0 + 500.0 * unit(rng);
      const double formant2 = 1200.0 + 1400.0 * unit(rng);
      const double am_rate = 2.0 * M_PI * (3.0 + 2.0 * unit(rng)) / sample_rate;
      const double am_phase = 2.0 * M_PI * unit(rng);
      const int harmonics = std::min(40, static_cast<int>(0.45 * sample_rate / pitch));
      std::vector<double> amp(static_cast<std::size_t>(harmonics) + 1, 0.0);
      for (int k = 1; k <= harmonics; ++k) {
        const double f = k * pitch;
        const double peak1 = std::exp(-std::pow((f - formant1) / 250.0, 2));
        const double peak2 = std::exp(-std::pow((f - formant2) / 500.0, 2));
        amp[static_cast<std::size_t>(k)] =
            (0.35 + peak1 + 0.7 * peak2) / std::sqrt(static_cast<double>(k));
      }
      for (Eigen::Index i = 0; i < len && pos + i < n; ++i) {
        phase += 2.0 * M_PI * pitch / sample_rate;
        double v = 0.0;
        for (int k = 1; k <= harmonics; ++k) {
          v += amp[static_cast<std::size_t>(k)] * std::sin(k * phase);
        }
        const double envelope =
            0.55 + 0.45 * std::sin(am_rate * static_cast<double>(i) + am_phase);
        const double edge = std::min({i / (0.01 * sample_rate),
                                      (len - 1 - i) / (0.01 * sample_rate), 1.0});
        x(pos + i) = 0.12 * envelope * std::max(edge, 0.0) * v;
      }
      pos += len;
    } else if (r < 0.82) {
      // Fricative burst: first-difference (highpassed) noise.
      const Eigen::Index len = static_cast<Eigen::Index>(
          (0.08 + 0.12 * unit(rng)) * sample_rate);
      for (Eigen::Index i = 0; i < len && pos + i < n; ++i) {
        const double w = gauss(rng);
        const double hp = w - hp_state;
        hp_state = w;
        const double edge = std::min({i / (0.005 * sample_rate),
                                      (len - 1 - i) / (0.005 * sample_rate), 1.0});
        x(pos + i) = 0.2 * std::max(edge, 0.0) * hp;
      }
      pos += len;
    } else {
      pos += static_cast<Eigen::Index>((0.1 + 0.2 * unit(rng)) * sample_rate);
    }
  }

  normalize_rms(x, rms);
  return make_clip(std::move(x), sample_rate);
}

AudioClip babble(double seconds, int sample_rate, std::uint64_t seed,
                 double rms, int voices) {
  if (voices < 1) throw InvalidArgument("babble needs at least one voice");
  Eigen::VectorXd x;
  for (int v = 0; v < voices; ++v) {
    const AudioClip voice =
        speech_like(seconds, sample_rate, seed * 0x9E3779B97F4A7C15ull + v, 1.0);
    if (v == 0) {
      x = voice.samples.row(0).transpose();
    } else {
      x += voice.samples.row(0).transpose();
    }
  }
  normalize_rms(x, rms);
  return make_clip(std::move(x), sample_rate);
}

AudioClip ambient_noise(double seconds, int sample_rate, std::uint64_t seed,
                        double rms) {
  const Eigen::Index n = sample_count(seconds, sample_rate);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  // Gently low-tilted broadband bed with a slow level wobble. A first
  // order highpass keeps the sub-bass region (where a small array cannot
  // discriminate directions anyway) from dominating the energy.
  const double drift_rate = 2.0 * M_PI * (0.2 + 0.3 * unit(rng)) / sample_rate;
  const double drift_phase = 2.0 * M_PI * unit(rng);
  double lp = 0.0, hp = 0.0, prev = 0.0;
  Eigen::VectorXd x(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double w = gauss(rng);
    lp = 0.85 * lp + 0.15 * w;
    const double bed = 2.0 * lp + 0.4 * w;
    hp = 0.97 * hp + bed - prev;  // ~80 Hz corner
    prev = bed;
    const double wobble =
        1.0 + 0.3 * std::sin(drift_rate * static_cast<double>(i) + drift_phase);
    x(i) = wobble * hp;
  }
  normalize_rms(x, rms);
  return make_clip(std::move(x), sample_rate);
}

AudioClip music_like(double seconds, int sample_rate, std::uint64_t seed,
                     double rms) {
  const Eigen::Index n = sample_count(seconds, sample_rate);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> semitone(0, 24);

  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  std::normal_distribution<double> gauss(0.0, 1.0);

  // Sustained broadband pad under the notes, like the cymbal/room bed of a
  // recorded mix; keeps every bin persistently excited.
  {
    double lp = 0.0, prev = 0.0, hp = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double w = gauss(rng);
      lp = 0.7 * lp + 0.3 * w;
      const double bed = lp + 0.35 * w;
      hp = 0.97 * hp + bed - prev;
      prev = bed;
      x(i) = 0.45 * hp;
    }
  }

  Eigen::Index pos = 0;
  while (pos < n) {
    const Eigen::Index len = static_cast<Eigen::Index>(
        (0.6 + 0.6 * unit(rng)) * sample_rate);
    const int voices = 4 + (semitone(rng) % 3);
    for (int v = 0; v < voices; ++v) {
      const double f0 = 220.0 * std::pow(2.0, semitone(rng) / 12.0);
      const double vibrato = 2.0 * M_PI * (4.0 + 2.0 * unit(rng)) / sample_rate;
      const double vib_depth = 0.003 + 0.004 * unit(rng);
      double phase = 2.0 * M_PI * unit(rng);
      for (Eigen::Index i = 0; i < len && pos + i < n; ++i) {
        const double f =
            f0 * (1.0 + vib_depth * std::sin(vibrato * static_cast<double>(i)));
        phase += 2.0 * M_PI * f / sample_rate;
        const double attack = std::min(i / (0.03 * sample_rate), 1.0);
        const double release =
            std::min((len - 1 - i) / (0.05 * sample_rate), 1.0);
        const double env = attack * std::max(release, 0.0);
        double tone_sum = 0.0;
        for (int k = 1; k <= 12; ++k) {
          if (k * f < 0.45 * sample_rate) {
            tone_sum += std::sin(k * phase) / std::sqrt(static_cast<double>(k));
          }
        }
        x(pos + i) += env * tone_sum / voices;
      }
    }
    // Percussive onset: a short broadband click-and-decay transient.
    const Eigen::Index hit = std::min<Eigen::Index>(
        static_cast<Eigen::Index>(0.05 * sample_rate), n - pos);
    for (Eigen::Index i = 0; i < hit; ++i) {
      const double decay = std::exp(-static_cast<double>(i) / (0.008 * sample_rate));
      x(pos + i) += 0.8 * decay * gauss(rng);
    }
    pos += len;
  }
  normalize_rms(x, rms);
  return make_clip(std::move(x), sample_rate);
}

}  // namespace kissgev::synth
