// Copyright 2026 kissgev contributors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <cstdint>

#include "kissgev/audio.hpp"

namespace kissgev::synth {

// Deterministic mono test signals for simulations and demos. All
// generators are pure functions of (duration, rate, seed).

// Voiced harmonic bursts with a wandering pitch, fricative noise bursts
// and pauses; energy split across the low and high bands like speech.
AudioClip speech_like(double seconds, int sample_rate, std::uint64_t seed,
                      double rms = 0.1);

// Stationary low-tilted noise bed with a slow level drift.
AudioClip ambient_noise(double seconds, int sample_rate, std::uint64_t seed,
                        double rms = 0.1);

// Slowly changing chord tones with harmonics, vibrato, soft attacks and
// percussive onsets.
AudioClip music_like(double seconds, int sample_rate, std::uint64_t seed,
                     double rms = 0.1);

// Several overlapping speech-like voices; rarely silent, useful as
// competing-speech interference.
AudioClip babble(double seconds, int sample_rate, std::uint64_t seed,
                 double rms = 0.1, int voices = 3);

AudioClip white_noise(double seconds, int sample_rate, std::uint64_t seed,
                      double rms = 0.1);

AudioClip tone(double seconds, int sample_rate, double frequency_hz,
               double amplitude = 0.5);

}  // namespace kissgev::synth
