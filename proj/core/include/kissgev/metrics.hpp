// Copyright 2026 kissgev contributors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kissgev/audio.hpp"
#include "kissgev/oracle.hpp"

namespace kissgev {

inline constexpr double kSdrCapDb = 100.0;

// Scale-invariant SDR: project the estimate onto the reference and report
// 10 log10(|s|^2 / |e|^2), clamped to [-100, 100] dB. Inputs must be mono
// and equal length; the reference must carry energy.
double si_sdr(const AudioClip& estimate, const AudioClip& reference);

// SDR allowing a least-squares FIR projection of the reference (default
// 512 taps), close to BSS-Eval's time-invariant distortion filter.
double fir_sdr(const AudioClip& estimate, const AudioClip& reference,
               int taps = 512);

enum class Method { Unprocessed, DelayAndSum, KissGev, OracleGev };

std::string method_token(Method method);       // CSV token, e.g. "kissgev"
std::string method_label(Method method);       // table label
std::optional<Method> parse_method(const std::string& token);

enum class MetricKind { SiSdr, FirSdr };

struct ScoreRecord {
  std::string scenario_id;
  std::string interference_type;
  Method method = Method::Unprocessed;
  std::string metric;
  double value_db = 0.0;
  double improvement_db = 0.0;  // over the unprocessed mixture
};

struct AggregateRow {
  Method method = Method::Unprocessed;
  std::string interference_type;
  double mean_db = 0.0;
  double mean_improvement_db = 0.0;
  int count = 0;
};

struct ScoreReport {
  std::vector<ScoreRecord> records;
  std::vector<AggregateRow> aggregates;
  std::vector<std::string> failures;  // one message per failed scenario

  std::optional<double> mean(Method method, const std::string& type) const;
};

// Everything evaluate_methods() needs for one scenario, in memory.
struct EvalItem {
  std::string id;
  std::string interference_type;
  AudioClip mixture;
  AudioClip target_image;        // reference; channel 0 scores the output
  AudioClip interference_image;  // used by the oracle method
  ArrayGeometry geometry;
  DoA doa{Eigen::Vector3d(1, 0, 0)};
};

struct EvaluateOptions {
  std::vector<Method> methods{Method::Unprocessed, Method::DelayAndSum,
                              Method::KissGev, Method::OracleGev};
  EnhanceParams params;
  MetricKind metric = MetricKind::SiSdr;
  int fir_taps = 512;
  OracleOptions oracle;
  int jobs = 1;
};

// Runs every requested method on every item and aggregates mean scores per
// (method, interference type). Failing scenarios are reported in
// `failures` while the rest of the batch completes.
ScoreReport evaluate_methods(const std::vector<EvalItem>& items,
                             const EvaluateOptions& options);

void write_scores_csv(const ScoreReport& report, const std::filesystem::path& path);

// Text table of mean scores, methods as rows and interference types as
// columns.
std::string format_summary(const ScoreReport& report);

}  // namespace kissgev
