// Copyright 2026 kissgev contributors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "kissgev/metrics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <future>
#include <iomanip>
#include <map>
#include <sstream>

#include "convolve.hpp"
#include "kissgev/error.hpp"

namespace kissgev {
namespace {

double clamp_db(double ratio) {
  if (ratio <= 0.0) return -kSdrCapDb;
  const double db = 10.0 * std::log10(ratio);
  return std::clamp(db, -kSdrCapDb, kSdrCapDb);
}

void check_pair(const AudioClip& estimate, const AudioClip& reference) {
  estimate.validate();
  reference.validate();
  if (estimate.channels() != 1 || reference.channels() != 1) {
    throw InvalidArgument("SDR metrics take mono clips");
  }
  if (estimate.length() != reference.length()) {
    throw InvalidArgument("estimate and reference lengths differ (" +
                          std::to_string(estimate.length()) + " vs " +
                          std::to_string(reference.length()) + ")");
  }
}

AudioClip trim_to(const AudioClip& clip, Eigen::Index length) {
  AudioClip out;
  out.sample_rate = clip.sample_rate;
  out.samples = clip.samples.leftCols(length);
  return out;
}

}  // namespace

double si_sdr(const AudioClip& estimate, const AudioClip& reference) {
  check_pair(estimate, reference);
  const Eigen::VectorXd e = estimate.samples.row(0).transpose();
  const Eigen::VectorXd r = reference.samples.row(0).transpose();
  const double ref_energy = r.squaredNorm();
  if (ref_energy <= 0.0) throw InvalidArgument("reference signal is silent");

  const double scale = e.dot(r) / ref_energy;
  const Eigen::VectorXd projection = scale * r;
  const double residual = (e - projection).squaredNorm();
  if (residual <= 0.0) return kSdrCapDb;
  return clamp_db(projection.squaredNorm() / residual);
}

double fir_sdr(const AudioClip& estimate, const AudioClip& reference, int taps) {
  check_pair(estimate, reference);
  if (taps < 1) throw InvalidArgument("fir_sdr needs at least one tap");
  const Eigen::VectorXd e = estimate.samples.row(0).transpose();
  const Eigen::VectorXd r = reference.samples.row(0).transpose();
  if (r.squaredNorm() <= 0.0) throw InvalidArgument("reference signal is silent");
  const Eigen::Index n = e.size();
  taps = static_cast<int>(std::min<Eigen::Index>(taps, n));

  // Toeplitz normal equations from the reference autocorrelation.
  Eigen::VectorXd auto_corr(taps);
  for (int k = 0; k < taps; ++k) {
    auto_corr(k) = r.head(n - k).dot(r.tail(n - k));
  }
  Eigen::MatrixXd gram(taps, taps);
  for (int i = 0; i < taps; ++i) {
    for (int j = 0; j < taps; ++j) gram(i, j) = auto_corr(std::abs(i - j));
  }
  gram.diagonal().array() += 1e-10 * auto_corr(0) + 1e-300;

  Eigen::VectorXd cross(taps);
  for (int k = 0; k < taps; ++k) {
    cross(k) = e.tail(n - k).dot(r.head(n - k));
  }

  const Eigen::VectorXd h = gram.ldlt().solve(cross);
  const Eigen::VectorXd fitted = detail::fft_convolve(r, h).head(n);
  const double residual = (e - fitted).squaredNorm();
  if (residual <= 0.0) return kSdrCapDb;
  return clamp_db(fitted.squaredNorm() / residual);
}

std::string method_token(Method method) {
  switch (method) {
    case Method::Unprocessed: return "unprocessed";
    case Method::DelayAndSum: return "ds";
    case Method::KissGev: return "kissgev";
    case Method::OracleGev: return "oracle_gev";
  }
  return "unknown";
}

std::string method_label(Method method) {
  switch (method) {
    case Method::Unprocessed: return "Unprocessed";
    case Method::DelayAndSum: return "Delay-and-sum";
    case Method::KissGev: return "KISS-GEV";
    case Method::OracleGev: return "GEV with oracle mask";
  }
  return "unknown";
}

std::optional<Method> parse_method(const std::string& token) {
  if (token == "unprocessed") return Method::Unprocessed;
  if (token == "ds") return Method::DelayAndSum;
  if (token == "kissgev") return Method::KissGev;
  if (token == "oracle" || token == "oracle_gev") return Method::OracleGev;
  return std::nullopt;
}

std::optional<double> ScoreReport::mean(Method method, const std::string& type) const {
  for (const auto& row : aggregates) {
    if (row.method == method && row.interference_type == type) return row.mean_db;
  }
  return std::nullopt;
}

ScoreReport evaluate_methods(const std::vector<EvalItem>& items,
                             const EvaluateOptions& options) {
  if (options.methods.empty()) {
    throw InvalidArgument("evaluate needs at least one method");
  }
  options.params.validate();
  const std::string metric_name =
      options.metric == MetricKind::SiSdr ? "si_sdr" : "fir_sdr";

  auto score = [&options](const AudioClip& est, const AudioClip& ref) {
    const Eigen::Index common = std::min(est.length(), ref.length());
    const AudioClip e = trim_to(est, common);
    const AudioClip r = trim_to(ref, common);
    return options.metric == MetricKind::SiSdr ? si_sdr(e, r)
                                               : fir_sdr(e, r, options.fir_taps);
  };

  struct ItemResult {
    std::vector<ScoreRecord> records;
    std::string failure;
  };

  auto run_item = [&](const EvalItem& item) {
    ItemResult result;
    try {
      item.mixture.validate();
      item.target_image.validate();
      const AudioClip reference = item.target_image.channel(0);
      const AudioClip unprocessed = item.mixture.channel(0);
      const double unprocessed_db = score(unprocessed, reference);

      for (Method method : options.methods) {
        AudioClip estimate;
        switch (method) {
          case Method::Unprocessed:
            estimate = unprocessed;
            break;
          case Method::DelayAndSum:
            estimate = ds_enhance(item.mixture, item.geometry, item.doa,
                                  options.params.stft);
            break;
          case Method::KissGev:
            estimate = kissgev_enhance(item.mixture, item.geometry, item.doa,
                                       options.params);
            break;
          case Method::OracleGev:
            item.interference_image.validate();
            estimate = oracle_gev_enhance(item.mixture, item.target_image,
                                          item.interference_image, item.geometry,
                                          item.doa, options.params, options.oracle);
            break;
        }
        ScoreRecord rec;
        rec.scenario_id = item.id;
        rec.interference_type = item.interference_type;
        rec.method = method;
        rec.metric = metric_name;
        rec.value_db = score(estimate, reference);
        rec.improvement_db = rec.value_db - unprocessed_db;
        result.records.push_back(std::move(rec));
      }
    } catch (const Error& e) {
      result.failure = item.id + ": " + e.what();
    }
    return result;
  };

  std::vector<ItemResult> results(items.size());
  const int jobs = std::max(1, options.jobs);
  if (jobs == 1 || items.size() <= 1) {
    for (std::size_t i = 0; i < items.size(); ++i) results[i] = run_item(items[i]);
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
      for (std::size_t i = next.fetch_add(1); i < items.size();
           i = next.fetch_add(1)) {
        results[i] = run_item(items[i]);
      }
    };
    std::vector<std::future<void>> pool;
    for (int w = 0; w < jobs; ++w) {
      pool.push_back(std::async(std::launch::async, worker));
    }
    for (auto& f : pool) f.get();
  }

  ScoreReport report;
  for (auto& r : results) {
    if (!r.failure.empty()) report.failures.push_back(std::move(r.failure));
    for (auto& rec : r.records) report.records.push_back(std::move(rec));
  }

  std::map<std::pair<int, std::string>, AggregateRow> agg;
  for (const auto& rec : report.records) {
    auto& row = agg[{static_cast<int>(rec.method), rec.interference_type}];
    row.method = rec.method;
    row.interference_type = rec.interference_type;
    row.mean_db += rec.value_db;
    row.mean_improvement_db += rec.improvement_db;
    row.count += 1;
  }
  for (auto& [key, row] : agg) {
    row.mean_db /= row.count;
    row.mean_improvement_db /= row.count;
    report.aggregates.push_back(row);
  }
  return report;
}

void write_scores_csv(const ScoreReport& report, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out << "scenario_id,interference_type,method,metric,value_db,improvement_db\n";
  char buf[64];
  for (const auto& rec : report.records) {
    out << rec.scenario_id << ',' << rec.interference_type << ','
        << method_token(rec.method) << ',' << rec.metric << ',';
    std::snprintf(buf, sizeof(buf), "%.6f,%.6f", rec.value_db, rec.improvement_db);
    out << buf << '\n';
  }
  if (!out) throw IoError("failed writing score CSV: " + path.string());
}

std::string format_summary(const ScoreReport& report) {
  std::vector<std::string> types;
  std::vector<Method> methods;
  for (const auto& row : report.aggregates) {
    if (std::find(types.begin(), types.end(), row.interference_type) == types.end()) {
      types.push_back(row.interference_type);
    }
    if (std::find(methods.begin(), methods.end(), row.method) == methods.end()) {
      methods.push_back(row.method);
    }
  }
  std::sort(types.begin(), types.end());
  std::sort(methods.begin(), methods.end(), [](Method a, Method b) {
    return static_cast<int>(a) < static_cast<int>(b);
  });

  std::ostringstream out;
  out << "Mean SDR (dB) per interference type\n";
  out << std::left << std::setw(22) << "Method";
  for (const auto& t : types) out << " | " << std::setw(9) << t;
  out << '\n';
  out << std::string(22, '-');
  for (std::size_t i = 0; i < types.size(); ++i) out << "-+-" << std::string(9, '-');
  out << '\n';
  char buf[32];
  for (Method m : methods) {
    out << std::left << std::setw(22) << method_label(m);
    for (const auto& t : types) {
      const auto value = report.mean(m, t);
      if (value) {
        std::snprintf(buf, sizeof(buf), "%9.2f", *value);
        out << " | " << buf;
      } else {
        out << " | " << std::setw(9) << "-";
      }
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace kissgev
