// Copyright 2026 kissgev contributors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <future>
#include <iostream>
#include <sstream>

#include "kissgev/error.hpp"
#include "kissgev/manifest.hpp"
#include "kissgev/mask_io.hpp"

namespace kissgev::cli {
namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  return h;
}

void require_exists(const std::filesystem::path& p, const std::string& what) {
  if (p.empty()) throw InvalidArgument(what + " is required");
  if (!std::filesystem::exists(p)) {
    throw InvalidArgument(what + " not found: " + p.string());
  }
}

ArrayGeometry load_geometry_checked(const std::filesystem::path& path) {
  require_exists(path, "geometry file");
  return load_geometry(path);
}

// Mixtures to be enhanced must match the geometry channel count.
AudioClip read_input_checked(const std::filesystem::path& path,
                             const ArrayGeometry& geometry) {
  require_exists(path, "input file");
  AudioClip clip = read_wav(path);
  if (clip.channels() != geometry.num_mics()) {
    throw InvalidArgument("input has " + std::to_string(clip.channels()) +
                          " channels but the geometry defines " +
                          std::to_string(geometry.num_mics()) + " microphones");
  }
  return clip;
}

double rms(const AudioClip& clip) {
  return std::sqrt(clip.samples.squaredNorm() /
                   static_cast<double>(clip.samples.size()));
}

// Bounds every simulation draws from unless --unchecked is given.
void check_experiment_ranges(const ScenarioRanges& r) {
  const ScenarioRanges stock;
  auto fail = [](const std::string& field, const std::string& bounds) {
    throw InvalidArgument("simulate: " + field + " outside the validated range " +
                          bounds + " (use --unchecked to override)");
  };
  for (int a = 0; a < 3; ++a) {
    if (r.room_min(a) < stock.room_min(a) || r.room_max(a) > stock.room_max(a)) {
      fail("room dimensions", "[5,15] x [5,15] x [3,4] m");
    }
  }
  if (r.absorption_min < stock.absorption_min ||
      r.absorption_max > stock.absorption_max) {
    fail("absorption", "[0.2, 0.8]");
  }
  if (r.speed_min < stock.speed_min || r.speed_max > stock.speed_max) {
    fail("speed of sound", "[340, 355] m/s");
  }
}

template <typename Fn>
void parallel_for(std::size_t n, int jobs, Fn&& fn) {
  jobs = std::max(1, jobs);
  if (jobs == 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
  };
  std::vector<std::future<void>> pool;
  const std::size_t workers = std::min(static_cast<std::size_t>(jobs), n);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.push_back(std::async(std::launch::async, worker));
  }
  for (auto& f : pool) f.get();
}

}  // namespace

DoA DoaSpec::resolve() const {
  if (vector) {
    std::istringstream in(*vector);
    double x = 0, y = 0, z = 0;
    char c1 = 0, c2 = 0;
    if (!(in >> x >> c1 >> y >> c2 >> z) || c1 != ',' || c2 != ',' ||
        !(in >> std::ws).eof()) {
      throw InvalidArgument("cannot parse DoA vector \"" + *vector +
                            "\", expected \"x,y,z\"");
    }
    return DoA(Eigen::Vector3d(x, y, z));
  }
  if (azimuth_deg) {
    return DoA::from_azimuth_elevation(*azimuth_deg, elevation_deg.value_or(0.0));
  }
  throw InvalidArgument("a direction of arrival is required: give --azimuth "
                        "[--elevation] or --doa x,y,z");
}

std::vector<std::filesystem::path> list_wavs(const std::filesystem::path& dir) {
  require_exists(dir, "corpus directory");
  if (!std::filesystem::is_directory(dir)) {
    throw InvalidArgument("corpus path is not a directory: " + dir.string());
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    std::string ext = entry.path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (ext == ".wav") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  return files;
}

int cmd_simulate(const SimulateOptions& options) {
  if (options.count < 0) throw InvalidArgument("simulate: count must be >= 0");
  if (options.interference.empty()) {
    throw InvalidArgument("simulate: at least one --interference TYPE=DIR is required");
  }
  if (options.out_dir.empty()) throw InvalidArgument("simulate: --out is required");
  if (!options.unchecked) check_experiment_ranges(options.ranges);
  options.ranges.validate();

  const ArrayGeometry geometry = load_geometry_checked(options.geometry_path);
  const auto targets = list_wavs(options.targets_dir);
  if (targets.empty()) {
    throw InvalidArgument("no .wav files in target corpus: " +
                          options.targets_dir.string());
  }

  ScenarioSamplerConfig sampler;
  sampler.ranges = options.ranges;
  sampler.geometry = geometry;
  sampler.sample_rate = options.sample_rate;
  sampler.max_order = options.max_order;
  sampler.rir_length = options.rir_length;

  std::vector<MixtureScenario> scenarios;
  for (const auto& [type, dir] : options.interference) {
    const auto clips = list_wavs(dir);
    if (clips.empty()) {
      throw InvalidArgument("no .wav files in interference corpus: " + dir.string());
    }
    auto batch = sample_scenarios(targets, clips, type, sampler, options.count,
                                  options.seed ^ fnv1a(type));
    scenarios.insert(scenarios.end(), std::make_move_iterator(batch.begin()),
                     std::make_move_iterator(batch.end()));
  }

  std::filesystem::create_directories(options.out_dir);
  Manifest manifest;
  manifest.sample_rate = options.sample_rate;
  manifest.seed = options.seed;
  manifest.entries.resize(scenarios.size());

  parallel_for(scenarios.size(), options.jobs, [&](std::size_t i) {
    const MixtureScenario& s = scenarios[i];
    AudioClip target = read_wav(s.target_file);
    AudioClip interference = read_wav(s.interference_file);
    if (target.sample_rate != options.sample_rate ||
        interference.sample_rate != options.sample_rate) {
      throw InvalidArgument("corpus clip rate differs from the scenario rate (" +
                            std::to_string(options.sample_rate) + " Hz): " +
                            (target.sample_rate != options.sample_rate
                                 ? s.target_file.string()
                                 : s.interference_file.string()));
    }
    const SynthesizedMixture mix = synthesize_mixture(s, target, interference);

    ManifestEntry& entry = manifest.entries[i];
    entry.scenario = s;
    entry.mixture_wav = s.id + "_mixture.wav";
    entry.target_image_wav = s.id + "_target.wav";
    entry.interference_image_wav = s.id + "_interference.wav";
    entry.target_image_rms = rms(mix.target_image);
    entry.interference_image_rms = rms(mix.interference_image);
    write_wav(mix.mixture, options.out_dir / entry.mixture_wav);
    write_wav(mix.target_image, options.out_dir / entry.target_image_wav);
    write_wav(mix.interference_image, options.out_dir / entry.interference_image_wav);
  });

  write_manifest(manifest, options.out_dir / "manifest.json");
  std::cout << "simulate: wrote " << manifest.entries.size() << " scenarios to "
            << options.out_dir.string() << std::endl;
  return 0;
}

int cmd_enhance(const EnhanceOptions& options) {
  options.config.validate();
  if (options.method != "ds" && options.method != "kissgev" &&
      options.method != "oracle") {
    throw InvalidArgument("unknown method \"" + options.method +
                          "\"; expected ds, kissgev or oracle");
  }
  if (options.method == "oracle" &&
      (options.target_ref.empty() || options.interference_ref.empty())) {
    throw InvalidArgument("enhance: --method oracle needs --target-ref and "
                          "--interference-ref");
  }
  if (options.output.empty()) throw InvalidArgument("enhance: --out is required");

  const ArrayGeometry geometry = load_geometry_checked(options.geometry_path);
  const DoA doa = options.doa.resolve();
  const AudioClip input = read_input_checked(options.input, geometry);

  AudioClip enhanced;
  if (options.method == "ds") {
    enhanced = ds_enhance(input, geometry, doa, options.config.params.stft);
  } else if (options.method == "kissgev") {
    PipelineTrace trace;
    enhanced = kissgev_enhance(input, geometry, doa, options.config.params, &trace);
    if (!trace.ds_fallback_bins.empty()) {
      std::cerr << "enhance: " << trace.ds_fallback_bins.size()
                << " bins had an empty target mask and fell back to delay-and-sum"
                << std::endl;
    }
  } else {
    require_exists(options.target_ref, "target reference");
    require_exists(options.interference_ref, "interference reference");
    enhanced = oracle_gev_enhance(input, read_wav(options.target_ref),
                                  read_wav(options.interference_ref), geometry,
                                  doa, options.config.params);
  }

  write_wav(enhanced, options.output, options.encoding);
  std::cout << "enhance: " << options.method << " -> " << options.output.string()
            << std::endl;
  return 0;
}

int cmd_mask_dump(const MaskDumpOptions& options) {
  options.config.validate();
  const ArrayGeometry geometry = load_geometry_checked(options.geometry_path);
  const DoA doa = options.doa.resolve();
  const AudioClip input = read_input_checked(options.input, geometry);
  if (options.out_prefix.empty()) {
    throw InvalidArgument("mask-dump: --out-prefix is required");
  }

  const EnhanceParams& params = options.config.params;
  const MultichannelSpectrogram spec = stft(input, params.stft);
  const SteeringVector steering = reference_steering(
      geometry, doa, input.sample_rate, params.stft.frame_size);
  const Filterbank fb = make_filterbank(params.stft.frame_size, params.separator);
  const RatioMap ratio = power_ratio(spec, steering, fb);
  const MaskPair masks = binary_masks(ratio, mask_thresholds(ratio, params.alpha));

  const std::string prefix = options.out_prefix.string();
  write_mask_csv(masks.target, prefix + "_target.csv");
  write_mask_pgm(masks.target, prefix + "_target.pgm");
  write_mask_csv(masks.noise, prefix + "_noise.csv");
  write_mask_pgm(masks.noise, prefix + "_noise.pgm");
  std::cout << "mask-dump: wrote " << prefix << "_{target,noise}.{csv,pgm} ("
            << spec.frames() << " frames x " << spec.bins() << " bins)"
            << std::endl;
  return 0;
}

int cmd_evaluate(const EvaluateCliOptions& options) {
  options.config.validate();
  require_exists(options.manifest_path, "manifest");
  if (options.methods.empty()) {
    throw InvalidArgument("evaluate: the method list is empty");
  }

  EvaluateOptions eval;
  eval.methods.clear();
  for (const auto& token : options.methods) {
    const auto method = parse_method(token);
    if (!method) {
      throw InvalidArgument("unknown method \"" + token +
                            "\"; expected unprocessed, ds, kissgev or oracle_gev");
    }
    eval.methods.push_back(*method);
  }
  if (options.metric == "si-sdr") {
    eval.metric = MetricKind::SiSdr;
  } else if (options.metric == "fir-sdr") {
    eval.metric = MetricKind::FirSdr;
  } else {
    throw InvalidArgument("unknown metric \"" + options.metric +
                          "\"; expected si-sdr or fir-sdr");
  }
  eval.fir_taps = options.fir_taps;
  eval.params = options.config.params;
  eval.jobs = options.jobs;

  const Manifest manifest = read_manifest(options.manifest_path);
  const std::filesystem::path base = options.manifest_path.parent_path();

  std::vector<EvalItem> items;
  std::vector<std::string> load_failures;
  for (const auto& entry : manifest.entries) {
    try {
      EvalItem item;
      item.id = entry.scenario.id;
      item.interference_type = entry.scenario.interference_type;
      item.mixture = read_wav(base / entry.mixture_wav);
      item.target_image = read_wav(base / entry.target_image_wav);
      item.interference_image = read_wav(base / entry.interference_image_wav);
      item.geometry = entry.scenario.geometry();
      item.doa = entry.scenario.target_doa();
      items.push_back(std::move(item));
    } catch (const Error& e) {
      load_failures.push_back(entry.scenario.id + ": " + e.what());
    }
  }

  ScoreReport report = evaluate_methods(items, eval);
  report.failures.insert(report.failures.begin(), load_failures.begin(),
                         load_failures.end());

  if (!options.out_csv.empty()) write_scores_csv(report, options.out_csv);
  std::cout << format_summary(report);
  if (!options.out_csv.empty()) {
    std::cout << "evaluate: wrote " << report.records.size() << " rows to "
              << options.out_csv.string() << std::endl;
  }
  for (const auto& failure : report.failures) {
    std::cerr << "evaluate: scenario failed: " << failure << std::endl;
  }
  return report.failures.empty() ? 0 : 1;
}

}  // namespace kissgev::cli
