// Copyright 2026 kissgev contributors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cli.hpp"
#include "kissgev/error.hpp"

namespace {

using kissgev::RunConfig;

// Per-command parameter flags; values present on the command line override
// the config file, which overrides the built-in defaults.
struct ParamFlags {
  std::optional<int> frame_size;
  std::optional<int> hop;
  std::optional<int> gamma;
  std::optional<double> alpha;
  std::optional<double> loading;

  void attach(CLI::App* cmd) {
    cmd->add_option("-N,--frame-size", frame_size, "STFT frame size in samples");
    cmd->add_option("--hop", hop, "STFT hop in samples");
    cmd->add_option("--gamma", gamma, "filterbank separator bin");
    cmd->add_option("--alpha", alpha, "percentile width in percent");
    cmd->add_option("--loading", loading, "relative diagonal loading");
  }

  void apply(RunConfig& config) const {
    if (frame_size) config.params.stft.frame_size = *frame_size;
    if (hop) config.params.stft.hop = *hop;
    if (gamma) config.params.separator = *gamma;
    if (alpha) config.params.alpha = *alpha;
    if (loading) config.params.loading.relative = *loading;
  }
};

struct DoaFlags {
  std::optional<double> azimuth;
  std::optional<double> elevation;
  std::optional<std::string> vector;

  void attach(CLI::App* cmd) {
    cmd->add_option("--azimuth", azimuth, "DoA azimuth in degrees (0 = +x)");
    cmd->add_option("--elevation", elevation, "DoA elevation in degrees");
    cmd->add_option("--doa", vector, "DoA as a unit vector \"x,y,z\"");
  }

  kissgev::cli::DoaSpec spec() const { return {azimuth, elevation, vector}; }
};

RunConfig resolve_config(const std::string& config_path) {
  RunConfig config;
  if (!config_path.empty()) {
    if (!std::filesystem::exists(config_path)) {
      throw kissgev::InvalidArgument("config file not found: " + config_path);
    }
    config = kissgev::load_run_config(config_path, config);
  }
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"KISS-GEV multichannel speech enhancement toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path, "JSON config file")
      ->envname("KISSGEV_CONFIG");

  // --- simulate ------------------------------------------------------
  auto* sim = app.add_subcommand(
      "simulate", "Render random room scenarios from WAV corpora");
  kissgev::cli::SimulateOptions sim_opts;
  std::vector<std::string> interference_specs;
  sim->add_option("--targets", sim_opts.targets_dir, "directory of target WAVs")
      ->required();
  sim->add_option("--interference", interference_specs,
                  "interference corpus as TYPE=DIR (repeatable)")
      ->required();
  sim->add_option("--out", sim_opts.out_dir, "output directory")->required();
  sim->add_option("--geometry", sim_opts.geometry_path, "array geometry JSON");
  sim->add_option("--count", sim_opts.count, "scenarios per interference type");
  sim->add_option("--seed", sim_opts.seed, "master random seed");
  sim->add_option("--sample-rate", sim_opts.sample_rate, "corpus sample rate (Hz)");
  sim->add_option("--rir-length", sim_opts.rir_length, "RIR length in samples");
  sim->add_option("--max-order", sim_opts.max_order, "maximum reflection order");
  sim->add_option("--absorption-min", sim_opts.ranges.absorption_min, "");
  sim->add_option("--absorption-max", sim_opts.ranges.absorption_max, "");
  sim->add_option("--speed-min", sim_opts.ranges.speed_min, "");
  sim->add_option("--speed-max", sim_opts.ranges.speed_max, "");
  sim->add_option("--source-dist-min", sim_opts.ranges.source_distance_min, "");
  sim->add_option("--source-dist-max", sim_opts.ranges.source_distance_max, "");
  sim->add_option("--min-separation-deg", sim_opts.ranges.min_separation_deg,
                  "minimum target/interference angular separation");
  sim->add_flag("--unchecked", sim_opts.unchecked,
                "allow parameters outside the validated experiment ranges");
  sim->add_option("--jobs", sim_opts.jobs, "parallel scenario synthesis");

  // --- enhance -------------------------------------------------------
  auto* enh = app.add_subcommand("enhance", "Enhance a multichannel WAV");
  kissgev::cli::EnhanceOptions enh_opts;
  DoaFlags enh_doa;
  ParamFlags enh_params;
  std::string enh_encoding = "float32";
  enh->add_option("input", enh_opts.input, "multichannel input WAV")->required();
  enh->add_option("--out", enh_opts.output, "output WAV path")->required();
  enh->add_option("--geometry", enh_opts.geometry_path, "array geometry JSON");
  enh->add_option("--method", enh_opts.method, "ds | kissgev | oracle");
  enh->add_option("--target-ref", enh_opts.target_ref,
                  "clean target image WAV (oracle)");
  enh->add_option("--interference-ref", enh_opts.interference_ref,
                  "clean interference image WAV (oracle)");
  enh->add_option("--encoding", enh_encoding, "output encoding: float32 | pcm16");
  enh_doa.attach(enh);
  enh_params.attach(enh);

  // --- mask-dump -----------------------------------------------------
  auto* dump = app.add_subcommand(
      "mask-dump", "Write the binary target/noise masks as CSV and PGM");
  kissgev::cli::MaskDumpOptions dump_opts;
  DoaFlags dump_doa;
  ParamFlags dump_params;
  dump->add_option("input", dump_opts.input, "multichannel input WAV")->required();
  dump->add_option("--out-prefix", dump_opts.out_prefix, "output path prefix")
      ->required();
  dump->add_option("--geometry", dump_opts.geometry_path, "array geometry JSON");
  dump_doa.attach(dump);
  dump_params.attach(dump);

  // --- evaluate ------------------------------------------------------
  auto* eval = app.add_subcommand(
      "evaluate", "Score enhancement methods over a simulated manifest");
  kissgev::cli::EvaluateCliOptions eval_opts;
  ParamFlags eval_params;
  eval->add_option("--manifest", eval_opts.manifest_path, "manifest.json path")
      ->required();
  eval->add_option("--methods", eval_opts.methods,
                   "methods to score (unprocessed ds kissgev oracle_gev)");
  eval->add_option("--out-csv", eval_opts.out_csv, "per-scenario score CSV");
  eval->add_option("--metric", eval_opts.metric, "si-sdr | fir-sdr");
  eval->add_option("--fir-taps", eval_opts.fir_taps, "FIR length for fir-sdr");
  eval->add_option("--jobs", eval_opts.jobs, "parallel scenario evaluation");
  eval_params.attach(eval);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    RunConfig config = resolve_config(config_path);

    if (sim->parsed()) {
      for (const auto& spec : interference_specs) {
        const auto eq = spec.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 >= spec.size()) {
          throw kissgev::InvalidArgument(
              "--interference expects TYPE=DIR, got \"" + spec + "\"");
        }
        sim_opts.interference.emplace_back(spec.substr(0, eq), spec.substr(eq + 1));
      }
      if (sim_opts.geometry_path.empty()) sim_opts.geometry_path = config.geometry_path;
      if (sim->count("--seed") == 0) sim_opts.seed = config.seed;
      return kissgev::cli::cmd_simulate(sim_opts);
    }
    if (enh->parsed()) {
      enh_params.apply(config);
      if (enh_opts.geometry_path.empty()) enh_opts.geometry_path = config.geometry_path;
      enh_opts.config = config;
      enh_opts.doa = enh_doa.spec();
      if (enh_encoding == "float32") {
        enh_opts.encoding = kissgev::WavEncoding::Float32;
      } else if (enh_encoding == "pcm16") {
        enh_opts.encoding = kissgev::WavEncoding::Pcm16;
      } else {
        throw kissgev::InvalidArgument("unknown encoding \"" + enh_encoding + "\"");
      }
      return kissgev::cli::cmd_enhance(enh_opts);
    }
    if (dump->parsed()) {
      dump_params.apply(config);
      if (dump_opts.geometry_path.empty()) dump_opts.geometry_path = config.geometry_path;
      dump_opts.config = config;
      dump_opts.doa = dump_doa.spec();
      return kissgev::cli::cmd_mask_dump(dump_opts);
    }
    if (eval->parsed()) {
      eval_params.apply(config);
      eval_opts.config = config;
      return kissgev::cli::cmd_evaluate(eval_opts);
    }
  } catch (const kissgev::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 2;
  } catch (const kissgev::FormatError& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 2;
  } catch (const kissgev::Error& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 1;
  }
  return 0;
}
