// Copyright 2026 kissgev contributors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "kissgev/config.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "kissgev/error.hpp"

namespace kissgev {
namespace {

using json = nlohmann::json;

double number_field(const json& j, const std::string& field) {
  if (!j.is_number()) {
    throw InvalidArgument("config field \"" + field + "\" must be a number");
  }
  return j.get<double>();
}

int int_field(const json& j, const std::string& field) {
  if (!j.is_number_integer()) {
    throw InvalidArgument("config field \"" + field + "\" must be an integer");
  }
  return j.get<int>();
}

}  // namespace

RunConfig parse_run_config(const std::string& json_text, RunConfig base) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw FormatError(std::string("config JSON: ") + e.what());
  }
  if (!j.is_object()) throw FormatError("config JSON must be an object");

  if (j.contains("stft")) {
    const json& s = j.at("stft");
    if (s.contains("frame_size")) {
      base.params.stft.frame_size = int_field(s.at("frame_size"), "stft.frame_size");
    }
    if (s.contains("hop")) base.params.stft.hop = int_field(s.at("hop"), "stft.hop");
  }
  if (j.contains("maskgen")) {
    const json& m = j.at("maskgen");
    if (m.contains("gamma")) {
      base.params.separator = int_field(m.at("gamma"), "maskgen.gamma");
    }
    if (m.contains("alpha")) {
      base.params.alpha = number_field(m.at("alpha"), "maskgen.alpha");
    }
  }
  if (j.contains("beamform")) {
    const json& b = j.at("beamform");
    if (b.contains("loading")) {
      base.params.loading.relative = number_field(b.at("loading"), "beamform.loading");
    }
  }
  if (j.contains("geometry")) {
    if (!j.at("geometry").is_string()) {
      throw InvalidArgument("config field \"geometry\" must be a path string");
    }
    base.geometry_path = j.at("geometry").get<std::string>();
  }
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned() && !j.at("seed").is_number_integer()) {
      throw InvalidArgument("config field \"seed\" must be an integer");
    }
    base.seed = j.at("seed").get<std::uint64_t>();
  }

  base.validate();
  return base;
}

RunConfig load_run_config(const std::filesystem::path& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_run_config(buf.str(), std::move(base));
}

}  // namespace kissgev
