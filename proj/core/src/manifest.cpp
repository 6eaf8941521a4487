// Copyright 2026 kissgev contributors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "kissgev/manifest.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

#include "kissgev/error.hpp"

namespace kissgev {
namespace {

using json = nlohmann::ordered_json;

json vec3_to_json(const Eigen::Vector3d& v) {
  return json::array({v.x(), v.y(), v.z()});
}

Eigen::Vector3d vec3_from_json(const json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 3) {
    throw FormatError("manifest field \"" + field + "\" must be an [x, y, z] triple");
  }
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

template <typename T>
T require(const json& j, const std::string& field) {
  if (!j.contains(field)) {
    throw FormatError("manifest is missing field \"" + field + "\"");
  }
  try {
    return j.at(field).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw FormatError("manifest field \"" + field + "\" has the wrong type");
  }
}

json entry_to_json(const ManifestEntry& e) {
  const MixtureScenario& s = e.scenario;
  json j;
  j["id"] = s.id;
  j["interference_type"] = s.interference_type;
  j["seed"] = s.seed;
  json room;
  room["dimensions"] = vec3_to_json(s.room.dimensions);
  room["absorption"] = s.room.absorption;
  room["speed_of_sound"] = s.room.speed_of_sound;
  room["max_order"] = s.room.max_order;
  room["rir_length"] = s.room.rir_length;
  j["room"] = room;
  j["array_center"] = vec3_to_json(s.array_center);
  json mics = json::array();
  for (const auto& m : s.mics_array) mics.push_back(vec3_to_json(m));
  j["mics_array"] = mics;
  j["target_position"] = vec3_to_json(s.room.source_position);
  j["interference_position"] = vec3_to_json(s.interference_position);
  j["target_doa"] = vec3_to_json(s.target_doa_unit);
  j["source_files"] = {{"target", s.target_file.string()},
                       {"interference", s.interference_file.string()}};
  j["files"] = {{"mixture", e.mixture_wav.string()},
                {"target_image", e.target_image_wav.string()},
                {"interference_image", e.interference_image_wav.string()}};
  j["levels"] = {{"target_image_rms", e.target_image_rms},
                 {"interference_image_rms", e.interference_image_rms}};
  return j;
}

ManifestEntry entry_from_json(const json& j, int sample_rate) {
  ManifestEntry e;
  MixtureScenario& s = e.scenario;
  s.id = require<std::string>(j, "id");
  s.interference_type = require<std::string>(j, "interference_type");
  s.seed = require<std::uint64_t>(j, "seed");
  if (!j.contains("room")) throw FormatError("manifest entry is missing \"room\"");
  const json& room = j.at("room");
  s.room.dimensions = vec3_from_json(room.at("dimensions"), "room.dimensions");
  s.room.absorption = require<double>(room, "absorption");
  s.room.speed_of_sound = require<double>(room, "speed_of_sound");
  s.room.max_order = require<int>(room, "max_order");
  s.room.rir_length = require<int>(room, "rir_length");
  s.room.sample_rate = sample_rate;
  s.array_center = vec3_from_json(j.at("array_center"), "array_center");
  if (!j.contains("mics_array") || !j.at("mics_array").is_array()) {
    throw FormatError("manifest entry is missing \"mics_array\"");
  }
  for (const auto& m : j.at("mics_array")) {
    const Eigen::Vector3d rel = vec3_from_json(m, "mics_array[]");
    s.mics_array.push_back(rel);
    s.room.mic_positions.push_back(s.array_center + rel);
  }
  s.room.source_position = vec3_from_json(j.at("target_position"), "target_position");
  s.interference_position =
      vec3_from_json(j.at("interference_position"), "interference_position");
  s.target_doa_unit = vec3_from_json(j.at("target_doa"), "target_doa");
  if (j.contains("source_files")) {
    s.target_file = require<std::string>(j.at("source_files"), "target");
    s.interference_file = require<std::string>(j.at("source_files"), "interference");
  }
  if (!j.contains("files")) throw FormatError("manifest entry is missing \"files\"");
  e.mixture_wav = require<std::string>(j.at("files"), "mixture");
  e.target_image_wav = require<std::string>(j.at("files"), "target_image");
  e.interference_image_wav = require<std::string>(j.at("files"), "interference_image");
  if (j.contains("levels")) {
    e.target_image_rms = require<double>(j.at("levels"), "target_image_rms");
    e.interference_image_rms = require<double>(j.at("levels"), "interference_image_rms");
  }
  return e;
}

}  // namespace

void write_manifest(const Manifest& manifest, const std::filesystem::path& path) {
  json j;
  j["version"] = 1;
  j["sample_rate"] = manifest.sample_rate;
  j["seed"] = manifest.seed;
  json entries = json::array();
  for (const auto& e : manifest.entries) entries.push_back(entry_to_json(e));
  j["scenarios"] = entries;

  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out << j.dump(2) << '\n';
  if (!out) throw IoError("failed writing manifest: " + path.string());
}

Manifest read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open manifest: " + path.string());
  json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("manifest JSON: ") + e.what());
  }
  Manifest m;
  m.sample_rate = require<int>(j, "sample_rate");
  m.seed = require<std::uint64_t>(j, "seed");
  if (!j.contains("scenarios") || !j.at("scenarios").is_array()) {
    throw FormatError("manifest is missing the \"scenarios\" array");
  }
  for (const auto& e : j.at("scenarios")) {
    m.entries.push_back(entry_from_json(e, m.sample_rate));
  }
  return m;
}

}  // namespace kissgev
