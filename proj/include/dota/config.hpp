// Config-file loading: preset resolution against the shipped data directory,
// plus JSON readers for device libraries, accelerator configs, and models.
#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "dota/arch.hpp"
#include "dota/devices.hpp"
#include "dota/workloads.hpp"

namespace dota::config {

namespace fs = std::filesystem;

//! Root of the shipped data files. Resolution order: $DOTA_DATA_DIR, a
//! data/ directory next to (or one level above) the executable, then the
//! build-time source path.
inline fs::path data_dir() {
  if (const char* env = std::getenv("DOTA_DATA_DIR")) return fs::path(env);
#ifdef DOTA_SOURCE_DATA_DIR
  const fs::path source_dir(DOTA_SOURCE_DATA_DIR);
  if (fs::exists(source_dir)) return source_dir;
#endif
  return fs::path("data");
}

inline nlohmann::json load_json_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in)
    throw config_error("cannot open config file: " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw config_error("malformed JSON in " + path.string() + ": " + e.what());
  }
  return j;
}

inline std::string join(const std::vector<std::string>& names) {
  std::ostringstream os;
  for (std::size_t i = 0; i < names.size(); ++i)
    os << (i ? ", " : "") << names[i];
  return os.str();
}

//! Resolve `name_or_path` against the preset directory `subdir`; a value
//! with a path separator or .json suffix is treated as an explicit file.
inline fs::path resolve_preset(const std::string& name_or_path,
                               const std::string& subdir,
                               const std::vector<std::string>& known) {
  if (name_or_path.find('/') != std::string::npos ||
      name_or_path.ends_with(".json"))
    return fs::path(name_or_path);
  const fs::path candidate = data_dir() / subdir / (name_or_path + ".json");
  if (!fs::exists(candidate))
    throw config_error("unknown preset '" + name_or_path +
                       "'; available presets: " + join(known));
  return candidate;
}

inline devices::DeviceLibrary load_devices(const std::string& path_or_empty) {
  if (path_or_empty.empty()) {
    const fs::path shipped = data_dir() / "devices.json";
    if (fs::exists(shipped))
      return devices::DeviceLibrary::from_json(load_json_file(shipped));
    return devices::DeviceLibrary::defaults();
  }
  return devices::DeviceLibrary::from_json(
      load_json_file(fs::path(path_or_empty)));
}

inline arch::AcceleratorConfig load_arch(const std::string& name_or_path) {
  const fs::path p =
      resolve_preset(name_or_path, "arch", arch::arch_preset_names());
  return load_json_file(p).get<arch::AcceleratorConfig>();
}

inline workloads::TransformerConfig load_model(
    const std::string& name_or_path) {
  const fs::path p = resolve_preset(name_or_path, "models",
                                    workloads::model_preset_names());
  return load_json_file(p).get<workloads::TransformerConfig>();
}

}  // namespace dota::config
