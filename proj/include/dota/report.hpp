// Report emission: run manifests, JSON/CSV serialization with a stable
// schema, and atomic file writes (temp + rename).
#pragma once

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dota/arch.hpp"
#include "dota/common.hpp"

namespace dota::report {

inline constexpr int kSchemaVersion = 1;

namespace fs = std::filesystem;

//! Provenance block embedded in every emitted report. The timestamp honors
//! SOURCE_DATE_EPOCH so identical manifests can produce byte-identical
//! output.
struct RunManifest {
  std::string command;
  std::map<std::string, std::string> config_paths;
  std::uint64_t seed = 0;
  std::string output_dir;
  std::string tool_version = kVersion;
  std::string timestamp;

  static std::string now_iso8601() {
    std::time_t t;
    if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH"))
      t = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
    else
      t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
  }
};

inline void to_json(nlohmann::json& j, const RunManifest& m) {
  j = {{"command", m.command},     {"config_paths", m.config_paths},
       {"seed", m.seed},           {"output_dir", m.output_dir},
       {"tool_version", m.tool_version}, {"timestamp", m.timestamp}};
}

//! Write via a temp file in the same directory, then rename into place.
inline void atomic_write(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path().empty() ? "."
                                                    : path.parent_path());
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
  }
  fs::rename(tmp, path);
}

inline std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// Simulation report
// ---------------------------------------------------------------------------

inline nlohmann::json cost_report_json(const arch::CostReport& r) {
  nlohmann::json groups;
  for (const auto& [name, gc] : r.groups)
    groups[name] = {{"energy_mj", gc.energy_mj},
                    {"latency_ms", gc.latency_ms},
                    {"edp_mj_ms", gc.edp()},
                    {"photonic_cycles", gc.photonic_cycles}};
  nlohmann::json energy_mj;
  for (const auto& [k, v] : r.energy_j.parts) energy_mj[k] = v * 1e3;
  energy_mj["total"] = r.energy_mj();
  return {{"groups", groups},
          {"energy_mj", energy_mj},
          {"latency_ms",
           {{"photonic", r.latency.photonic_s * 1e3},
            {"eo_oe", r.latency.eo_oe_s * 1e3},
            {"optics_propagation", r.latency.optics_propagation_s * 1e3},
            {"memory_stall", r.latency.memory_stall_s * 1e3},
            {"digital", r.latency.digital_s * 1e3},
            {"total", r.latency_ms()}}},
          {"edp_mj_ms", r.edp_mj_ms()},
          {"avg_power_w", r.avg_power_w()},
          {"power_w", r.power_w},
          {"area_mm2", r.area_mm2},
          {"padding_waste", r.padding_waste}};
}

inline nlohmann::json simulation_report_json(const RunManifest& manifest,
                                             const std::string& model,
                                             const std::string& arch_name,
                                             int bits,
                                             const arch::CostReport& r) {
  return {{"schema_version", kSchemaVersion},
          {"manifest", manifest},
          {"model", model},
          {"arch", arch_name},
          {"bits", bits},
          {"report", cost_report_json(r)}};
}

//! Fixed column order: group rows of the GEMM costs. Strings never contain
//! commas, so no quoting is needed.
inline std::string simulation_report_csv(const std::string& model,
                                         const std::string& arch_name,
                                         int bits, const arch::CostReport& r) {
  std::ostringstream os;
  os << "model,arch,bits,group,energy_mj,latency_ms,edp_mj_ms,photonic_cycles\n";
  os << std::setprecision(12);
  for (const auto& [name, gc] : r.groups)
    os << model << ',' << arch_name << ',' << bits << ',' << name << ','
       << gc.energy_mj << ',' << gc.latency_ms << ',' << gc.edp() << ','
       << gc.photonic_cycles << '\n';
  os << model << ',' << arch_name << ',' << bits << ",total,"
     << r.energy_mj() << ',' << r.latency_ms() << ',' << r.edp_mj_ms() << ','
     << 0 << '\n';
  return os.str();
}

//! Generic CSV table with a fixed header.
inline std::string csv_table(const std::vector<std::string>& header,
                             const std::vector<std::vector<double>>& rows) {
  std::ostringstream os;
  for (std::size_t i = 0; i < header.size(); ++i)
    os << (i ? "," : "") << header[i];
  os << '\n';
  os << std::setprecision(17);
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
    os << '\n';
  }
  return os.str();
}

}  // namespace dota::report
