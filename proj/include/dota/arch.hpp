// System-level scheduler and cost model: tiles GEMMs onto N_t tiles x N_c
// cores with an output-stationary dataflow, operand broadcast across tiles,
// analog temporal accumulation in front of the ADCs, and converts event
// counts into energy, latency, power, and area.
#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "dota/common.hpp"
#include "dota/devices.hpp"
#include "dota/tensor_core.hpp"
#include "dota/workloads.hpp"

namespace dota::arch {

using tensor_core::PTCConfig;

//! Per-byte SRAM access energies [pJ/B]. Calibrated constants standing in
//! for a memory compiler; see data/devices.schema.md for provenance notes.
struct MemoryEnergyModel {
  double global_read_pj = 1.0;
  double global_write_pj = 1.2;
  double tile_read_pj = 0.2;
  double tile_write_pj = 0.25;
};

//! Area constants. SRAM area per KB and the DDot cell pitch are calibrated
//! against the shipped accelerator footprints.
struct AreaModel {
  double memory_mm2_per_kb = 0.0072;
  double ddot_cell_mm2 = 0.01;  // 100um x 100um crossbar cell
  double digital_mm2_per_tile = 0.05;
};

struct AcceleratorConfig {
  std::string name;
  int n_t = 4;
  int n_c = 2;
  PTCConfig ptc;
  std::int64_t global_sram_kb = 2048;
  std::int64_t tile_sram_kb = 4;
  std::int64_t subarray_kb = 32;
  int accumulation_depth = 3;
  double eo_oe_latency_s = -1.0;  // < 0: derive from converter rates
  MemoryEnergyModel mem_energy;
  AreaModel area_model;
  double tile_bandwidth_Bps = 4e12;
  double global_bandwidth_Bps = 4e12;
  double digital_energy_pj_per_elem = 0.25;
  double digital_rate_elems_per_s = 1e12;
  double memory_static_w_per_mb = 0.05;
  double digital_static_w_per_tile = 0.05;
  double waveguide_pitch_m = 100e-6;
  double group_index = 4.2;

  int ptc_count() const { return n_t * n_c; }

  //! ADC sampling rate: one conversion per accumulation_depth cycles.
  double adc_rate_hz() const {
    return ptc.clock_hz / static_cast<double>(accumulation_depth);
  }

  //! Pipeline-fill latency of one GEMM: one DAC settling interval plus one
  //! ADC conversion interval, unless overridden in the config.
  double eo_oe_latency() const {
    if (eo_oe_latency_s >= 0.0) return eo_oe_latency_s;
    return 1.0 / ptc.clock_hz + 1.0 / adc_rate_hz();
  }

  //! Light propagation time across the crossbar, linear in the core size.
  double optics_latency_s() const {
    return static_cast<double>(ptc.n_h + ptc.n_v) * waveguide_pitch_m *
           group_index / kSpeedOfLight;
  }

  void validate() const {
    if (n_t < 1 || n_c < 1)
      throw config_error("AcceleratorConfig: n_t and n_c must be >= 1");
    if (accumulation_depth < 1)
      throw config_error("AcceleratorConfig: accumulation_depth must be >= 1");
    if (global_sram_kb < 0 || tile_sram_kb < 0 || subarray_kb < 0)
      throw config_error("AcceleratorConfig: memory sizes must be >= 0");
    if (ptc.n_h < 1 || ptc.n_v < 1 || ptc.n_lambda < 1 || ptc.clock_hz <= 0)
      throw config_error("AcceleratorConfig: invalid PTC geometry");
  }
};

inline void to_json(nlohmann::json& j, const MemoryEnergyModel& m) {
  j = {{"global_read_pj_per_byte", m.global_read_pj},
       {"global_write_pj_per_byte", m.global_write_pj},
       {"tile_read_pj_per_byte", m.tile_read_pj},
       {"tile_write_pj_per_byte", m.tile_write_pj}};
}

inline void from_json(const nlohmann::json& j, MemoryEnergyModel& m) {
  m.global_read_pj = j.value("global_read_pj_per_byte", 1.0);
  m.global_write_pj = j.value("global_write_pj_per_byte", 1.2);
  m.tile_read_pj = j.value("tile_read_pj_per_byte", 0.2);
  m.tile_write_pj = j.value("tile_write_pj_per_byte", 0.25);
}

inline void to_json(nlohmann::json& j, const AreaModel& a) {
  j = {{"memory_mm2_per_kb", a.memory_mm2_per_kb},
       {"ddot_cell_mm2", a.ddot_cell_mm2},
       {"digital_mm2_per_tile", a.digital_mm2_per_tile}};
}

inline void from_json(const nlohmann::json& j, AreaModel& a) {
  a.memory_mm2_per_kb = j.value("memory_mm2_per_kb", 0.0072);
  a.ddot_cell_mm2 = j.value("ddot_cell_mm2", 0.01);
  a.digital_mm2_per_tile = j.value("digital_mm2_per_tile", 0.05);
}

inline void to_json(nlohmann::json& j, const AcceleratorConfig& c) {
  j = {{"name", c.name},
       {"n_t", c.n_t},
       {"n_c", c.n_c},
       {"ptc", c.ptc},
       {"global_sram_kb", c.global_sram_kb},
       {"tile_sram_kb", c.tile_sram_kb},
       {"subarray_kb", c.subarray_kb},
       {"accumulation_depth", c.accumulation_depth},
       {"eo_oe_latency_s", c.eo_oe_latency_s},
       {"memory_energy", c.mem_energy},
       {"area_model", c.area_model},
       {"tile_bandwidth_Bps", c.tile_bandwidth_Bps},
       {"global_bandwidth_Bps", c.global_bandwidth_Bps},
       {"digital_energy_pj_per_elem", c.digital_energy_pj_per_elem},
       {"digital_rate_elems_per_s", c.digital_rate_elems_per_s},
       {"memory_static_w_per_mb", c.memory_static_w_per_mb},
       {"digital_static_w_per_tile", c.digital_static_w_per_tile},
       {"waveguide_pitch_m", c.waveguide_pitch_m},
       {"group_index", c.group_index}};
}

inline void from_json(const nlohmann::json& j, AcceleratorConfig& c) {
  c.name = j.value("name", "");
  c.n_t = j.at("n_t").get<int>();
  c.n_c = j.at("n_c").get<int>();
  c.ptc = j.at("ptc").get<PTCConfig>();
  c.global_sram_kb = j.value("global_sram_kb", std::int64_t{2048});
  c.tile_sram_kb = j.value("tile_sram_kb", std::int64_t{4});
  c.subarray_kb = j.value("subarray_kb", std::int64_t{32});
  c.accumulation_depth = j.value("accumulation_depth", 3);
  c.eo_oe_latency_s = j.value("eo_oe_latency_s", -1.0);
  if (j.contains("memory_energy"))
    c.mem_energy = j.at("memory_energy").get<MemoryEnergyModel>();
  if (j.contains("area_model"))
    c.area_model = j.at("area_model").get<AreaModel>();
  c.tile_bandwidth_Bps = j.value("tile_bandwidth_Bps", 4e12);
  c.global_bandwidth_Bps = j.value("global_bandwidth_Bps", 4e12);
  c.digital_energy_pj_per_elem = j.value("digital_energy_pj_per_elem", 0.25);
  c.digital_rate_elems_per_s = j.value("digital_rate_elems_per_s", 1e12);
  c.memory_static_w_per_mb = j.value("memory_static_w_per_mb", 0.05);
  c.digital_static_w_per_tile = j.value("digital_static_w_per_tile", 0.05);
  c.waveguide_pitch_m = j.value("waveguide_pitch_m", 100e-6);
  c.group_index = j.value("group_index", 4.2);
  c.validate();
}

// ---------------------------------------------------------------------------
// Scheduling
// ---------------------------------------------------------------------------

//! Event ledger for one GEMM task (all counts include the task's repeat
//! factor). Partial tiles are zero-padded and charged full modulation
//! energy; the waste is tracked via padded vs useful MACs.
struct GemmSchedule {
  workloads::GemmTask task;
  std::int64_t m_steps = 0;
  std::int64_t n_steps = 0;
  std::int64_t k_steps = 0;
  std::int64_t photonic_cycles = 0;
  std::int64_t dac_conversions = 0;
  std::int64_t mzm_modulations = 0;
  std::int64_t adc_conversions = 0;
  std::int64_t tia_events = 0;
  std::int64_t broadcast_modulations_saved = 0;
  double global_read_bytes = 0;
  double global_write_bytes = 0;
  double tile_read_bytes = 0;
  double tile_write_bytes = 0;
  std::int64_t useful_macs = 0;
  std::int64_t padded_macs = 0;

  double sram_read_bytes() const { return global_read_bytes + tile_read_bytes; }
  double sram_write_bytes() const {
    return global_write_bytes + tile_write_bytes;
  }
};

struct Schedule {
  std::vector<GemmSchedule> gemms;
  std::vector<workloads::DigitalOp> digital_ops;

  std::int64_t photonic_cycles() const {
    std::int64_t total = 0;
    for (const auto& g : gemms) total += g.photonic_cycles;
    return total;
  }
};

//! Output-stationary tiling. Row blocks of M1 (height N_h) are assigned
//! round-robin across the N_t tiles; the K dimension is split in N_lambda
//! chunks across the N_c cores of a tile, whose photocurrents sum in the
//! analog domain; accumulation_depth sequential K-groups share one A/D
//! conversion; remaining accumulation is digital in the output buffer. The
//! M2 operand is modulated once per cycle and broadcast to all tiles.
inline GemmSchedule tile_gemm(const workloads::GemmTask& task,
                              const AcceleratorConfig& cfg) {
  cfg.validate();
  if (task.m < 1 || task.k < 1 || task.n < 1)
    throw std::invalid_argument("tile_gemm: degenerate task dimensions");
  const std::int64_t n_h = cfg.ptc.n_h;
  const std::int64_t n_v = cfg.ptc.n_v;
  const std::int64_t n_l = cfg.ptc.n_lambda;
  const std::int64_t n_t = cfg.n_t;
  const std::int64_t n_c = cfg.n_c;
  const std::int64_t rep = task.repeat;

  GemmSchedule s;
  s.task = task;
  s.m_steps = ceil_div(task.m, n_h * n_t);
  s.n_steps = ceil_div(task.n, n_v);
  s.k_steps = ceil_div(task.k, n_l * n_c);
  const std::int64_t cycles = s.m_steps * s.n_steps * s.k_steps;
  s.photonic_cycles = cycles * rep;

  // Operand encoding per cycle: every tile-core pair modulates its own M1
  // chunk; the M2 chunk is modulated once and broadcast across tiles.
  const std::int64_t m1_mods = cycles * n_t * n_c * n_h * n_l;
  const std::int64_t m2_mods = cycles * n_c * n_l * n_v;
  s.dac_conversions = (m1_mods + m2_mods) * rep;
  s.mzm_modulations = s.dac_conversions;
  s.broadcast_modulations_saved = (n_t - 1) * m2_mods * rep;

  const std::int64_t k_groups = ceil_div(s.k_steps, cfg.accumulation_depth);
  s.adc_conversions = s.m_steps * s.n_steps * k_groups * n_t * n_h * n_v * rep;
  s.tia_events = cycles * n_t * n_h * n_v * rep;

  const double op_bytes = cfg.ptc.bits / 8.0;
  const double acc_bytes = 2.0;  // digital partial-sum width
  s.tile_read_bytes =
      static_cast<double>(m1_mods) * op_bytes * static_cast<double>(rep);
  s.global_read_bytes =
      (static_cast<double>(m2_mods) +
       static_cast<double>(task.m * task.k)) *  // M1 staged into tile SRAM
      op_bytes * static_cast<double>(rep);
  s.tile_write_bytes =
      (static_cast<double>(s.adc_conversions) * acc_bytes +
       static_cast<double>(task.m * task.k) * op_bytes *
           static_cast<double>(rep));
  s.global_write_bytes =
      static_cast<double>(task.m * task.n) * op_bytes *
      static_cast<double>(rep);

  s.useful_macs = task.macs();
  s.padded_macs = s.photonic_cycles * n_t * n_c * n_h * n_l * n_v;
  return s;
}

inline Schedule schedule_workload(const workloads::WorkloadGraph& graph,
                                  const AcceleratorConfig& cfg) {
  Schedule s;
  s.gemms.reserve(graph.gemms.size());
  for (const auto& task : graph.gemms) s.gemms.push_back(tile_gemm(task, cfg));
  s.digital_ops = graph.digital_ops;
  return s;
}

// ---------------------------------------------------------------------------
// Device inventory
// ---------------------------------------------------------------------------

//! Component counts implied by a configuration. Modulation units sit on
//! every bus waveguide: the M1 side is private per tile-core, the M2 side is
//! shared across tiles (operand broadcast), matching the event accounting.
struct DeviceCounts {
  std::int64_t dacs = 0;
  std::int64_t adcs = 0;
  std::int64_t mzms = 0;
  std::int64_t modulation_units = 0;
  std::int64_t mux_demux_disks = 0;
  std::int64_t tias = 0;
  std::int64_t photodetectors = 0;
  std::int64_t lasers = 0;
  std::int64_t combs = 0;
  std::int64_t ddots = 0;
};

inline DeviceCounts device_counts(const AcceleratorConfig& cfg) {
  const std::int64_t n_h = cfg.ptc.n_h, n_v = cfg.ptc.n_v,
                     n_l = cfg.ptc.n_lambda;
  DeviceCounts d;
  d.modulation_units = cfg.n_c * n_v + cfg.n_t * cfg.n_c * n_h;
  d.dacs = d.modulation_units * n_l;
  d.mzms = d.dacs;
  d.mux_demux_disks = d.modulation_units * 2 * n_l;
  d.adcs = cfg.n_t * n_h * n_v;  // after analog summation across cores
  d.tias = cfg.n_t * n_h * n_v;
  d.photodetectors = cfg.ptc_count() * n_h * n_v * 2;
  d.lasers = cfg.ptc_count();
  d.combs = cfg.n_t;
  d.ddots = cfg.ptc_count() * n_h * n_v;
  return d;
}

// ---------------------------------------------------------------------------
// Cost reports
// ---------------------------------------------------------------------------

//! Named breakdown whose total is always the sum of its parts.
struct Breakdown {
  std::map<std::string, double> parts;

  double total() const {
    double t = 0.0;
    for (const auto& [k, v] : parts) t += v;
    return t;
  }
  double& operator[](const std::string& k) { return parts[k]; }
  double at(const std::string& k) const {
    auto it = parts.find(k);
    return it == parts.end() ? 0.0 : it->second;
  }
};

inline void to_json(nlohmann::json& j, const Breakdown& b) {
  j = nlohmann::json{};
  for (const auto& [k, v] : b.parts) j[k] = v;
  j["total"] = b.total();
}

//! Per-event converter energies [J] at the configured clock.
struct EventEnergies {
  double dac_j = 0.0;
  double adc_j = 0.0;
  double mzm_j = 0.0;
};

inline EventEnergies event_energies(const AcceleratorConfig& cfg, int bits,
                                    const devices::DeviceLibrary& lib) {
  EventEnergies e;
  const double clock = cfg.ptc.clock_hz;
  e.dac_j = devices::dac_power(bits, clock, lib) * 1e-3 / clock;
  e.adc_j =
      devices::adc_power(bits, cfg.adc_rate_hz(), lib) * 1e-3 / cfg.adc_rate_hz();
  e.mzm_j = lib.at("mzm").tuning_power_mw * 1e-3 / clock;
  return e;
}

//! Static (always-on) power common to the power model and the energy model
//! [W], keyed by report category.
inline Breakdown static_power_w(const AcceleratorConfig& cfg,
                                const devices::DeviceLibrary& lib, int bits) {
  const DeviceCounts d = device_counts(cfg);
  Breakdown p;
  const auto budget = devices::laser_budget(cfg.ptc.n_h, cfg.ptc.n_v,
                                            cfg.ptc.n_lambda, lib, bits);
  p["laser"] = budget.electrical_mw * 1e-3 * cfg.ptc_count() +
               lib.at("microdisk").locking_power_mw * 1e-3 *
                   static_cast<double>(d.mux_demux_disks);
  p["tia"] = lib.at("tia").power_mw * 1e-3 * static_cast<double>(d.tias);
  p["photodetector"] = lib.at("photodetector").power_mw * 1e-3 *
                       static_cast<double>(d.photodetectors);
  const double total_sram_mb =
      static_cast<double>(cfg.global_sram_kb +
                          cfg.n_t * (cfg.tile_sram_kb + 2 * cfg.subarray_kb)) /
      1024.0;
  p["memory"] = cfg.memory_static_w_per_mb * total_sram_mb;
  p["digital"] = cfg.digital_static_w_per_tile * cfg.n_t;
  return p;
}

struct LatencyReport {
  double photonic_s = 0.0;
  double eo_oe_s = 0.0;
  double optics_propagation_s = 0.0;
  double memory_stall_s = 0.0;
  double digital_s = 0.0;

  double total_s() const {
    return photonic_s + eo_oe_s + optics_propagation_s + memory_stall_s +
           digital_s;
  }
};

//! Latency of one scheduled GEMM (no deep pipelining; tasks run
//! back-to-back). A memory stall is charged only when the streaming
//! bandwidth demand exceeds the configured SRAM bandwidth.
inline LatencyReport latency_of(const GemmSchedule& g,
                                const AcceleratorConfig& cfg) {
  LatencyReport lat;
  const double clock = cfg.ptc.clock_hz;
  lat.photonic_s = static_cast<double>(g.photonic_cycles) / clock;
  lat.eo_oe_s = cfg.eo_oe_latency() * static_cast<double>(g.task.repeat);
  lat.optics_propagation_s =
      cfg.optics_latency_s() * static_cast<double>(g.task.repeat);

  const double cycle_count = static_cast<double>(g.photonic_cycles);
  if (cycle_count > 0) {
    const double tile_demand_Bps = g.tile_read_bytes / cycle_count * clock;
    const double global_demand_Bps = g.global_read_bytes / cycle_count * clock;
    const double stall_factor =
        std::max({1.0, tile_demand_Bps / cfg.tile_bandwidth_Bps /
                           static_cast<double>(cfg.n_t),
                  global_demand_Bps / cfg.global_bandwidth_Bps});
    lat.memory_stall_s = (stall_factor - 1.0) * lat.photonic_s;
  }
  return lat;
}

inline LatencyReport latency_of(const Schedule& s,
                                const AcceleratorConfig& cfg) {
  LatencyReport total;
  for (const auto& g : s.gemms) {
    const auto lat = latency_of(g, cfg);
    total.photonic_s += lat.photonic_s;
    total.eo_oe_s += lat.eo_oe_s;
    total.optics_propagation_s += lat.optics_propagation_s;
    total.memory_stall_s += lat.memory_stall_s;
  }
  for (const auto& op : s.digital_ops)
    total.digital_s += static_cast<double>(op.total_elements()) /
                       cfg.digital_rate_elems_per_s;
  return total;
}

//! Dynamic + static energy of a schedule [J], by category. Static draws are
//! charged over the photonic active time of the schedule.
inline Breakdown energy_of(const Schedule& s, const AcceleratorConfig& cfg,
                           const devices::DeviceLibrary& lib) {
  const int bits = cfg.ptc.bits;
  const EventEnergies ev = event_energies(cfg, bits, lib);
  Breakdown e;
  e["dac"] = 0.0;
  e["adc"] = 0.0;
  e["mzm"] = 0.0;
  e["memory"] = 0.0;
  e["digital"] = 0.0;
  double active_s = 0.0;
  for (const auto& g : s.gemms) {
    e["dac"] += static_cast<double>(g.dac_conversions) * ev.dac_j;
    e["adc"] += static_cast<double>(g.adc_conversions) * ev.adc_j;
    e["mzm"] += static_cast<double>(g.mzm_modulations) * ev.mzm_j;
    e["memory"] += (g.global_read_bytes * cfg.mem_energy.global_read_pj +
                    g.global_write_bytes * cfg.mem_energy.global_write_pj +
                    g.tile_read_bytes * cfg.mem_energy.tile_read_pj +
                    g.tile_write_bytes * cfg.mem_energy.tile_write_pj) *
                   1e-12;
    active_s += static_cast<double>(g.photonic_cycles) / cfg.ptc.clock_hz;
  }
  for (const auto& op : s.digital_ops)
    e["digital"] += static_cast<double>(op.total_elements()) *
                    cfg.digital_energy_pj_per_elem * 1e-12;

  const Breakdown statics = static_power_w(cfg, lib, bits);
  e["laser"] = statics.at("laser") * active_s;
  e["tia"] = statics.at("tia") * active_s;
  e["photodetector"] = statics.at("photodetector") * active_s;
  e["memory"] += statics.at("memory") * active_s;
  e["digital"] += statics.at("digital") * active_s;
  return e;
}

//! Steady-state power at full utilization [W], by category.
inline Breakdown power_of(const AcceleratorConfig& cfg, int bits,
                          const devices::DeviceLibrary& lib) {
  const DeviceCounts d = device_counts(cfg);
  Breakdown p = static_power_w(cfg, lib, bits);
  p["dac"] = devices::dac_power(bits, cfg.ptc.clock_hz, lib) * 1e-3 *
             static_cast<double>(d.dacs);
  p["adc"] = devices::adc_power(bits, cfg.adc_rate_hz(), lib) * 1e-3 *
             static_cast<double>(d.adcs);
  p["mzm"] =
      lib.at("mzm").tuning_power_mw * 1e-3 * static_cast<double>(d.mzms);
  return p;
}

//! Chip area [mm^2], by category.
inline Breakdown area_of(const AcceleratorConfig& cfg,
                         const devices::DeviceLibrary& lib) {
  const DeviceCounts d = device_counts(cfg);
  const double um2_to_mm2 = 1e-6;
  Breakdown a;
  a["photonic_core"] =
      static_cast<double>(d.ddots) * cfg.area_model.ddot_cell_mm2;
  a["dac"] =
      static_cast<double>(d.dacs) * lib.at("dac").area_um2 * um2_to_mm2;
  a["adc"] =
      static_cast<double>(d.adcs) * lib.at("adc").area_um2 * um2_to_mm2;
  a["mzm"] =
      static_cast<double>(d.mzms) * lib.at("mzm").area_um2 * um2_to_mm2;
  a["memory"] = static_cast<double>(cfg.global_sram_kb +
                                    cfg.n_t * (cfg.tile_sram_kb +
                                               2 * cfg.subarray_kb)) *
                cfg.area_model.memory_mm2_per_kb;
  a["laser"] =
      (static_cast<double>(d.lasers) * lib.at("laser").area_um2 +
       static_cast<double>(d.combs) * lib.at("frequency_comb").area_um2) *
      um2_to_mm2;
  a["other"] =
      (static_cast<double>(d.mux_demux_disks) * lib.at("microdisk").area_um2 +
       static_cast<double>(d.tias) * lib.at("tia").area_um2 +
       static_cast<double>(d.photodetectors) *
           lib.at("photodetector").area_um2) *
          um2_to_mm2 +
      cfg.area_model.digital_mm2_per_tile * cfg.n_t;
  return a;
}

// ---------------------------------------------------------------------------
// Group-level cost assembly
// ---------------------------------------------------------------------------

struct GroupCost {
  double energy_mj = 0.0;
  double latency_ms = 0.0;
  std::int64_t photonic_cycles = 0;

  double edp() const { return energy_mj * latency_ms; }
};

struct CostReport {
  Breakdown energy_j;
  LatencyReport latency;
  Breakdown power_w;
  Breakdown area_mm2;
  std::map<std::string, GroupCost> groups;  // "MHA", "FC", "digital"
  double padding_waste = 0.0;  // fraction of padded MACs that were wasted

  double energy_mj() const { return energy_j.total() * 1e3; }
  double latency_ms() const { return latency.total_s() * 1e3; }
  double edp_mj_ms() const { return energy_mj() * latency_ms(); }
  double avg_power_w() const {
    const double t = latency.total_s();
    return t > 0 ? energy_j.total() / t : 0.0;
  }
};

//! Full cost evaluation of a workload on a configuration. Group rows carry
//! GEMM-only energy/latency (MHA and FC); digital ops report separately.
inline CostReport evaluate(const workloads::WorkloadGraph& graph,
                           const AcceleratorConfig& cfg,
                           const devices::DeviceLibrary& lib) {
  const Schedule sched = schedule_workload(graph, cfg);
  CostReport r;
  r.energy_j = energy_of(sched, cfg, lib);
  r.latency = latency_of(sched, cfg);
  r.power_w = power_of(cfg, cfg.ptc.bits, lib);
  r.area_mm2 = area_of(cfg, lib);

  const EventEnergies ev = event_energies(cfg, cfg.ptc.bits, lib);
  const Breakdown statics = static_power_w(cfg, lib, cfg.ptc.bits);
  const double static_total = statics.total();

  std::int64_t useful = 0, padded = 0;
  for (const auto& g : sched.gemms) {
    const auto lat = latency_of(g, cfg);
    GroupCost& gc = r.groups[workloads::to_string(g.task.group)];
    const double dyn_j =
        static_cast<double>(g.dac_conversions) * ev.dac_j +
        static_cast<double>(g.adc_conversions) * ev.adc_j +
        static_cast<double>(g.mzm_modulations) * ev.mzm_j +
        (g.global_read_bytes * cfg.mem_energy.global_read_pj +
         g.global_write_bytes * cfg.mem_energy.global_write_pj +
         g.tile_read_bytes * cfg.mem_energy.tile_read_pj +
         g.tile_write_bytes * cfg.mem_energy.tile_write_pj) *
            1e-12;
    const double active_s =
        static_cast<double>(g.photonic_cycles) / cfg.ptc.clock_hz;
    gc.energy_mj += (dyn_j + static_total * active_s) * 1e3;
    gc.latency_ms += lat.total_s() * 1e3;
    gc.photonic_cycles += g.photonic_cycles;
    useful += g.useful_macs;
    padded += g.padded_macs;
  }
  GroupCost& dg = r.groups["digital"];
  for (const auto& op : sched.digital_ops) {
    dg.energy_mj += static_cast<double>(op.total_elements()) *
                    cfg.digital_energy_pj_per_elem * 1e-12 * 1e3;
    dg.latency_ms += static_cast<double>(op.total_elements()) /
                     cfg.digital_rate_elems_per_s * 1e3;
  }
  r.padding_waste =
      padded > 0 ? 1.0 - static_cast<double>(useful) / static_cast<double>(padded)
                 : 0.0;
  return r;
}

// ---------------------------------------------------------------------------
// Shipped accelerator presets
// ---------------------------------------------------------------------------

inline const std::vector<std::string>& arch_preset_names() {
  static const std::vector<std::string> names = {"dota-b", "dota-l"};
  return names;
}

}  // namespace dota::arch
