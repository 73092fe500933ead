// dota — command-line front end: run cost simulations over model/arch
// presets, generate sweep data tables, and run the built-in validation
// checks. Exit codes: 0 success, 1 validation failure, 2 config error.
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dota/arch.hpp"
#include "dota/config.hpp"
#include "dota/devices.hpp"
#include "dota/fidelity.hpp"
#include "dota/report.hpp"
#include "dota/validate.hpp"
#include "dota/workloads.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CommonOpts {
  std::string out_dir = "out";
  std::string devices_file;
  std::string format = "both";
  std::uint64_t seed = 1;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--out", opts.out_dir, "Output directory");
  cmd->add_option("--devices", opts.devices_file,
                  "Device library file (defaults to the shipped table)");
  cmd->add_option("--format", opts.format, "Report format")
      ->check(CLI::IsMember({"json", "csv", "both"}));
  cmd->add_option("--seed", opts.seed, "Random seed for Monte-Carlo draws");
}

dota::report::RunManifest make_manifest(
    const std::string& command, const CommonOpts& opts,
    const std::map<std::string, std::string>& configs) {
  dota::report::RunManifest m;
  m.command = command;
  m.config_paths = configs;
  m.seed = opts.seed;
  m.output_dir = opts.out_dir;
  m.timestamp = dota::report::RunManifest::now_iso8601();
  return m;
}

int run_simulate(const std::string& model_arg, const std::string& arch_arg,
                 int bits, const CommonOpts& opts) {
  const auto lib = dota::config::load_devices(opts.devices_file);
  auto arch_cfg = dota::config::load_arch(arch_arg);
  if (bits > 0) arch_cfg.ptc.bits = bits;
  const auto model = dota::config::load_model(model_arg);
  const auto graph = dota::workloads::extract_gemms(model);
  const auto report = dota::arch::evaluate(graph, arch_cfg, lib);

  const auto manifest = make_manifest(
      "simulate", opts, {{"model", model_arg}, {"arch", arch_arg}});
  const fs::path out(opts.out_dir);
  const std::string stem = model.model_name + "_" + arch_cfg.name + "_" +
                           std::to_string(arch_cfg.ptc.bits) + "bit";
  if (opts.format != "csv") {
    const json j = dota::report::simulation_report_json(
        manifest, model.model_name, arch_cfg.name, arch_cfg.ptc.bits, report);
    dota::report::atomic_write(out / (stem + ".json"), dota::report::dump(j));
  }
  if (opts.format != "json") {
    dota::report::atomic_write(
        out / (stem + ".csv"),
        dota::report::simulation_report_csv(model.model_name, arch_cfg.name,
                                            arch_cfg.ptc.bits, report));
  }

  std::cout << model.model_name << " on " << arch_cfg.name << " ("
            << arch_cfg.ptc.bits << "-bit)\n";
  for (const auto& [name, gc] : report.groups)
    std::cout << "  " << name << ": energy " << gc.energy_mj
              << " mJ, latency " << gc.latency_ms << " ms, EDP " << gc.edp()
              << " mJ*ms\n";
  std::cout << "  total: energy " << report.energy_mj() << " mJ, latency "
            << report.latency_ms() << " ms, avg power "
            << report.avg_power_w() << " W\n  area " << report.area_mm2.total()
            << " mm^2, steady-state power " << report.power_w.total()
            << " W\n  reports written to " << out.string() << "\n";
  return 0;
}

int run_sweep_noise(const CommonOpts& opts, int trials, int length) {
  const std::vector<double> grid = {0.0,  0.001, 0.003, 0.01, 0.03,
                                    0.06, 0.1,   0.2,   0.3};
  json all;
  std::vector<std::vector<double>> rows;
  for (auto kind : {dota::fidelity::NoiseKind::phase,
                    dota::fidelity::NoiseKind::magnitude,
                    dota::fidelity::NoiseKind::output}) {
    const auto pts =
        dota::fidelity::noise_sweep(grid, kind, length, trials, opts.seed);
    all[dota::fidelity::to_string(kind)] = pts;
    for (const auto& p : pts)
      rows.push_back({static_cast<double>(kind == dota::fidelity::NoiseKind::phase ? 0
                                          : kind == dota::fidelity::NoiseKind::magnitude ? 1
                                                                                         : 2),
                      p.sigma, p.mean_rel, p.std_rel,
                      static_cast<double>(p.trials)});
  }
  const auto manifest = make_manifest("sweep noise", opts, {});
  const fs::path out(opts.out_dir);
  if (opts.format != "csv")
    dota::report::atomic_write(
        out / "noise_sweep.json",
        dota::report::dump(json{{"schema_version", dota::report::kSchemaVersion},
                                {"manifest", manifest},
                                {"sweep", all}}));
  if (opts.format != "json")
    dota::report::atomic_write(
        out / "noise_sweep.csv",
        dota::report::csv_table(
            {"kind", "sigma", "mean_rel", "std_rel", "trials"}, rows));
  std::cout << "noise sweep written to " << out.string() << "\n";
  return 0;
}

int run_sweep_dispersion(const CommonOpts& opts, int max_channels) {
  const auto disp = dota::optics::DispersionSpec::defaults();
  const auto pts =
      dota::fidelity::dispersion_sweep(max_channels, disp, 1, 8, opts.seed);
  const auto manifest = make_manifest("sweep dispersion", opts, {});
  const fs::path out(opts.out_dir);
  if (opts.format != "csv")
    dota::report::atomic_write(
        out / "dispersion_sweep.json",
        dota::report::dump(json{{"schema_version", dota::report::kSchemaVersion},
                                {"manifest", manifest},
                                {"sweep", pts}}));
  if (opts.format != "json") {
    std::vector<std::vector<double>> rows;
    for (const auto& p : pts)
      rows.push_back({static_cast<double>(p.channels), p.max_kappa_rel_dev,
                      p.max_phase_dev_deg, p.matmul_mean_rel});
    dota::report::atomic_write(
        out / "dispersion_sweep.csv",
        dota::report::csv_table({"channels", "max_kappa_rel_dev",
                                 "max_phase_dev_deg", "matmul_mean_rel"},
                                rows));
  }
  std::cout << "dispersion sweep written to " << out.string() << "\n";
  return 0;
}

int run_sweep_error(const CommonOpts& opts, int trials, int length) {
  json all = json::array();
  std::vector<std::vector<double>> rows;
  for (int bits : {4, 8}) {
    const auto stats = dota::fidelity::error_sweep(
        length, bits, dota::optics::NoiseSpec::defaults(), trials, opts.seed);
    json entry = stats;
    entry["bits"] = bits;
    entry["length"] = length;
    all.push_back(entry);
    rows.push_back({static_cast<double>(bits), static_cast<double>(length),
                    stats.mean_rel, stats.p95_rel, stats.max_rel,
                    static_cast<double>(stats.trials)});
  }
  const auto manifest = make_manifest("sweep error", opts, {});
  const fs::path out(opts.out_dir);
  if (opts.format != "csv")
    dota::report::atomic_write(
        out / "error_sweep.json",
        dota::report::dump(json{{"schema_version", dota::report::kSchemaVersion},
                                {"manifest", manifest},
                                {"sweep", all}}));
  if (opts.format != "json")
    dota::report::atomic_write(
        out / "error_sweep.csv",
        dota::report::csv_table(
            {"bits", "length", "mean_rel", "p95_rel", "max_rel", "trials"},
            rows));
  std::cout << "error sweep written to " << out.string() << "\n";
  return 0;
}

//! Core-size scaling: area/power/latency and throughput of a single tensor
//! core (with its converters, comb, and tile-local memory) as the geometry
//! grows. The global SRAM is excluded, matching a per-core accounting.
int run_sweep_scaling(const CommonOpts& opts, int bits) {
  const auto lib = dota::config::load_devices(opts.devices_file);
  json all = json::array();
  std::vector<std::vector<double>> rows;
  for (int size = 8; size <= 32; size += 4) {
    dota::arch::AcceleratorConfig cfg;
    cfg.name = "core-" + std::to_string(size);
    cfg.n_t = 1;
    cfg.n_c = 1;
    cfg.ptc.n_h = size;
    cfg.ptc.n_v = size;
    cfg.ptc.n_lambda = size;
    cfg.ptc.bits = bits;
    cfg.ptc.clock_hz = 5e9;
    cfg.global_sram_kb = 0;
    const auto area = dota::arch::area_of(cfg, lib);
    const auto power = dota::arch::power_of(cfg, bits, lib);
    const double optics_ns = cfg.optics_latency_s() * 1e9;
    const double eo_oe_ns = cfg.eo_oe_latency() * 1e9;
    const double tops = 2.0 * size * size * size * cfg.ptc.clock_hz / 1e12;
    const double watts = power.total();
    json entry = {{"core_size", size},
                  {"area_mm2", area},
                  {"power_w", power},
                  {"optics_latency_ns", optics_ns},
                  {"eo_oe_latency_ns", eo_oe_ns},
                  {"tops", tops},
                  {"tops_per_mm2", tops / area.total()},
                  {"tops_per_w", tops / watts}};
    all.push_back(entry);
    rows.push_back({static_cast<double>(size), area.total(), watts, optics_ns,
                    eo_oe_ns, tops, tops / area.total(), tops / watts});
  }
  const auto manifest = make_manifest("sweep scaling", opts, {});
  const fs::path out(opts.out_dir);
  if (opts.format != "csv")
    dota::report::atomic_write(
        out / "scaling_sweep.json",
        dota::report::dump(json{{"schema_version", dota::report::kSchemaVersion},
                                {"manifest", manifest},
                                {"sweep", all}}));
  if (opts.format != "json")
    dota::report::atomic_write(
        out / "scaling_sweep.csv",
        dota::report::csv_table({"core_size", "area_mm2", "power_w",
                                 "optics_latency_ns", "eo_oe_latency_ns",
                                 "tops", "tops_per_mm2", "tops_per_w"},
                                rows));
  std::cout << "scaling sweep written to " << out.string() << "\n";
  return 0;
}

int run_validate(const CommonOpts& opts) {
  const auto lib = dota::config::load_devices(opts.devices_file);
  const auto results = dota::validate::run_checks(lib, opts.seed);
  bool all_pass = true;
  for (const auto& r : results) {
    std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << ": " << r.detail
              << "\n";
    all_pass = all_pass && r.pass;
  }
  const auto manifest = make_manifest("validate", opts, {});
  dota::report::atomic_write(
      fs::path(opts.out_dir) / "validate.json",
      dota::report::dump(json{{"schema_version", dota::report::kSchemaVersion},
                              {"manifest", manifest},
                              {"all_pass", all_pass},
                              {"checks", results}}));
  std::cout << (all_pass ? "all checks passed" : "validation FAILED") << "\n";
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Photonic Transformer accelerator simulator"};
  app.require_subcommand(1);

  CommonOpts sim_opts;
  std::string model = "deit-t";
  std::string arch_name = "dota-b";
  int bits = 0;
  auto* sim = app.add_subcommand("simulate",
                                 "Cost simulation of a model on an accelerator");
  sim->add_option("--model", model, "Model preset name or config file");
  sim->add_option("--arch", arch_name, "Accelerator preset name or config file");
  sim->add_option("--bits", bits, "Operand precision override")
      ->check(CLI::IsMember({4, 8}));
  add_common(sim, sim_opts);

  CommonOpts sweep_opts;
  std::string kind = "noise";
  int trials = 200;
  int length = 12;
  int max_channels = 25;
  int sweep_bits = 4;
  auto* sweep = app.add_subcommand("sweep", "Generate sweep data tables");
  sweep->add_option("kind", kind, "Sweep kind")
      ->check(CLI::IsMember({"noise", "dispersion", "error", "scaling"}));
  sweep->add_option("--trials", trials, "Monte-Carlo trials per point");
  sweep->add_option("--length", length, "Dot-product length");
  sweep->add_option("--max-channels", max_channels,
                    "Largest channel count (dispersion sweep)");
  sweep->add_option("--bits", sweep_bits, "Precision (scaling sweep)");
  add_common(sweep, sweep_opts);

  CommonOpts val_opts;
  auto* val = app.add_subcommand("validate", "Run built-in consistency checks");
  add_common(val, val_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (sim->parsed()) return run_simulate(model, arch_name, bits, sim_opts);
    if (sweep->parsed()) {
      if (kind == "noise") return run_sweep_noise(sweep_opts, trials, length);
      if (kind == "dispersion")
        return run_sweep_dispersion(sweep_opts, max_channels);
      if (kind == "error") return run_sweep_error(sweep_opts, trials, length);
      return run_sweep_scaling(sweep_opts, sweep_bits);
    }
    if (val->parsed()) return run_validate(val_opts);
  } catch (const dota::config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
