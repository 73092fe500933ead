// Built-in consistency checks run by the `validate` CLI command: oracle
// equivalences, conservation laws, device-table anchors, and calibrated
// dispersion endpoints.
#pragma once

#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dota/common.hpp"
#include "dota/devices.hpp"
#include "dota/optics.hpp"
#include "dota/tensor_core.hpp"

namespace dota::validate {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

inline void to_json(nlohmann::json& j, const CheckResult& c) {
  j = {{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}};
}

inline std::vector<CheckResult> run_checks(const devices::DeviceLibrary& lib,
                                           std::uint64_t seed) {
  std::vector<CheckResult> results;
  auto add = [&](const std::string& name, bool pass, const std::string& det) {
    results.push_back({name, pass, det});
  };
  std::ostringstream det;

  // Interference dot product against direct summation.
  {
    NormalSampler gen(derive_seed(seed, 1));
    double worst = 0.0;
    for (int t = 0; t < 200; ++t) {
      const int len = 1 + static_cast<int>(gen.uniform(0.0, 112.0));
      std::vector<double> x(static_cast<std::size_t>(len));
      std::vector<double> y(static_cast<std::size_t>(len));
      for (auto& v : x) v = gen.uniform(-1.0, 1.0);
      for (auto& v : y) v = gen.uniform(-1.0, 1.0);
      const double got = optics::ddot_ideal(optics::EncodedVector::raw(x),
                                            optics::EncodedVector::raw(y));
      worst = std::max(worst, std::fabs(got - dot(x, y)) /
                                  std::max(norm2(x) * norm2(y), 1e-300));
    }
    det.str("");
    det << "max relative deviation " << worst;
    add("ddot_matches_direct_dot", worst < 1e-12, det.str());
  }

  // Coupler unitarity: per-channel output intensity equals input intensity.
  {
    NormalSampler gen(derive_seed(seed, 2));
    double worst = 0.0;
    for (int t = 0; t < 200; ++t) {
      const double x = gen.uniform(-1.0, 1.0);
      const double y = gen.uniform(-1.0, 1.0);
      const double z0 = (x + y) * (x + y) / 2.0;
      const double z1 = (x - y) * (x - y) / 2.0;
      worst = std::max(worst, std::fabs(z0 + z1 - (x * x + y * y)));
    }
    det.str("");
    det << "max intensity mismatch " << worst;
    add("coupler_unitarity", worst < 1e-12, det.str());
  }

  // Splitter network power conservation.
  {
    bool ok = true;
    for (int n : {1, 2, 12, 64}) {
      double residual = 0.0;
      const auto taps =
          tensor_core::tap_powers(tensor_core::tap_ratios(n), &residual);
      for (double p : taps)
        ok = ok && std::fabs(p - 1.0 / n) < 1e-12;
      ok = ok && std::fabs(residual) < 1e-12;
    }
    add("splitter_power_conservation", ok, "taps receive 1/N, zero residual");
  }

  // Dispersion endpoints at the calibrated defaults.
  {
    const auto disp = optics::DispersionSpec::defaults();
    double kdev = 0.0, pdev = 0.0;
    for (double l : disp.channel_wavelengths(25)) {
      kdev = std::max(kdev,
                      std::fabs(optics::kappa_of_lambda(l, disp) - 0.5) / 0.5);
      pdev = std::max(pdev, std::fabs(optics::phase_deviation_of_lambda(
                                l, disp)) * 180.0 / M_PI);
    }
    det.str("");
    det << "kappa dev " << kdev * 100 << "%, phase dev " << pdev << " deg";
    add("dispersion_endpoints",
        std::fabs(kdev - 0.018) < 0.003 && std::fabs(pdev - 0.28) < 0.05,
        det.str());
    add("design_point_exact",
        optics::kappa_of_lambda(disp.lambda0, disp) == 0.5 &&
            optics::phase_of_lambda(disp.lambda0, disp) == -M_PI / 2.0,
        "kappa(l0) = 0.5, phase(l0) = -90 deg");
  }

  // Converter anchors from the device table.
  {
    const double dac = devices::dac_power(8, 14e9, lib);
    const double adc = devices::adc_power(8, 10e9, lib);
    det.str("");
    det << "dac(8b,14GS/s) = " << dac << " mW, adc(8b,10GS/s) = " << adc
        << " mW";
    add("converter_anchors", dac == 50.0 && adc == 14.8, det.str());
  }

  // Modulation sharing identity.
  {
    NormalSampler gen(derive_seed(seed, 3));
    bool ok = true;
    for (int t = 0; t < 50; ++t) {
      const int nh = 1 + static_cast<int>(gen.uniform(0.0, 32.0));
      const int nv = 1 + static_cast<int>(gen.uniform(0.0, 32.0));
      const int nl = 1 + static_cast<int>(gen.uniform(0.0, 32.0));
      const double shared =
          tensor_core::modulation_energy_shared(nh, nv, nl, 1.0, 1.0);
      const double unshared =
          tensor_core::modulation_energy_unshared(nh, nv, nl, 1.0, 1.0);
      ok = ok && std::fabs(unshared / shared -
                           tensor_core::sharing_factor(nh, nv)) < 1e-12;
    }
    add("sharing_identity", ok, "unshared/shared == 2*Nh*Nv/(Nh+Nv)");
  }

  // Wavelength bound from the resonator free spectral range.
  {
    const int n = devices::max_wavelengths(
        lib.at("microdisk").fsr_hz.value_or(5.6e12), 1550e-9, 0.4e-9);
    det.str("");
    det << n << " channels at 0.4 nm spacing";
    add("wavelength_bound", n == 112, det.str());
  }

  return results;
}

}  // namespace dota::validate
