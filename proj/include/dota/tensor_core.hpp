// DPTC crossbar: a one-shot [N_h, N_lambda] x [N_lambda, N_v] matrix multiply
// built from DDot engines fed by broadcast bus waveguides, plus the splitter
// network power bookkeeping and modulation-energy accounting.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "dota/common.hpp"
#include "dota/optics.hpp"

namespace dota::tensor_core {

//! Tensor-core geometry. The photonic clock is 5 GHz by default, a
//! conservative setting; shipped accelerator presets may run faster.
struct PTCConfig {
  int n_h = 12;
  int n_v = 12;
  int n_lambda = 12;
  double clock_hz = 5e9;
  int bits = 4;

  void validate(const optics::DispersionSpec& disp) const {
    if (n_h < 1 || n_v < 1 || n_lambda < 1)
      throw config_error("PTCConfig: dimensions must be >= 1");
    if (clock_hz <= 0) throw config_error("PTCConfig: clock must be > 0");
    if (n_lambda > disp.max_channels())
      throw config_error(
          "PTCConfig: n_lambda exceeds the dispersion validity window");
  }
};

inline void to_json(nlohmann::json& j, const PTCConfig& p) {
  j = {{"n_h", p.n_h},
       {"n_v", p.n_v},
       {"n_lambda", p.n_lambda},
       {"clock_hz", p.clock_hz},
       {"bits", p.bits}};
}

inline void from_json(const nlohmann::json& j, PTCConfig& p) {
  p.n_h = j.at("n_h").get<int>();
  p.n_v = j.at("n_v").get<int>();
  p.n_lambda = j.at("n_lambda").get<int>();
  p.clock_hz = j.value("clock_hz", 5e9);
  p.bits = j.value("bits", 4);
}

// ---------------------------------------------------------------------------
// Splitter network
// ---------------------------------------------------------------------------

//! Coupling ratios of the tap couplers along the two bus directions. The
//! j-th coupler on a waveguide feeding n taps uses ratio 1/(n - j) with
//! 0-based j, so the last coupler takes all remaining light (ratio 1) and
//! every tap receives an equal 1/n share. The per-position sequence is the
//! same on every parallel waveguide.
struct SplitterNetwork {
  std::vector<double> ratios_v;  // couplers serving n_v taps per waveguide
  std::vector<double> ratios_h;  // couplers serving n_h taps per waveguide

  double ratio_v(int i, int j) const {
    (void)i;
    return ratios_v.at(static_cast<std::size_t>(j));
  }
  double ratio_h(int i, int j) const {
    (void)j;
    return ratios_h.at(static_cast<std::size_t>(i));
  }
};

inline std::vector<double> tap_ratios(int taps) {
  std::vector<double> r(static_cast<std::size_t>(taps));
  for (int j = 0; j < taps; ++j)
    r[static_cast<std::size_t>(j)] = 1.0 / static_cast<double>(taps - j);
  return r;
}

inline SplitterNetwork split_ratios(int n_v, int n_h) {
  if (n_v < 1 || n_h < 1)
    throw std::invalid_argument("split_ratios: tap counts must be >= 1");
  return {tap_ratios(n_v), tap_ratios(n_h)};
}

//! Sequentially extract power along one waveguide. Returns the per-tap
//! delivered fractions; `residual` is what is left past the last coupler.
inline std::vector<double> tap_powers(const std::vector<double>& ratios,
                                      double* residual = nullptr) {
  double remaining = 1.0;
  std::vector<double> taps(ratios.size());
  for (std::size_t j = 0; j < ratios.size(); ++j) {
    taps[j] = remaining * ratios[j];
    remaining -= taps[j];
  }
  if (residual) *residual = remaining;
  return taps;
}

// ---------------------------------------------------------------------------
// One-shot matrix multiply
// ---------------------------------------------------------------------------

//! Matrix product computed by the crossbar in one photonic cycle. Entry
//! (i, j) is the scaled DDot of row i of A and column j of B with an
//! independent noise stream derived from (seed, i, j), so results do not
//! depend on evaluation order. Inter-DDot phase differences are assumed
//! pre-calibrated during modulation.
inline Matrix dptc_matmul(const Matrix& a, const Matrix& b, int bits,
                          const optics::DispersionSpec& disp,
                          const optics::NoiseSpec& noise,
                          std::uint64_t rng_seed, bool compensate = false) {
  if (a.cols != b.rows)
    throw std::invalid_argument("dptc_matmul: shape mismatch");
  if (!all_finite(a.data) || !all_finite(b.data))
    throw std::invalid_argument("dptc_matmul: non-finite entries");
  Matrix out(a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i) {
    const auto row = a.row(i);
    for (std::size_t j = 0; j < b.cols; ++j) {
      out.at(i, j) = optics::scaled_ddot(row, b.col(j), bits, disp, noise,
                                         derive_seed(rng_seed, i, j),
                                         compensate);
    }
  }
  return out;
}

//! Arbitrary-shape GEMM mapped onto PTC-sized tiles with zero padding;
//! partial results over the K dimension accumulate digitally in exact
//! arithmetic. Tile (ti, tj, tk) gets its own noise substream.
inline Matrix tiled_matmul(const Matrix& a, const Matrix& b,
                           const PTCConfig& ptc,
                           const optics::DispersionSpec& disp,
                           const optics::NoiseSpec& noise,
                           std::uint64_t rng_seed, bool compensate = false) {
  if (a.cols != b.rows)
    throw std::invalid_argument("tiled_matmul: shape mismatch");
  const auto th = static_cast<std::size_t>(ptc.n_h);
  const auto tv = static_cast<std::size_t>(ptc.n_v);
  const auto tl = static_cast<std::size_t>(ptc.n_lambda);
  Matrix out(a.rows, b.cols);
  std::uint64_t tile_index = 0;
  for (std::size_t i0 = 0; i0 < a.rows; i0 += th) {
    for (std::size_t j0 = 0; j0 < b.cols; j0 += tv) {
      for (std::size_t k0 = 0; k0 < a.cols; k0 += tl, ++tile_index) {
        Matrix at(th, tl);
        Matrix bt(tl, tv);
        for (std::size_t i = 0; i < th && i0 + i < a.rows; ++i)
          for (std::size_t k = 0; k < tl && k0 + k < a.cols; ++k)
            at.at(i, k) = a.at(i0 + i, k0 + k);
        for (std::size_t k = 0; k < tl && k0 + k < a.cols; ++k)
          for (std::size_t j = 0; j < tv && j0 + j < b.cols; ++j)
            bt.at(k, j) = b.at(k0 + k, j0 + j);
        const Matrix part =
            dptc_matmul(at, bt, ptc.bits, disp, noise,
                        derive_seed(rng_seed, 0x7453u, tile_index), compensate);
        for (std::size_t i = 0; i < th && i0 + i < a.rows; ++i)
          for (std::size_t j = 0; j < tv && j0 + j < b.cols; ++j)
            out.at(i0 + i, j0 + j) += part.at(i, j);
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Modulation energy accounting
// ---------------------------------------------------------------------------

//! Modulation energy of one crossbar MM with operand broadcast: every bus
//! waveguide is encoded once and shared by all DDot units along it.
inline double modulation_energy_shared(int n_h, int n_v, int n_lambda,
                                       double e_dac, double e_mzm) {
  return static_cast<double>(n_h * n_lambda + n_lambda * n_v) *
         (e_dac + e_mzm);
}

//! Modulation energy if each dot product were mapped to an isolated DDot
//! with private modulators (2*n_lambda encodes per dot product).
inline double modulation_energy_unshared(int n_h, int n_v, int n_lambda,
                                         double e_dac, double e_mzm) {
  return static_cast<double>(n_h) * n_v * (2.0 * n_lambda) * (e_dac + e_mzm);
}

//! Ratio of unshared to shared modulation energy: 2*N_h*N_v / (N_h + N_v).
inline double sharing_factor(int n_h, int n_v) {
  return 2.0 * n_h * n_v / static_cast<double>(n_h + n_v);
}

}  // namespace dota::tensor_core
