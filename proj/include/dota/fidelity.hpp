// Monte-Carlo numerical-fidelity experiments: dot-product error sweeps,
// dispersion sweeps over the wavelength count, noise-intensity sweeps, and a
// small attention-block end-to-end error check.
#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "dota/common.hpp"
#include "dota/optics.hpp"
#include "dota/tensor_core.hpp"

namespace dota::fidelity {

//! Relative error of one dot product against the ||x||*||y|| reference
//! scale, which stays meaningful when the exact product is near zero.
inline double relative_error(double got, double exact, double scale) {
  return std::fabs(got - exact) / std::max(scale, 1e-300);
}

struct ErrorStats {
  double mean_rel = 0.0;
  double p95_rel = 0.0;
  double max_rel = 0.0;
  int trials = 0;
};

inline void to_json(nlohmann::json& j, const ErrorStats& s) {
  j = {{"mean_rel", s.mean_rel},
       {"p95_rel", s.p95_rel},
       {"max_rel", s.max_rel},
       {"trials", s.trials}};
}

//! Dot-product error over random N(0,1) operand pairs pushed through the
//! full quantize/encode/detect path (dispersion off). Deterministic given
//! the seed.
inline ErrorStats error_sweep(int length, int bits,
                              const optics::NoiseSpec& noise, int trials,
                              std::uint64_t seed) {
  std::vector<double> errors;
  errors.reserve(static_cast<std::size_t>(trials));
  const auto disp = optics::DispersionSpec::flat();
  for (int t = 0; t < trials; ++t) {
    NormalSampler gen(derive_seed(seed, 0x5EEDu, static_cast<std::uint64_t>(t)));
    std::vector<double> x(static_cast<std::size_t>(length));
    std::vector<double> y(static_cast<std::size_t>(length));
    for (auto& v : x) v = gen();
    for (auto& v : y) v = gen();
    const double exact = dot(x, y);
    const double got =
        optics::scaled_ddot(x, y, bits, disp, noise,
                            derive_seed(seed, 0xD07u, static_cast<std::uint64_t>(t)));
    errors.push_back(relative_error(got, exact, norm2(x) * norm2(y)));
  }
  ErrorStats s;
  s.mean_rel = mean(errors);
  s.p95_rel = percentile(errors, 95.0);
  s.max_rel = *std::max_element(errors.begin(), errors.end());
  s.trials = trials;
  return s;
}

// ---------------------------------------------------------------------------
// Dispersion sweep
// ---------------------------------------------------------------------------

struct DispersionPoint {
  int channels = 0;
  double max_kappa_rel_dev = 0.0;
  double max_phase_dev_deg = 0.0;
  double matmul_mean_rel = 0.0;
};

inline void to_json(nlohmann::json& j, const DispersionPoint& p) {
  j = {{"channels", p.channels},
       {"max_kappa_rel_dev", p.max_kappa_rel_dev},
       {"max_phase_dev_deg", p.max_phase_dev_deg},
       {"matmul_mean_rel", p.matmul_mean_rel}};
}

//! Worst-channel kappa and phase deviations plus the mean 12 x N x 12 matmul
//! relative error (noise off) for N = 1..max_channels. Matmul operands are
//! drawn once per trial at the largest channel count and truncated, so the
//! error growth across N comes from the dispersion alone.
inline std::vector<DispersionPoint> dispersion_sweep(
    int max_channels, const optics::DispersionSpec& disp, int step = 1,
    int trials = 8, std::uint64_t seed = 1) {
  std::vector<DispersionPoint> out;
  const auto noise = optics::NoiseSpec::none();
  for (int n = 1; n <= max_channels; n += step) {
    DispersionPoint p;
    p.channels = n;
    for (double lambda : disp.channel_wavelengths(static_cast<std::size_t>(n))) {
      const double kdev =
          std::fabs(optics::kappa_of_lambda(lambda, disp) - 0.5) / 0.5;
      const double pdev =
          std::fabs(optics::phase_deviation_of_lambda(lambda, disp)) * 180.0 /
          M_PI;
      p.max_kappa_rel_dev = std::max(p.max_kappa_rel_dev, kdev);
      p.max_phase_dev_deg = std::max(p.max_phase_dev_deg, pdev);
    }
    std::vector<double> errs;
    for (int t = 0; t < trials; ++t) {
      NormalSampler gen(derive_seed(seed, 0xD15Fu, static_cast<std::uint64_t>(t)));
      const Matrix a = random_matrix(12, static_cast<std::size_t>(max_channels), gen);
      const Matrix b = random_matrix(static_cast<std::size_t>(max_channels), 12, gen);
      Matrix at(12, static_cast<std::size_t>(n));
      Matrix bt(static_cast<std::size_t>(n), 12);
      for (std::size_t i = 0; i < 12; ++i)
        for (std::size_t k = 0; k < static_cast<std::size_t>(n); ++k)
          at.at(i, k) = a.at(i, k);
      for (std::size_t k = 0; k < static_cast<std::size_t>(n); ++k)
        for (std::size_t j = 0; j < 12; ++j) bt.at(k, j) = b.at(k, j);
      const Matrix got = tensor_core::dptc_matmul(
          at, bt, 8, disp, noise, derive_seed(seed, 0x3A7u, static_cast<std::uint64_t>(t)));
      const Matrix exact = matmul(at, bt);
      double scale = 0.0;
      for (double v : exact.data) scale = std::max(scale, std::fabs(v));
      double err = 0.0;
      for (std::size_t i = 0; i < got.data.size(); ++i)
        err += std::fabs(got.data[i] - exact.data[i]);
      errs.push_back(err / static_cast<double>(got.data.size()) /
                     std::max(scale, 1e-300));
    }
    p.matmul_mean_rel = mean(errs);
    out.push_back(p);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Noise-intensity sweep
// ---------------------------------------------------------------------------

enum class NoiseKind { phase, magnitude, output };

inline const char* to_string(NoiseKind k) {
  switch (k) {
    case NoiseKind::phase: return "phase";
    case NoiseKind::magnitude: return "magnitude";
    default: return "output";
  }
}

struct NoisePoint {
  double sigma = 0.0;
  double mean_rel = 0.0;
  double std_rel = 0.0;
  int trials = 0;
};

inline void to_json(nlohmann::json& j, const NoisePoint& p) {
  j = {{"sigma", p.sigma},
       {"mean_rel", p.mean_rel},
       {"std_rel", p.std_rel},
       {"trials", p.trials}};
}

//! Mean and std of the dot-product error versus one noise intensity, with
//! the other noise sources off. Errors are measured against the noise-free
//! optical output of the same encoded operands, so quantization cancels and
//! the curve isolates the swept noise term. Common random numbers are used
//! across the sigma grid.
inline std::vector<NoisePoint> noise_sweep(const std::vector<double>& sigma_grid,
                                           NoiseKind kind, int length,
                                           int trials, std::uint64_t seed) {
  std::vector<NoisePoint> out;
  out.reserve(sigma_grid.size());
  for (double sigma : sigma_grid) {
    optics::NoiseSpec noise;
    switch (kind) {
      case NoiseKind::phase: noise.sigma_phi = sigma; break;
      case NoiseKind::magnitude: noise.sigma_v = sigma; break;
      case NoiseKind::output: noise.sigma_out = sigma; break;
    }
    std::vector<double> errs;
    errs.reserve(static_cast<std::size_t>(trials));
    for (int t = 0; t < trials; ++t) {
      NormalSampler gen(derive_seed(seed, 0x0Au, static_cast<std::uint64_t>(t)));
      std::vector<double> x(static_cast<std::size_t>(length));
      std::vector<double> y(static_cast<std::size_t>(length));
      for (auto& v : x) v = gen.uniform(-1.0, 1.0);
      for (auto& v : y) v = gen.uniform(-1.0, 1.0);
      const auto ex = optics::EncodedVector::raw(x);
      const auto ey = optics::EncodedVector::raw(y);
      const double clean = optics::ddot_ideal(ex, ey);
      const double noisy = optics::ddot_noisy(
          ex, ey, noise, derive_seed(seed, 0x0Bu, static_cast<std::uint64_t>(t)));
      errs.push_back(relative_error(noisy, clean, norm2(x) * norm2(y)));
    }
    NoisePoint p;
    p.sigma = sigma;
    p.mean_rel = mean(errs);
    p.std_rel = stddev(errs);
    p.trials = trials;
    out.push_back(p);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Attention block
// ---------------------------------------------------------------------------

//! End-to-end error of one attention block computed on the photonic path:
//! QK^T and (softmax)V run as tiled crossbar matmuls, while the 1/sqrt(d_k)
//! scaling and softmax run in exact digital arithmetic. Returns the max
//! absolute output deviation over the max absolute exact output.
inline double attention_block_fidelity(int d_k, int seq, int bits,
                                       const optics::NoiseSpec& noise,
                                       const optics::DispersionSpec& disp,
                                       std::uint64_t seed) {
  NormalSampler gen(derive_seed(seed, 0xA77u));
  const auto sq = static_cast<std::size_t>(seq);
  const auto sd = static_cast<std::size_t>(d_k);
  const Matrix q = random_matrix(sq, sd, gen);
  const Matrix k = random_matrix(sq, sd, gen);
  const Matrix v = random_matrix(sq, sd, gen);

  tensor_core::PTCConfig ptc;
  ptc.bits = bits;

  auto softmax_rows = [](Matrix m) {
    for (std::size_t r = 0; r < m.rows; ++r) {
      double mx = -std::numeric_limits<double>::infinity();
      for (std::size_t c = 0; c < m.cols; ++c) mx = std::max(mx, m.at(r, c));
      double sum = 0.0;
      for (std::size_t c = 0; c < m.cols; ++c) {
        m.at(r, c) = std::exp(m.at(r, c) - mx);
        sum += m.at(r, c);
      }
      for (std::size_t c = 0; c < m.cols; ++c) m.at(r, c) /= sum;
    }
    return m;
  };
  const double inv_sqrt_dk = 1.0 / std::sqrt(static_cast<double>(d_k));
  auto scaled = [&](Matrix m) {
    for (auto& x : m.data) x *= inv_sqrt_dk;
    return m;
  };

  // Photonic path.
  const Matrix kt = k.transposed();
  Matrix scores = tensor_core::tiled_matmul(q, kt, ptc, disp, noise,
                                            derive_seed(seed, 1));
  const Matrix probs = softmax_rows(scaled(std::move(scores)));
  const Matrix got = tensor_core::tiled_matmul(probs, v, ptc, disp, noise,
                                               derive_seed(seed, 2));

  // Exact reference.
  const Matrix exact_probs = softmax_rows(scaled(matmul(q, kt)));
  const Matrix exact = matmul(exact_probs, v);

  double scale = 0.0, dev = 0.0;
  for (std::size_t i = 0; i < exact.data.size(); ++i) {
    scale = std::max(scale, std::fabs(exact.data[i]));
    dev = std::max(dev, std::fabs(got.data[i] - exact.data[i]));
  }
  return dev / std::max(scale, 1e-300);
}

}  // namespace dota::fidelity
