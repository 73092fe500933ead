// Test-only reference implementations, kept independent of the library code
// paths they check.
#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "dota/common.hpp"
#include "dota/optics.hpp"
#include "dota/workloads.hpp"

namespace oracles {

//! Dispersive DDot output evaluated directly from the closed-form
//! photocurrent expression, term by term:
//!   sum_i [ ((1-2k^2) x^2 + (2k^2-1) y^2) / 2 + 2 t k x y sin(-phi) ]
//! with t = sqrt(1-kappa), k = sqrt(kappa), phi = dev - pi/2 (so
//! sin(-phi) = cos(dev)).
inline double dispersive_closed_form(const std::vector<double>& x,
                                     const std::vector<double>& y,
                                     const dota::optics::DispersionSpec& disp) {
  const auto lambdas = disp.channel_wavelengths(x.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double kappa = dota::optics::kappa_of_lambda(lambdas[i], disp);
    const double t = std::sqrt(1.0 - kappa);
    const double k = std::sqrt(kappa);
    const double dev = dota::optics::phase_deviation_of_lambda(lambdas[i], disp);
    const double additive =
        ((1.0 - 2.0 * kappa) * x[i] * x[i] + (2.0 * kappa - 1.0) * y[i] * y[i]) /
        2.0;
    sum += additive + 2.0 * t * k * x[i] * y[i] * std::cos(dev);
  }
  return sum;
}

//! Quantize one value exactly the way the encoder specifies, in plain
//! arithmetic: alpha = max|v|/2^(b-1), level = clamp(round(v/alpha)).
inline double quantize_value(double v, double max_abs, int bits) {
  const double half = std::ldexp(1.0, bits - 1);
  const double alpha = (max_abs == 0.0 ? 1.0 : max_abs) / half;
  double level = std::round(v / alpha);
  if (level > half - 1.0) level = half - 1.0;
  if (level < -half) level = -half;
  return level * alpha;
}

//! Cycle count obtained by walking the tiling loops one step at a time
//! instead of using the closed-form ceiling product.
inline std::int64_t event_driven_cycles(std::int64_t m, std::int64_t k,
                                        std::int64_t n, std::int64_t n_h,
                                        std::int64_t n_v, std::int64_t n_l,
                                        std::int64_t n_t, std::int64_t n_c) {
  std::int64_t cycles = 0;
  // Row blocks of height n_h round-robin over n_t tiles; all tiles advance
  // in lockstep, so a batch of up to n_t blocks costs one pass.
  for (std::int64_t m0 = 0; m0 < m; m0 += n_h * n_t)
    for (std::int64_t n0 = 0; n0 < n; n0 += n_v)
      for (std::int64_t k0 = 0; k0 < k; k0 += n_l * n_c) ++cycles;
  return cycles;
}

//! Layer-by-layer multiply-accumulate count of one encoder stack, written
//! out shape by shape.
inline std::int64_t transformer_macs(int layers, int d, int heads, int ffn,
                                     int seq) {
  const std::int64_t s = seq, dd = d, f = ffn, h = heads;
  const std::int64_t dk = dd / h;
  std::int64_t per_layer = 0;
  per_layer += 3 * s * dd * dd;      // Q, K, V projections
  per_layer += h * (s * dk * s);     // QK^T per head
  per_layer += h * (s * s * dk);     // attention-weighted V per head
  per_layer += s * dd * dd;          // output projection
  per_layer += s * dd * f + s * f * dd;  // FFN pair
  return per_layer * layers;
}

//! Exact attention output in double precision.
inline dota::Matrix exact_attention(const dota::Matrix& q,
                                    const dota::Matrix& k,
                                    const dota::Matrix& v) {
  dota::Matrix scores = dota::matmul(q, k.transposed());
  const double inv = 1.0 / std::sqrt(static_cast<double>(q.cols));
  for (auto& x : scores.data) x *= inv;
  for (std::size_t r = 0; r < scores.rows; ++r) {
    double mx = scores.at(r, 0);
    for (std::size_t c = 1; c < scores.cols; ++c)
      mx = std::max(mx, scores.at(r, c));
    double sum = 0.0;
    for (std::size_t c = 0; c < scores.cols; ++c) {
      scores.at(r, c) = std::exp(scores.at(r, c) - mx);
      sum += scores.at(r, c);
    }
    for (std::size_t c = 0; c < scores.cols; ++c) scores.at(r, c) /= sum;
  }
  return dota::matmul(scores, v);
}

}  // namespace oracles
