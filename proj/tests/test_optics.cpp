#include <doctest.h>

#include <cmath>
#include <vector>

#include "dota/common.hpp"
#include "dota/optics.hpp"
#include "oracles.hpp"

using namespace dota;
using namespace dota::optics;

namespace {

std::vector<double> random_vec(std::size_t n, NormalSampler& gen, double lo,
                               double hi) {
  std::vector<double> v(n);
  for (auto& x : v) x = gen.uniform(lo, hi);
  return v;
}

}  // namespace

// ---------------------------------------------------------------------------
// Quantization
// ---------------------------------------------------------------------------

TEST_CASE("quantize_encode: zero vector uses the degenerate-scale rule") {
  const auto e = quantize_encode({0.0, 0.0, 0.0}, 4);
  CHECK(e.scale_beta == 1.0);
  for (double a : e.amplitudes) CHECK(a == 0.0);
}

TEST_CASE("quantize_encode: on-grid integers map to exact levels") {
  std::vector<double> values;
  for (int k = -8; k <= 7; ++k) values.push_back(static_cast<double>(k));
  const auto e = quantize_encode(values, 4);
  CHECK(e.scale_beta == 8.0);  // alpha = 1
  for (std::size_t i = 0; i < values.size(); ++i) {
    CHECK(e.amplitudes[i] == values[i] / 8.0);
    CHECK(dequantize(e.amplitudes[i], e.scale_beta) == values[i]);
  }
}

TEST_CASE("quantize_encode: round-trip error within half a step") {
  // A negative max-abs element is representable exactly, so every element
  // reconstructs within alpha/2.
  NormalSampler gen(42);
  for (int trial = 0; trial < 20; ++trial) {
    auto values = random_vec(64, gen, -3.0, 3.0);
    std::size_t arg = 0;
    for (std::size_t i = 0; i < values.size(); ++i)
      if (std::fabs(values[i]) > std::fabs(values[arg])) arg = i;
    values[arg] = -std::fabs(values[arg]);

    const int bits = 8;
    const auto e = quantize_encode(values, bits);
    const double alpha = e.scale_beta / std::ldexp(1.0, bits - 1);
    for (std::size_t i = 0; i < values.size(); ++i) {
      const double rec = dequantize(e.amplitudes[i], e.scale_beta);
      CHECK(std::fabs(rec - values[i]) <= alpha / 2.0 + 1e-15);
      // Matches the plain-arithmetic reference encoder.
      const double max_abs = std::fabs(values[arg]);
      CHECK(rec == doctest::Approx(oracles::quantize_value(values[i], max_abs,
                                                           bits))
                       .epsilon(1e-14));
    }
  }
}

TEST_CASE("quantize_encode: one-step bound holds even at the positive clamp") {
  // +max is clamped to the largest positive level; error is one full step.
  const std::vector<double> values = {1.0, 0.25, -0.5};
  const auto e = quantize_encode(values, 4);
  const double alpha = e.scale_beta / 8.0;
  for (std::size_t i = 0; i < values.size(); ++i)
    CHECK(std::fabs(dequantize(e.amplitudes[i], e.scale_beta) - values[i]) <=
          alpha + 1e-15);
  CHECK(e.amplitudes[0] == 7.0 / 8.0);
}

TEST_CASE("quantize_encode: rejects bad input") {
  CHECK_THROWS_AS(quantize_encode({}, 4), std::invalid_argument);
  CHECK_THROWS_AS(quantize_encode({1.0}, 1), std::invalid_argument);
  CHECK_THROWS_AS(quantize_encode({1.0}, 9), std::invalid_argument);
  CHECK_THROWS_AS(quantize_encode({std::nan("")}, 4), std::invalid_argument);
  CHECK_THROWS_AS(quantize_encode({INFINITY}, 4), std::invalid_argument);
}

// ---------------------------------------------------------------------------
// Ideal DDot
// ---------------------------------------------------------------------------

TEST_CASE("ddot_ideal: single-channel identities") {
  std::vector<double> x(8, 0.0), y(8, 0.0);
  x[0] = 1.0;
  y[0] = 1.0;
  CHECK(ddot_ideal(EncodedVector::raw(x), EncodedVector::raw(y)) == 1.0);

  const double a = 0.625;
  CHECK(ddot_ideal(EncodedVector::raw({a}), EncodedVector::raw({-a})) ==
        -a * a);
}

TEST_CASE("ddot_ideal: matches direct dot product for lengths 1..112") {
  NormalSampler gen(7);
  for (int len = 1; len <= 112; ++len) {
    const auto x = random_vec(static_cast<std::size_t>(len), gen, -1.0, 1.0);
    const auto y = random_vec(static_cast<std::size_t>(len), gen, -1.0, 1.0);
    const double got =
        ddot_ideal(EncodedVector::raw(x), EncodedVector::raw(y));
    const double scale = std::max(norm2(x) * norm2(y), 1e-30);
    CHECK(std::fabs(got - dot(x, y)) / scale < 1e-12);
  }
}

TEST_CASE("ddot_ideal: balanced-detection symmetry") {
  NormalSampler gen(11);
  for (int t = 0; t < 50; ++t) {
    const auto x = random_vec(12, gen, -1.0, 1.0);
    auto y = random_vec(12, gen, -1.0, 1.0);
    const double fwd =
        ddot_ideal(EncodedVector::raw(x), EncodedVector::raw(y));
    CHECK(ddot_ideal(EncodedVector::raw(y), EncodedVector::raw(x)) == fwd);
    for (auto& v : y) v = -v;
    CHECK(ddot_ideal(EncodedVector::raw(x), EncodedVector::raw(y)) == -fwd);
  }
}

TEST_CASE("ddot_ideal: coupler transfer is unitary per channel") {
  NormalSampler gen(13);
  for (int t = 0; t < 500; ++t) {
    const double x = gen.uniform(-1.0, 1.0);
    const double y = gen.uniform(-1.0, 1.0);
    const double i0 = (x + y) * (x + y) / 2.0;
    const double i1 = (x - y) * (x - y) / 2.0;
    CHECK(std::fabs(i0 + i1 - (x * x + y * y)) < 1e-12);
  }
}

TEST_CASE("ddot: length mismatch is rejected") {
  CHECK_THROWS_AS(ddot_ideal(EncodedVector::raw({1.0, 0.0}),
                             EncodedVector::raw({1.0})),
                  std::invalid_argument);
}

// ---------------------------------------------------------------------------
// Noisy DDot
// ---------------------------------------------------------------------------

TEST_CASE("ddot_noisy: zero noise is bit-identical to ddot_ideal") {
  NormalSampler gen(17);
  for (int t = 0; t < 50; ++t) {
    const auto x = random_vec(12, gen, -1.0, 1.0);
    const auto y = random_vec(12, gen, -1.0, 1.0);
    const auto ex = EncodedVector::raw(x);
    const auto ey = EncodedVector::raw(y);
    CHECK(ddot_noisy(ex, ey, NoiseSpec::none(), t) == ddot_ideal(ex, ey));
  }
}

TEST_CASE("ddot_noisy: deterministic given the seed") {
  NormalSampler gen(19);
  const auto x = random_vec(12, gen, -1.0, 1.0);
  const auto y = random_vec(12, gen, -1.0, 1.0);
  const auto ex = EncodedVector::raw(x);
  const auto ey = EncodedVector::raw(y);
  const auto noise = NoiseSpec::defaults();
  CHECK(ddot_noisy(ex, ey, noise, 123) == ddot_noisy(ex, ey, noise, 123));
  CHECK(ddot_noisy(ex, ey, noise, 123) != ddot_noisy(ex, ey, noise, 124));
}

TEST_CASE("ddot_noisy: Monte-Carlo mean matches the Gaussian phase moment") {
  // E[sin(-phi)] = E[cos(dphi)] = exp(-sigma_phi^2 / 2).
  NormalSampler gen(23);
  const auto x = random_vec(12, gen, -1.0, 1.0);
  const auto y = random_vec(12, gen, -1.0, 1.0);
  const auto ex = EncodedVector::raw(x);
  const auto ey = EncodedVector::raw(y);
  NoiseSpec noise;
  noise.sigma_phi = 0.3;
  noise.sigma_v = 0.05;
  noise.sigma_out = 0.05;

  const int trials = 10000;
  std::vector<double> draws(trials);
  for (int t = 0; t < trials; ++t)
    draws[static_cast<std::size_t>(t)] =
        ddot_noisy(ex, ey, noise, derive_seed(99, static_cast<std::uint64_t>(t)));
  const double m = mean(draws);
  const double se = stddev(draws) / std::sqrt(static_cast<double>(trials));
  const double target =
      dot(x, y) * std::exp(-noise.sigma_phi * noise.sigma_phi / 2.0);
  CHECK(std::fabs(m - target) <= 3.0 * se);
}

TEST_CASE("ddot_noisy: error scales quadratically in sigma_phi") {
  // At the -pi/2 design point d(sin -phi)/dphi = 0, so the phase-noise error
  // is O(sigma^2): the log-log slope over [1e-3, 1e-1] is 2.
  NormalSampler gen(29);
  const auto x = random_vec(12, gen, -1.0, 1.0);
  const auto y = random_vec(12, gen, -1.0, 1.0);
  const auto ex = EncodedVector::raw(x);
  const auto ey = EncodedVector::raw(y);
  const double clean = ddot_ideal(ex, ey);

  std::vector<double> log_sigma, log_err;
  for (double sigma : {1e-3, 3e-3, 1e-2, 3e-2, 1e-1}) {
    NoiseSpec noise;
    noise.sigma_phi = sigma;
    std::vector<double> errs;
    for (int t = 0; t < 400; ++t)
      errs.push_back(std::fabs(
          ddot_noisy(ex, ey, noise, derive_seed(5, static_cast<std::uint64_t>(t))) -
          clean));
    log_sigma.push_back(std::log(sigma));
    log_err.push_back(std::log(mean(errs)));
  }
  const auto fit = linear_fit(log_sigma, log_err);
  CHECK(fit.slope == doctest::Approx(2.0).epsilon(0.15));
}

// ---------------------------------------------------------------------------
// Dispersion model
// ---------------------------------------------------------------------------

TEST_CASE("kappa_of_lambda: exact half at the design wavelength") {
  const auto disp = DispersionSpec::defaults();
  CHECK(kappa_of_lambda(disp.lambda0, disp) == 0.5);
}

TEST_CASE("kappa_of_lambda: calibrated 25-channel endpoint deviation") {
  const auto disp = DispersionSpec::defaults();
  double worst = 0.0;
  for (double l : disp.channel_wavelengths(25))
    worst = std::max(worst, std::fabs(kappa_of_lambda(l, disp) - 0.5) / 0.5);
  CHECK(worst == doctest::Approx(0.018).epsilon(1e-9));
}

TEST_CASE("kappa_of_lambda: deviation grows monotonically away from center") {
  const auto disp = DispersionSpec::defaults();
  double prev = 0.0;
  for (int i = 1; i <= 12; ++i) {
    const double dev = std::fabs(
        kappa_of_lambda(disp.lambda0 + i * disp.channel_spacing, disp) - 0.5);
    CHECK(dev > prev);
    prev = dev;
  }
  CHECK_THROWS_AS(kappa_of_lambda(disp.lambda0 + 16e-9, disp),
                  std::invalid_argument);
}

TEST_CASE("phase_of_lambda: design point and furthest-channel deviation") {
  const auto disp = DispersionSpec::defaults();
  CHECK(phase_of_lambda(disp.lambda0, disp) == -M_PI / 2.0);
  double worst = 0.0;
  for (double l : disp.channel_wavelengths(25))
    worst = std::max(worst,
                     std::fabs(phase_deviation_of_lambda(l, disp)) * 180.0 /
                         M_PI);
  CHECK(worst == doctest::Approx(0.28).epsilon(0.02));
  CHECK_THROWS_AS(phase_of_lambda(disp.lambda0 - 15.5e-9, disp),
                  std::invalid_argument);
}

TEST_CASE("phase_of_lambda: phi(lambda) * lambda is constant (1/lambda law)") {
  const auto disp = DispersionSpec::defaults();
  const double ref = phase_of_lambda(disp.lambda0, disp) * disp.lambda0;
  for (double l : disp.channel_wavelengths(25))
    CHECK(phase_of_lambda(l, disp) * l == doctest::Approx(ref).epsilon(1e-12));
}

TEST_CASE("dispersion design points have vanishing first-order sensitivity") {
  // 2k*sqrt(1-k^2) is flat at k = 1/sqrt(2): the deviation from 1 scales
  // quadratically in (kappa - 1/2).
  std::vector<double> log_d, log_f;
  for (double d : {1e-4, 3e-4, 1e-3, 3e-3, 1e-2}) {
    const double kappa = 0.5 + d;
    const double f = 2.0 * std::sqrt(kappa) * std::sqrt(1.0 - kappa);
    log_d.push_back(std::log(d));
    log_f.push_back(std::log(1.0 - f));
  }
  CHECK(linear_fit(log_d, log_f).slope == doctest::Approx(2.0).epsilon(0.01));
}

// ---------------------------------------------------------------------------
// Dispersive DDot
// ---------------------------------------------------------------------------

TEST_CASE("ddot_dispersive: flat spec reduces to the ideal engine") {
  const auto disp = DispersionSpec::flat();
  NormalSampler gen(31);
  for (int t = 0; t < 30; ++t) {
    const auto x = random_vec(24, gen, -1.0, 1.0);
    const auto y = random_vec(24, gen, -1.0, 1.0);
    const auto ex = EncodedVector::raw(x);
    const auto ey = EncodedVector::raw(y);
    const double ideal = ddot_ideal(ex, ey);
    const double got = ddot_dispersive(ex, ey, disp, NoiseSpec::none(), 0);
    CHECK(got == doctest::Approx(ideal).epsilon(1e-13));
  }
}

TEST_CASE("ddot_dispersive: single channel at the center wavelength") {
  const auto disp = DispersionSpec::defaults();
  const double a = 0.8125, b = -0.375;
  const double got = ddot_dispersive(EncodedVector::raw({a}),
                                     EncodedVector::raw({b}), disp,
                                     NoiseSpec::none(), 0);
  CHECK(got == doctest::Approx(a * b).epsilon(1e-14));
}

TEST_CASE("ddot_dispersive: matches the closed-form evaluation") {
  const auto disp = DispersionSpec::defaults();
  NormalSampler gen(37);
  for (int t = 0; t < 30; ++t) {
    const auto x = random_vec(24, gen, -1.0, 1.0);
    const auto y = random_vec(24, gen, -1.0, 1.0);
    const double got =
        ddot_dispersive(EncodedVector::raw(x), EncodedVector::raw(y), disp,
                        NoiseSpec::none(), 0);
    const double want = oracles::dispersive_closed_form(x, y, disp);
    CHECK(std::fabs(got - want) /
              std::max(norm2(x) * norm2(y), 1e-30) < 1e-12);
  }
}

TEST_CASE("ddot_dispersive: channel count beyond the window is rejected") {
  const auto disp = DispersionSpec::defaults();
  std::vector<double> big(static_cast<std::size_t>(disp.max_channels()) + 1,
                          0.1);
  CHECK_THROWS_AS(ddot_dispersive(EncodedVector::raw(big),
                                  EncodedVector::raw(big), disp,
                                  NoiseSpec::none(), 0),
                  std::invalid_argument);
}

// ---------------------------------------------------------------------------
// Scaled path
// ---------------------------------------------------------------------------

TEST_CASE("scaled_ddot: no dispersion/noise equals the quantized dot product") {
  NormalSampler gen(41);
  for (int t = 0; t < 30; ++t) {
    const auto x = random_vec(12, gen, -2.0, 2.0);
    const auto y = random_vec(12, gen, -2.0, 2.0);
    const double got = scaled_ddot(x, y, 6, DispersionSpec::flat(),
                                   NoiseSpec::none(), 0);
    const auto ex = quantize_encode(x, 6);
    const auto ey = quantize_encode(y, 6);
    double want = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
      want += dequantize(ex.amplitudes[i], ex.scale_beta) *
              dequantize(ey.amplitudes[i], ey.scale_beta);
    CHECK(got == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("scaled_ddot: compensation cancels the additive dispersion error") {
  const auto disp = DispersionSpec::defaults();
  NormalSampler gen(43);
  int improved = 0;
  const int trials = 1000;
  for (int t = 0; t < trials; ++t) {
    const auto x = random_vec(24, gen, -2.0, 2.0);
    const auto y = random_vec(24, gen, -2.0, 2.0);
    // Compare against the dot product of the quantized operands so the
    // difference isolates the dispersion terms.
    const auto ex = quantize_encode(x, 8);
    const auto ey = quantize_encode(y, 8);
    double exact = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
      exact += dequantize(ex.amplitudes[i], ex.scale_beta) *
               dequantize(ey.amplitudes[i], ey.scale_beta);
    const double off =
        scaled_ddot(x, y, 8, disp, NoiseSpec::none(), 0, false);
    const double on = scaled_ddot(x, y, 8, disp, NoiseSpec::none(), 0, true);
    if (std::fabs(on - exact) <= std::fabs(off - exact)) ++improved;
  }
  CHECK(improved >= trials * 95 / 100);
}

TEST_CASE("scaled_ddot: identical operands have zero additive error terms") {
  const auto disp = DispersionSpec::defaults();
  NormalSampler gen(47);
  const auto x = random_vec(24, gen, -2.0, 2.0);
  const auto ex = quantize_encode(x, 8);
  CHECK(dispersion_compensation(ex, ex, disp) == 0.0);
  const double off = scaled_ddot(x, x, 8, disp, NoiseSpec::none(), 0, false);
  const double on = scaled_ddot(x, x, 8, disp, NoiseSpec::none(), 0, true);
  CHECK(off == on);
}

TEST_CASE("scaled_ddot: operand length mismatch is rejected") {
  CHECK_THROWS_AS(scaled_ddot({1.0, 2.0}, {1.0}, 4, DispersionSpec::flat(),
                              NoiseSpec::none(), 0),
                  std::invalid_argument);
}
