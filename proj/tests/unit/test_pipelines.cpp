#include <algorithm>

#include "doctest.h"
#include "support.hpp"
#include "wdd/error.hpp"
#include "wdd/pipelines.hpp"
#include "wdd/rng.hpp"

using namespace wdd;
using cd = std::complex<double>;

namespace {

ComplexVector gaussian(std::size_t d, std::uint64_t seed) {
  CounterRng r(seed);
  ComplexVector x(d);
  for (auto& z : x) {
    const double re = r.normal();
    z = cd(re, r.normal());
  }
  return x;
}

ComplexVector bandlimited(std::size_t d, std::size_t gamma, std::uint64_t seed) {
  const ComplexVector r = gaussian(gamma, seed);
  ComplexVector xh(d);
  for (std::size_t i = 0; i < gamma; ++i) xh[i] = r[i];
  return idft(xh);
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v[v.size() / 2];
}

}  // namespace

TEST_CASE("error metric") {
  const ComplexVector x = gaussian(10, 1);
  CHECK(error_db(x, x) == kErrorDbFloor);
  CHECK(error_db(x, std::polar(1.0, 1.3) * x) < -290.0);
  const ComplexVector e0 = ComplexVector::delta(4, 0), e1 = ComplexVector::delta(4, 1);
  CHECK(error_db(e0, e1) == doctest::Approx(10.0 * std::log10(2.0)));
  CHECK(relative_error(e0, e1) == doctest::Approx(std::sqrt(2.0)));
  CHECK_THROWS_AS(error_db(ComplexVector(4), e0), Error);
}

TEST_CASE("algorithm 1 recovers noiseless signals to machine precision") {
  const Mask m = exp_bandlimited_mask(60, 8);
  for (std::uint64_t s = 0; s < 5; ++s) {
    const ComplexVector x = gaussian(60, s);
    const MeasurementSet y = spectrogram_subsampled(x, m.values, 60, 15);
    const RecoveryResult r = algorithm1(y, m, x);
    REQUIRE(r.error_db.has_value());
    CHECK(*r.error_db <= -160.0);
    CHECK(r.algorithm == "alg1");
    CHECK(r.diagnostics.eigen_converged);
    const RecoveryResult p = algorithm1(spectrogram_subsampled(std::polar(1.0, 0.4) * x, m.values, 60, 15), m, x);
    CHECK(*p.error_db <= -160.0);
  }
  const Mask m255 = exp_bandlimited_mask(255, 8);
  const ComplexVector x = gaussian(255, 9);
  CHECK_NOTHROW(algorithm1(spectrogram_subsampled(x, m255.values, 255, 15), m255, x));
}

TEST_CASE("algorithm 1 errors name the stage") {
  const Mask m = exp_bandlimited_mask(60, 8);
  const ComplexVector x = gaussian(60, 1);
  try {
    algorithm1(spectrogram_subsampled(x, m.values, 60, 20), m);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.stage() == "validate");
  }
  const Mask c = exp_compact_mask(60, 8);
  CHECK_THROWS_AS(algorithm1(spectrogram_subsampled(x, c.values, 60, 15), c), Error);
}

TEST_CASE("algorithm 2 with both solvers") {
  const std::size_t d = 190, delta = 48, gamma = 10, K = 95, L = 19;
  const Mask m = exp_compact_mask(d, delta);
  const ComplexVector x = bandlimited(d, gamma, 3);
  const MeasurementSet y = spectrogram_subsampled(x, m.values, K, L);
  const RecoveryResult p = algorithm2(y, m, gamma, {}, x);
  CHECK(relative_error(x, p.x_e) <= 1e-6);
  CHECK(p.algorithm == "alg2_pinv");
  Alg2Options t;
  t.solver = Alg2Solver::Tikhonov;
  const RecoveryResult r = algorithm2(y, m, gamma, t, x);
  CHECK(relative_error(x, r.x_e) <= 1e-6);
  CHECK(r.diagnostics.tikhonov_residuals.size() == 20);

  MeasurementSet zero = y;
  zero.Y.setZero();
  const RecoveryResult z = algorithm2(zero, m, gamma);
  CHECK(z.x_e.norm() == 0.0);
  CHECK_FALSE(z.error_db.has_value());
  CHECK_THROWS_AS(algorithm2(y, m, 11), Error);
}

TEST_CASE("iterated Tikhonov beats pinv at 30 dB in median") {
  const std::size_t d = 190, delta = 48, gamma = 10, K = 95, L = 19;
  const Mask m = exp_compact_mask(d, delta);
  std::vector<double> ep, et;
  Alg2Options t;
  t.solver = Alg2Solver::Tikhonov;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const ComplexVector x = bandlimited(d, gamma, 100 + s);
    const MeasurementSet y = add_noise(spectrogram_subsampled(x, m.values, K, L), 30.0, derive_seed(s, 2));
    ep.push_back(relative_error(x, algorithm2(y, m, gamma, {}, x).x_e));
    et.push_back(relative_error(x, algorithm2(y, m, gamma, t, x).x_e));
  }
  MESSAGE("median relative error: pinv " << median(ep) << ", tikhonov " << median(et));
  CHECK(median(et) <= median(ep));
}

TEST_CASE("compact-mask pipeline") {
  const std::size_t d = 247, K = 19;
  const Mask m = exp_compact_mask(d, 10);
  for (std::uint64_t s = 0; s < 3; ++s) {
    const ComplexVector x = gaussian(d, 20 + s);
    const RecoveryResult r = compact_mask_pipeline(spectrogram_subsampled(x, m.values, K, d), m, x);
    CHECK(*r.error_db <= -160.0);
    CHECK(r.algorithm == "compact");
    const RecoveryResult p = compact_mask_pipeline(spectrogram_subsampled(cd(0, 1) * x, m.values, K, d), m, x);
    CHECK(*p.error_db <= -160.0);
  }
  const ComplexVector x = gaussian(d, 1);
  CHECK(*compact_mask_pipeline(spectrogram_subsampled(x, m.values, 13, d), m, x).error_db <= -120.0);
  MeasurementSet bad = spectrogram_subsampled(x, m.values, 19, d);
  bad.K = 20;
  try {
    compact_mask_pipeline(bad, m);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonDivisor);
    CHECK(e.stage() == "validate");
  }
}

TEST_CASE("HIO+ER baseline") {
  const Mask m = exp_bandlimited_mask(60, 8);
  int good = 0;
  for (std::uint64_t s = 0; s < 10; ++s) {
    const ComplexVector x = gaussian(60, 40 + s);
    const MeasurementSet y = spectrogram_subsampled(x, m.values, 60, 15);
    const RecoveryResult r = hio_er(y, m, {}, x);
    if (r.diagnostics.hio_residual <= 1e-3) ++good;
    if (s == 0) {
      HioOptions o;
      o.x0 = x;
      o.max_iter = 1;
      CHECK(hio_er(y, m, o).diagnostics.hio_residual <= 1e-10);
      CHECK(magnitude_residual(y, m.values, x) <= 1e-12);
    }
  }
  CHECK(good >= 8);
  const ComplexVector x = gaussian(60, 1);
  MeasurementSet zero = spectrogram_subsampled(x, m.values, 60, 15);
  zero.Y.setZero();
  CHECK(hio_er(zero, m).x_e.norm() == 0.0);
}

TEST_CASE("error bounds hold on noisy trials") {
  const std::size_t d = 60, L = 15, kappa = 8;
  const Mask m = exp_bandlimited_mask(d, 8);
  const double mu = mu1(m, kappa);
  for (double snr : {10.0, 30.0, 50.0}) {
    for (std::uint64_t s = 0; s < 5; ++s) {
      const ComplexVector x = gaussian(d, 60 + s);
      const MeasurementSet clean = spectrogram_subsampled(x, m.values, d, L);
      const MeasurementSet y = add_noise(clean, snr, s);
      const ComplexVector xh = dft(x);
      double xmin = 1e300;
      for (auto z : xh) xmin = std::min(xmin, std::abs(z));
      const RecoveryResult r = algorithm1(y, m, x);
      const double bound = alg1_error_bound(d, L, kappa, mu, xh.max_abs(), xmin, (y.Y - clean.Y).norm());
      CHECK(phase_distance(x, r.x_e) <= bound);
    }
  }
  const std::size_t D = 190, delta = 48, gamma = 10, K = 95, LL = 19;
  const Mask c = exp_compact_mask(D, delta);
  const VandermondeSystem sys = build_vandermonde(D, delta, gamma);
  const double mu_2 = mu2(c, gamma);
  for (double snr : {20.0, 40.0}) {
    for (std::uint64_t s = 0; s < 3; ++s) {
      const ComplexVector x = bandlimited(D, gamma, 70 + s);
      const MeasurementSet clean = spectrogram_subsampled(x, c.values, K, LL);
      const MeasurementSet y = add_noise(clean, snr, s);
      const RecoveryResult r = algorithm2(y, c, gamma, {}, x);
      const double bound = alg2_error_bound(D, K, LL, sys.sigma_min, mu_2, (y.Y - clean.Y).norm(), x.norm());
      CHECK(relative_error(x, r.x_e) <= bound);
    }
  }
}
