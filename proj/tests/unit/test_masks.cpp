#include <cstdio>

#include "doctest.h"
#include "support.hpp"
#include "wdd/error.hpp"
#include "wdd/masks.hpp"

using namespace wdd;
using cd = std::complex<double>;

namespace {

/// min over the (p, q) box of |F(mhat o S_p conj(mhat))_q| by brute force.
double brute_mu(const oracle::Vec& mhat, int p_lo, int p_hi, int q_lo, int q_hi) {
  const std::size_t d = mhat.size();
  double best = 1e300;
  for (int p = p_lo; p <= p_hi; ++p) {
    oracle::Vec v(d);
    for (std::size_t j = 0; j < d; ++j) v[j] = mhat[j] * std::conj(mhat[oracle::md(static_cast<std::int64_t>(j) + p, d)]);
    const oracle::Vec f = oracle::dft(v);
    for (int q = q_lo; q <= q_hi; ++q) best = std::min(best, std::abs(f[oracle::md(q, d)]));
  }
  return best;
}

}  // namespace

TEST_CASE("exponential bandlimited mask values") {
  const Mask m = exp_bandlimited_mask(60, 8);
  CHECK(m.domain == SupportDomain::Fourier);
  CHECK(m.support == 8);
  const ComplexVector mh = dft(m.values);
  CHECK(std::abs(mh[0] - cd(0.508133, 0)) < 1e-6);
  CHECK(std::abs(mh[0].real() - std::pow(15.0, -0.25)) < 1e-13);
  CHECK(std::abs(mh[3].real() - std::exp(-3.0 / 4.0) * std::pow(15.0, -0.25)) < 1e-13);
  for (std::size_t k = 8; k < 60; ++k) CHECK(std::abs(mh[k]) < 1e-13);
  CHECK(support_leakage(m) < 1e-24);
  CHECK_THROWS_AS(exp_bandlimited_mask(60, 1), Error);
  CHECK_THROWS_AS(exp_bandlimited_mask(16, 8), Error);
}

TEST_CASE("exponential compact mask values") {
  const Mask m = exp_compact_mask(247, 10);
  CHECK(m.domain == SupportDomain::Space);
  CHECK(std::abs(m.values[0].real() - std::pow(19.0, -0.25)) < 1e-14);
  CHECK(std::abs(m.values[0] - cd(0.478965, 0)) < 2e-5);
  CHECK(std::abs(m.values[2].real() - std::exp(-2.0 / 4.5) * std::pow(19.0, -0.25)) < 1e-14);
  for (std::size_t k = 10; k < 247; ++k) CHECK(m.values[k] == cd(0, 0));
}

TEST_CASE("random bandlimited mask is deterministic and bounded") {
  const Mask a = random_bandlimited_mask(60, 8, 11), b = random_bandlimited_mask(60, 8, 11);
  const Mask c = random_bandlimited_mask(60, 8, 12);
  CHECK(a.values == b.values);
  CHECK(!(a.values == c.values));
  CHECK(a.seed == std::optional<std::uint64_t>(11));
  const ComplexVector mh = dft(a.values);
  for (std::size_t k = 0; k < 8; ++k) {
    CHECK(std::abs(mh[k]) >= 1.0 - 1e-12);
    CHECK(std::abs(mh[k]) <= 1.5 + 1e-12);
  }
  for (std::size_t k = 8; k < 60; ++k) CHECK(std::abs(mh[k]) < 1e-12);
}

TEST_CASE("mu1 equals its brute-force minimum and the published constant") {
  const Mask m = exp_bandlimited_mask(60, 8);
  const double mu = mu1(m, 8);
  CHECK(mu == doctest::Approx(brute_mu(to_vec(dft(m.values)), -7, 7, 0, 59)).epsilon(1e-10));
  CHECK(mu == doctest::Approx(2.267e-2).epsilon(0.02));
  const Mask r = random_bandlimited_mask(24, 5, 3);
  CHECK(mu1(r, 4) == doctest::Approx(brute_mu(to_vec(dft(r.values)), -3, 3, 0, 23)).epsilon(1e-10));
  CHECK_THROWS_AS(mu1(m, 1), Error);
  CHECK_THROWS_AS(mu1(m, 9), Error);
}

TEST_CASE("mu2 and the compact collapse constant") {
  const Mask m = exp_compact_mask(40, 6);
  const oracle::Vec mh = to_vec(dft(m.values));
  CHECK(mu2(m, 3) == doctest::Approx(brute_mu(mh, -2, 2, -5, 5)).epsilon(1e-10));
  const Mask big = exp_compact_mask(247, 10);
  const double variant = mu_compact_collapse(big, 10);
  CHECK(variant == doctest::Approx(1.392e-2).epsilon(0.005));
  CHECK(variant == doctest::Approx(brute_mu(to_vec(dft(big.values)), 0, 246, -9, 9) / 247.0).epsilon(1e-8));
  const ComplexVector g{cd(2, 0), cd(0, 0), cd(0, 0), cd(0, 0), cd(0, 0)};
  const Mask one = user_mask(g, SupportDomain::Space, 1, 0);
  CHECK(mu2(one, 1) == doctest::Approx(brute_mu(to_vec(dft(g)), 0, 0, 0, 0)));
}

TEST_CASE("admissibility") {
  CHECK_FALSE(check_admissible(exp_bandlimited_mask(60, 8)).admissible);
  CHECK(mu1(exp_bandlimited_mask(60, 8), 8) > 0.0);
  ComplexVector v(40);
  v[0] = 8;
  for (std::size_t i = 1; i < 8; ++i) v[i] = 1;
  CHECK(check_admissible(user_mask(v, SupportDomain::Space, 8, 0)).admissible);
  v[0] = 7;
  CHECK_FALSE(check_admissible(user_mask(v, SupportDomain::Space, 8, 0)).admissible);
  v[0] = 8;
  v[5] = 0;
  CHECK_FALSE(check_admissible(user_mask(v, SupportDomain::Space, 8, 0)).admissible);
  v[5] = 1;
  const Mask sp = user_mask(v, SupportDomain::Space, 8, 0);
  CHECK(mu2(sp, 3) > 0.0);
  const Mask fo = user_mask(idft(v), SupportDomain::Fourier, 8, 0);
  CHECK(check_admissible(fo).admissible);
  CHECK(mu1(fo, 8) > 0.0);
}

TEST_CASE("user masks reject support leakage") {
  ComplexVector v(20);
  v[0] = 1;
  v[10] = 0.5;
  CHECK_THROWS_AS(user_mask(v, SupportDomain::Space, 4, 0), Error);
}

TEST_CASE("mask files round-trip") {
  const std::string path = "test_masks_roundtrip.csv";
  const Mask r = random_bandlimited_mask(30, 5, 99);
  write_mask_file(path, r);
  const Mask s = read_mask_file(path);
  CHECK(s.values == r.values);
  CHECK(s.kind == r.kind);
  CHECK(s.domain == r.domain);
  CHECK(s.support == r.support);
  CHECK(s.seed == r.seed);
  const Mask e = exp_compact_mask(30, 4);
  write_mask_file(path, e);
  const Mask f = read_mask_file(path);
  CHECK(f.values == e.values);
  CHECK_FALSE(f.seed.has_value());
  std::remove(path.c_str());
  CHECK(parse_mask_kind("exp") == MaskKind::ExpBandlimited);
  CHECK_THROWS_AS(parse_mask_kind("nope"), Error);
}
