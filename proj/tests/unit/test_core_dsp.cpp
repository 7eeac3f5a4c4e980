#include <sstream>

#include "doctest.h"
#include "support.hpp"
#include "wdd/csv.hpp"
#include "wdd/error.hpp"
#include "wdd/rng.hpp"

using namespace wdd;
using cd = std::complex<double>;

TEST_CASE("dft matches the brute-force sum for many lengths") {
  for (std::size_t d : {1, 2, 3, 4, 5, 7, 8, 12, 16, 24, 31, 60, 64, 97, 247}) {
    const oracle::Vec x = oracle::random_vec(d, static_cast<std::uint32_t>(d));
    const ComplexVector X = dft(to_cv(x));
    const oracle::Vec ref = oracle::dft(x);
    CHECK(rel_err(X, to_cv(ref)) < 1e-12);
    CHECK(rel_err(dft_direct(to_cv(x)), to_cv(ref)) < 1e-12);
    CHECK(rel_err(idft(X), to_cv(x)) < 1e-12);
    CHECK(rel_err(idft_direct(to_cv(ref)), to_cv(x)) < 1e-12);
  }
}

TEST_CASE("dft of a delta and of a constant") {
  const ComplexVector X = dft(ComplexVector::delta(8, 0));
  for (auto z : X) CHECK(std::abs(z - cd(1, 0)) < 1e-15);
  const ComplexVector Y = dft(ComplexVector(8, cd(1, 0)));
  CHECK(std::abs(Y[0] - cd(8, 0)) < 1e-14);
  for (std::size_t k = 1; k < 8; ++k) CHECK(std::abs(Y[k]) < 1e-14);
}

TEST_CASE("shift, modulation and reversal follow their definitions") {
  const ComplexVector x{1, 2, 3, 4};
  CHECK(circular_shift(x, 1) == ComplexVector{2, 3, 4, 1});
  CHECK(circular_shift(x, -1) == ComplexVector{4, 1, 2, 3});
  CHECK(circular_shift(x, 9) == circular_shift(x, 1));
  CHECK(reverse(x) == ComplexVector{1, 4, 3, 2});
  const ComplexVector w = modulate(x, 1);
  const ComplexVector expect{cd(1, 0), cd(0, 2), cd(-3, 0), cd(0, -4)};
  CHECK(rel_err(w, expect) < 1e-15);
  CHECK(conj_reverse(ComplexVector{cd(1, 1), cd(2, 2), cd(3, 3)}) ==
        ComplexVector{cd(1, -1), cd(3, -3), cd(2, -2)});
  CHECK(x.at(-1) == cd(4, 0));
  CHECK(x.at(6) == cd(3, 0));
}

TEST_CASE("circular convolution agrees with the direct sum") {
  for (std::size_t d : {1, 5, 12, 33}) {
    const oracle::Vec x = oracle::random_vec(d, 1), y = oracle::random_vec(d, 2);
    oracle::Vec ref(d);
    for (std::size_t n = 0; n < d; ++n)
      for (std::size_t k = 0; k < d; ++k) ref[n] += x[k] * y[oracle::md(static_cast<std::int64_t>(n - k), d)];
    CHECK(rel_err(circular_convolve(to_cv(x), to_cv(y)), to_cv(ref)) < 1e-12);
    CHECK(rel_err(circular_convolve_direct(to_cv(x), to_cv(y)), to_cv(ref)) < 1e-12);
  }
}

TEST_CASE("quotient guards small denominators") {
  const ComplexVector a{1, 2, 3};
  CHECK(rel_err(quotient(a, ComplexVector{1, 2, 3}), ComplexVector{1, 1, 1}) < 1e-15);
  CHECK_THROWS_AS(quotient(a, ComplexVector{1, 0, 3}), NearZeroDenominator);
  try {
    quotient(a, ComplexVector{1, 1e-20, 3});
  } catch (const NearZeroDenominator& e) {
    CHECK(e.index() == 1);
    CHECK(e.kind() == ErrorKind::NearZeroDenominator);
  }
  CHECK_THROWS_AS(quotient(a, ComplexVector{1, 2}), Error);
}

TEST_CASE("subsample and fold") {
  const ComplexVector x{0, 1, 2, 3, 4, 5};
  CHECK(subsample(x, 2) == ComplexVector{0, 2, 4});
  CHECK(subsample(x, 3) == ComplexVector{0, 3});
  CHECK_THROWS_AS(subsample(x, 4), Error);
  try {
    subsample(x, 4);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonDivisor);
  }
  for (std::size_t s : {1, 2, 3, 4, 6, 12}) {
    const ComplexVector v = rand_cv(12, 5);
    CHECK(rel_err(dft(fold(v, 12 / s)), subsample(dft(v), s)) < 1e-12);
  }
}

TEST_CASE("phase distance ignores a global phase") {
  const ComplexVector x = rand_cv(20, 3);
  const ComplexVector y = std::polar(1.0, 0.7) * x;
  CHECK(phase_distance(x, y) < 1e-13);
  CHECK(rel_err(align_phase(x, y), x) < 1e-13);
  ComplexVector z = y;
  z[4] += cd(1e-9, 0);
  CHECK(phase_distance(x, z) > 1e-10);
  CHECK(phase_distance(x, z) < 2e-9);
  CHECK(inner(x, x).real() == doctest::Approx(x.norm_sq()));
}

TEST_CASE("shifted autocorrelation is the diagonal of x x^*") {
  const ComplexVector x = rand_cv(9, 4);
  for (std::int64_t a : {-3, 0, 2}) {
    const ComplexVector s = shifted_autocorrelation(x, a);
    for (std::int64_t j = 0; j < 9; ++j) CHECK(std::abs(s.at(j) - x.at(j) * std::conj(x.at(j + a))) < 1e-15);
  }
}

TEST_CASE("banded matrix embedding and operations") {
  const std::size_t d = 7, kappa = 3;
  CMatrix M = CMatrix::Zero(d, 2 * kappa - 1);
  for (Eigen::Index i = 0; i < M.rows(); ++i)
    for (Eigen::Index j = 0; j < M.cols(); ++j) M(i, j) = cd(static_cast<double>(i + 1), static_cast<double>(j));
  const BandedMatrix B = BandedMatrix::embed(M);
  const CMatrix D = B.to_dense();
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t k = 0; k < d; ++k) {
      const std::int64_t off = static_cast<std::int64_t>(oracle::md(static_cast<std::int64_t>(k) - static_cast<std::int64_t>(j), d));
      const std::int64_t alpha = off <= static_cast<std::int64_t>(d) / 2 ? off : off - static_cast<std::int64_t>(d);
      const bool band = std::abs(alpha) < static_cast<std::int64_t>(kappa);
      const cd expect = band ? M(static_cast<Eigen::Index>(j), alpha + static_cast<std::int64_t>(kappa) - 1) : cd(0, 0);
      CHECK(D(j, k) == expect);
      CHECK(B(j, k) == expect);
      CHECK(B.in_band(j, k) == band);
    }
  }
  const ComplexVector v = rand_cv(d, 8);
  Eigen::VectorXcd ev(d);
  for (std::size_t i = 0; i < d; ++i) ev(i) = v[i];
  const Eigen::VectorXcd dv = D * ev;
  const ComplexVector bv = B.multiply(v);
  for (std::size_t i = 0; i < d; ++i) CHECK(std::abs(bv[i] - dv(i)) < 1e-12);

  const CMatrix H = B.hermitianized().to_dense();
  CHECK((H - (D + D.adjoint()) / 2.0).norm() < 1e-14);
  double colmax = 0.0;
  for (std::size_t k = 0; k < d; ++k) colmax = std::max(colmax, D.col(k).cwiseAbs().sum());
  CHECK(B.one_norm() == doctest::Approx(colmax));

  BandedMatrix Z(d, kappa);
  Z.band_entry(2, 1) = cd(0, 3);
  const BandedMatrix S = Z.sign_normalized();
  CHECK(std::abs(S.band_entry(2, 1) - cd(0, 1)) < 1e-15);
  CHECK(S.band_entry(0, 0) == cd(1, 0));
  CHECK(S(0, 4) == cd(0, 0));
  CHECK(Z.band(1)[2] == cd(0, 3));
  CHECK_THROWS_AS(BandedMatrix(4, 3), Error);
}

TEST_CASE("vector CSV round-trips losslessly") {
  ComplexVector x = rand_cv(11, 9);
  x[3] = cd(1.0 / 3.0, -0.0);
  x[4] = cd(5e-324, 1.7976931348623157e308);
  std::stringstream ss;
  csv::write_vector(ss, x, {{"seed", "42"}, {"kind", "test"}});
  std::map<std::string, std::string> meta;
  const ComplexVector y = csv::read_vector(ss, &meta);
  CHECK(x == y);
  CHECK(meta["seed"] == "42");
  CHECK(meta["kind"] == "test");
  std::stringstream bad("index,re,im\n0,1,zz\n");
  CHECK_THROWS_AS(csv::read_vector(bad), Error);
  CHECK(csv::format_double(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(std::isinf(csv::parse_double("inf")));
}

TEST_CASE("counter rng is reproducible and roughly normal") {
  CounterRng a(7), b(7), c(8);
  for (int i = 0; i < 10; ++i) {
    const auto va = a.next_u64();
    CHECK(va == b.next_u64());
    CHECK(va != c.next_u64());
  }
  CounterRng g(1);
  double s = 0, s2 = 0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const double v = g.normal();
    s += v;
    s2 += v * v;
  }
  CHECK(std::abs(s / n) < 0.03);
  CHECK(std::abs(s2 / n - 1.0) < 0.05);
  CounterRng u(3);
  for (int i = 0; i < 1000; ++i) {
    const double v = u.uniform();
    CHECK((v >= 0.0 && v < 1.0));
  }
  CHECK(derive_seed(1, 2) != derive_seed(1, 3));
}

TEST_CASE("errors carry kind and stage") {
  const Error e(ErrorKind::NonDivisor, "L must divide d");
  CHECK(e.kind() == ErrorKind::NonDivisor);
  CHECK(e.stage().empty());
  const Error t = e.with_stage("collapse");
  CHECK(t.stage() == "collapse");
  CHECK(std::string(t.what()).find("collapse") != std::string::npos);
  CHECK(std::string(t.what()).find("L must divide d") != std::string::npos);
}
