#include "doctest.h"
#include "support.hpp"
#include "wdd/angsync.hpp"
#include "wdd/error.hpp"

using namespace wdd;
using cd = std::complex<double>;

namespace {

CMatrix random_matrix(std::size_t n, std::uint32_t seed) {
  const oracle::Vec v = oracle::random_vec(n * n, seed);
  CMatrix M(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) M(i, j) = v[i * n + j];
  return M;
}

BandSet true_bands(const ComplexVector& xh, std::size_t kappa) {
  BandSet b;
  b.target = BandTarget::Fourier;
  b.kappa = kappa;
  for (std::int64_t a = 1 - static_cast<std::int64_t>(kappa); a < static_cast<std::int64_t>(kappa); ++a) {
    b.bands.push_back(shifted_autocorrelation(xh, a));
  }
  return b;
}

ComplexVector nonvanishing(std::size_t d, std::uint32_t seed) {
  ComplexVector v = rand_cv(d, seed);
  for (auto& z : v) z = z / std::abs(z) * (0.5 + std::abs(z));
  return v;
}

}  // namespace

TEST_CASE("hermitianize") {
  const CMatrix M = random_matrix(6, 1);
  const CMatrix H = hermitianize(M);
  CHECK((H - H.adjoint()).norm() == 0.0);
  CHECK(H.norm() <= M.norm() + 1e-14);
  CHECK((hermitianize(H) - H).norm() < 1e-15);
}

TEST_CASE("sgn and sign normalisation") {
  CHECK(sgn(cd(0, 0)) == cd(1, 0));
  CHECK(std::abs(sgn(cd(3, -4)) - cd(0.6, -0.8)) < 1e-15);
  CMatrix M = random_matrix(5, 2);
  M(1, 2) = 0;
  const CMatrix S = sign_normalize(M);
  for (Eigen::Index i = 0; i < 5; ++i)
    for (Eigen::Index j = 0; j < 5; ++j) CHECK(std::abs(std::abs(S(i, j)) - 1.0) < 1e-15);
  CHECK(S(1, 2) == cd(1, 0));
}

TEST_CASE("leading eigenvector on small cases") {
  CMatrix D = CMatrix::Zero(2, 2);
  D(0, 0) = 2;
  D(1, 1) = 1;
  const EigenPair e = leading_eigenvector(D);
  CHECK(e.value == doctest::Approx(2.0));
  CHECK(std::abs(e.vector[0] - cd(1, 0)) < 1e-10);
  CHECK(std::abs(e.vector[1]) < 1e-10);
  CHECK(e.converged);

  const ComplexVector v = (1.0 / rand_cv(5, 3).norm()) * rand_cv(5, 3);
  CMatrix R(5, 5);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) R(i, j) = v[i] * std::conj(v[j]);
  const EigenPair r = leading_eigenvector(R);
  CHECK(r.value == doctest::Approx(1.0));
  CHECK(phase_distance(v, r.vector) < 1e-9);
}

TEST_CASE("leading eigenvector matches the Jacobi oracle") {
  for (std::uint32_t seed : {4u, 5u, 6u}) {
    const CMatrix H = hermitianize(random_matrix(8, seed));
    const EigenPair e = leading_eigenvector(H);
    const oracle::HermEig ref = oracle::hermitian_eig(to_mat(H));
    CHECK(e.value == doctest::Approx(ref.values.back()).epsilon(1e-8));
    CHECK(phase_distance(to_cv(ref.top), e.vector) < 1e-8);
    std::size_t big = 0;
    for (std::size_t i = 0; i < 8; ++i)
      if (std::abs(e.vector[i]) > std::abs(e.vector[big])) big = i;
    CHECK(std::abs(e.vector[big].imag()) < 1e-14);
    CHECK(e.vector[big].real() > 0.0);
  }
}

TEST_CASE("non-convergence is reported, not thrown") {
  const CMatrix H = hermitianize(random_matrix(8, 7));
  EigenOptions opt;
  opt.max_iter = 2;
  const EigenPair e = leading_eigenvector(H, opt);
  CHECK_FALSE(e.converged);
  CHECK(e.iterations <= 2);
  CHECK(e.vector.size() == 8);
}

TEST_CASE("magnitudes from the diagonal clamp negatives") {
  BandedMatrix B(6, 2);
  B.band_entry(0, 0) = 4;
  B.band_entry(1, 0) = -1;
  B.band_entry(2, 0) = cd(9, 3);
  const std::vector<double> m = magnitudes_from_diagonal(B);
  CHECK(m[0] == doctest::Approx(2.0));
  CHECK(m[1] == 0.0);
  CHECK(m[2] == doctest::Approx(3.0));
  CHECK(m[5] == 0.0);
}

TEST_CASE("normalised true bands have the predicted top eigenpair") {
  for (std::size_t d : {20, 33, 64}) {
    const std::size_t kappa = 4;
    const ComplexVector xh = nonvanishing(d, static_cast<std::uint32_t>(d));
    const BandedMatrix C = BandedMatrix::from_bands(true_bands(xh, kappa).bands).sign_normalized();
    const EigenPair e = leading_eigenvector(C);
    CHECK(e.value == doctest::Approx(2.0 * kappa - 1.0).epsilon(1e-9));
    ComplexVector s(d);
    for (std::size_t i = 0; i < d; ++i) s[i] = sgn(xh[i]);
    CHECK(phase_distance((1.0 / s.norm()) * s, e.vector) < 1e-8);
  }
}

TEST_CASE("synchronize recovers x hat from noiseless bands") {
  const std::size_t d = 60, kappa = 8;
  const ComplexVector xh = nonvanishing(d, 8);
  const SyncResult s = synchronize(true_bands(xh, kappa));
  CHECK(phase_distance(xh, s.estimate) / xh.norm() < 1e-8);
  CHECK(s.converged);
  for (std::size_t i = 0; i < d; ++i) CHECK(s.magnitudes[i] == doctest::Approx(std::abs(xh[i])));

  const SyncResult r = synchronize(true_bands(std::polar(1.0, 0.9) * xh, kappa));
  CHECK(phase_distance(s.estimate, r.estimate) < 1e-8 * xh.norm());

  BandSet scaled = true_bands(xh, kappa);
  for (auto& b : scaled.bands) b *= cd(4.0, 0.0);
  const SyncResult t = synchronize(scaled);
  CHECK(phase_distance(2.0 * s.estimate, t.estimate) < 1e-8 * xh.norm());
}

TEST_CASE("kappa = 1 leaves unit phases") {
  const ComplexVector xh = nonvanishing(10, 9);
  const SyncResult s = synchronize(true_bands(xh, 1));
  for (std::size_t i = 0; i < 10; ++i) {
    CHECK(s.magnitudes[i] == doctest::Approx(std::abs(xh[i])));
    CHECK(std::abs(s.phases[i] - s.phases[0]) < 1e-12);
  }
}

TEST_CASE("magnitude error grows with the perturbation size") {
  const std::size_t d = 40, kappa = 5;
  const ComplexVector xh = nonvanishing(d, 10);
  double prev = 0.0;
  for (double eps : {1e-8, 1e-6, 1e-4, 1e-2}) {
    BandSet b = true_bands(xh, kappa);
    const ComplexVector n = rand_cv(d, 11);
    for (auto& band : b.bands) band += eps * n;
    const SyncResult s = synchronize(b);
    double worst = 0.0;
    for (std::size_t i = 0; i < d; ++i) worst = std::max(worst, std::abs(s.magnitudes[i] - std::abs(xh[i])));
    CHECK(worst >= prev * 0.5);
    CHECK(worst * worst <= 10.0 * eps * n.max_abs());
    prev = worst;
  }
}
