#include "wdd/wdd.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "wdd/error.hpp"
#include "wdd/fft.hpp"

namespace wdd {
namespace {

using Idx = Eigen::Index;

void require(bool ok, ErrorKind kind, const std::string& msg) {
  if (!ok) throw Error(kind, msg);
}

// Smallest |den_q| over the listed indices; throws when below the guard.
double guard_denominator(const ComplexVector& den, double eps, const char* what,
                         std::int64_t q_lo, std::int64_t q_hi) {
  double best = std::numeric_limits<double>::infinity();
  for (std::int64_t q = q_lo; q <= q_hi; ++q) {
    const double a = std::abs(den.at(q));
    if (a < eps) throw NearZeroDenominator(wrap(q, den.size()), a, eps, what);
    best = std::min(best, a);
  }
  return best;
}

}  // namespace

CMatrix double_fft(const RMatrix& Y) {
  const Idx K = Y.rows();
  const Idx L = Y.cols();
  CMatrix T = Y.transpose().cast<Complex>();  // L x K, column-major
  for (Idx c = 0; c < K; ++c) {
    fft::transform({T.col(c).data(), static_cast<std::size_t>(L)}, fft::Direction::Forward);
  }
  for (Idx r = 0; r < L; ++r) {
    fft::transform_strided(T.data() + r, static_cast<std::size_t>(K), L, fft::Direction::Forward);
  }
  return T;
}

CMatrix double_fft(const MeasurementSet& y) { return double_fft(y.Y); }

std::size_t shift_row(std::int64_t alpha, std::size_t L) {
  const auto l = static_cast<std::int64_t>(L);
  return wrap(alpha <= 0 ? -alpha : l - alpha, L);
}

std::size_t freq_col(std::int64_t omega, std::size_t K) {
  const auto k = static_cast<std::int64_t>(K);
  return wrap(omega <= -1 ? omega + k : omega, K);
}

BandSet collapse_bandlimited_mask(const CMatrix& Ytilde, const Mask& m, std::size_t kappa) {
  const std::size_t d = m.dim();
  const auto L = static_cast<std::size_t>(Ytilde.rows());
  const auto K = static_cast<std::size_t>(Ytilde.cols());
  require(m.domain == SupportDomain::Fourier, ErrorKind::InvalidParameter,
          "bandlimited-mask collapse needs a fourier-supported mask");
  require(K == d, ErrorKind::InvalidParameter,
          "bandlimited-mask collapse needs K = d (got K=" + std::to_string(K) + ", d=" + std::to_string(d) + ")");
  require(L > 0 && d % L == 0, ErrorKind::NonDivisor,
          "L must divide d (L=" + std::to_string(L) + ", d=" + std::to_string(d) + ")");
  require(kappa >= 1 && kappa <= m.support, ErrorKind::InvalidParameter,
          "bandlimited-mask collapse needs 1 <= kappa <= rho");
  require(L >= m.support + kappa - 1, ErrorKind::InvalidParameter,
          "bandlimited-mask collapse needs L >= rho + kappa - 1 (L=" + std::to_string(L) +
              ", rho=" + std::to_string(m.support) + ", kappa=" + std::to_string(kappa) + ")");

  const ComplexVector mhat = m.spectrum();
  const double eps = kWddRelEps * static_cast<double>(d);
  const double scale = static_cast<double>(d) * static_cast<double>(d) / static_cast<double>(L);
  const auto k = static_cast<std::int64_t>(kappa);

  BandSet out;
  out.target = BandTarget::Fourier;
  out.kappa = kappa;
  out.min_denominator = std::numeric_limits<double>::infinity();
  for (std::int64_t alpha = 1 - k; alpha < k; ++alpha) {
    const ComplexVector den = dft(shifted_autocorrelation(mhat, -alpha));
    out.min_denominator = std::min(
        out.min_denominator,
        guard_denominator(den, eps, "bandlimited-mask collapse", 0, static_cast<std::int64_t>(d) - 1));
    const Idx row = static_cast<Idx>(shift_row(alpha, L));
    ComplexVector spec(d);
    for (std::size_t q = 0; q < d; ++q) spec[q] = scale * Ytilde(row, static_cast<Idx>(q)) / den[q];
    out.bands.push_back(idft(spec));
    out.spectra.push_back(std::move(spec));
  }
  return out;
}

CollapsedTable collapse_bandlimited_signal(const CMatrix& Ytilde, const Mask& m, std::size_t gamma) {
  const std::size_t d = m.dim();
  const auto L = static_cast<std::size_t>(Ytilde.rows());
  const auto K = static_cast<std::size_t>(Ytilde.cols());
  const std::size_t delta = m.support;
  require(m.domain == SupportDomain::Space, ErrorKind::InvalidParameter,
          "bandlimited-signal collapse needs a space-supported mask");
  require(gamma >= 1 && gamma <= 2 * delta - 1 && 2 * delta - 1 < d, ErrorKind::InvalidParameter,
          "bandlimited-signal collapse needs gamma <= 2*delta-1 < d (gamma=" + std::to_string(gamma) +
              ", delta=" + std::to_string(delta) + ", d=" + std::to_string(d) + ")");
  require(K > 0 && d % K == 0, ErrorKind::NonDivisor, "K must divide d");
  require(L > 0 && d % L == 0, ErrorKind::NonDivisor, "L must divide d");
  require(K == 2 * delta - 1, ErrorKind::InvalidParameter,
          "bandlimited-signal collapse needs K = 2*delta-1 (got K=" + std::to_string(K) + ")");
  require(L == 2 * gamma - 1, ErrorKind::InvalidParameter,
          "bandlimited-signal collapse needs L = 2*gamma-1 (got L=" + std::to_string(L) + ")");

  const ComplexVector mhat = m.spectrum();
  const double eps = kWddRelEps * static_cast<double>(d);
  const double dd = static_cast<double>(d);
  const double scale = dd * dd * dd / (static_cast<double>(K) * static_cast<double>(L));
  const auto g = static_cast<std::int64_t>(gamma);
  const auto dl = static_cast<std::int64_t>(delta);

  CollapsedTable out;
  out.delta = delta;
  out.gamma = gamma;
  out.V = CMatrix::Zero(static_cast<Idx>(2 * delta - 1), static_cast<Idx>(2 * gamma - 1));
  out.min_denominator = std::numeric_limits<double>::infinity();
  for (std::int64_t alpha = 1 - g; alpha < g; ++alpha) {
    const ComplexVector den = dft(shifted_autocorrelation(mhat, -alpha));
    out.min_denominator = std::min(out.min_denominator,
                                   guard_denominator(den, eps, "bandlimited-signal collapse", 1 - dl, dl - 1));
    const Idx row = static_cast<Idx>(shift_row(alpha, L));
    for (std::int64_t omega = 1 - dl; omega < dl; ++omega) {
      out.V(static_cast<Idx>(omega + dl - 1), static_cast<Idx>(alpha + g - 1)) =
          scale * Ytilde(row, static_cast<Idx>(freq_col(omega, K))) / den.at(omega);
    }
  }
  return out;
}

BandSet collapse_compact_mask(const CMatrix& Ytilde, const Mask& m, std::size_t kappa) {
  const std::size_t d = m.dim();
  const auto L = static_cast<std::size_t>(Ytilde.rows());
  const auto K = static_cast<std::size_t>(Ytilde.cols());
  const std::size_t delta = m.support;
  require(m.domain == SupportDomain::Space, ErrorKind::InvalidParameter,
          "compact-mask collapse needs a space-supported mask");
  require(L == d, ErrorKind::InvalidParameter,
          "compact-mask collapse needs L = d (got L=" + std::to_string(L) + ", d=" + std::to_string(d) + ")");
  require(K > 0 && d % K == 0, ErrorKind::NonDivisor,
          "K must divide d (K=" + std::to_string(K) + ", d=" + std::to_string(d) + ")");
  require(kappa >= 1 && kappa <= delta, ErrorKind::InvalidParameter,
          "compact-mask collapse needs 1 <= kappa <= delta");
  require(K >= delta + kappa - 1, ErrorKind::InvalidParameter,
          "compact-mask collapse needs K >= delta + kappa - 1 (K=" + std::to_string(K) +
              ", delta=" + std::to_string(delta) + ", kappa=" + std::to_string(kappa) + ")");

  const double eps = kWddRelEps * static_cast<double>(d);
  const auto k = static_cast<std::int64_t>(kappa);
  const double Kd = static_cast<double>(K);

  BandSet out;
  out.target = BandTarget::Space;
  out.kappa = kappa;
  out.min_denominator = std::numeric_limits<double>::infinity();
  for (std::int64_t omega = 1 - k; omega < k; ++omega) {
    const ComplexVector den = dft(shifted_autocorrelation(m.values, omega));
    out.min_denominator = std::min(
        out.min_denominator,
        guard_denominator(den, eps, "compact-mask collapse", 0, static_cast<std::int64_t>(d) - 1));
    const Idx col = static_cast<Idx>(freq_col(omega, K));
    ComplexVector spec(d);
    for (std::size_t a = 0; a < d; ++a) {
      spec[a] = Ytilde(static_cast<Idx>(a), col) / (Kd * den.at(-static_cast<std::int64_t>(a)));
    }
    out.bands.push_back(idft(spec));
    out.spectra.push_back(std::move(spec));
  }
  return out;
}

}  // namespace wdd
