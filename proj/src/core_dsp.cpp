#include "wdd/core_dsp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "wdd/error.hpp"
#include "wdd/fft.hpp"

namespace wdd {
namespace {

void require_same_length(const ComplexVector& x, const ComplexVector& y, const char* op) {
  if (x.size() != y.size()) {
    throw Error(ErrorKind::LengthMismatch, std::string(op) + ": lengths " +
                                               std::to_string(x.size()) + " and " +
                                               std::to_string(y.size()) + " differ");
  }
}

// e^{sign 2 pi i t/d} with t reduced mod d first so large products stay exact.
Complex unit_root(std::int64_t t, std::size_t d, double sign) {
  const double angle = sign * 2.0 * std::numbers::pi * static_cast<double>(wrap(t, d)) /
                       static_cast<double>(d);
  return {std::cos(angle), std::sin(angle)};
}

}  // namespace

ComplexVector::ComplexVector(std::size_t d, Complex fill) : v_(d, fill) {}
ComplexVector::ComplexVector(std::vector<Complex> values) : v_(std::move(values)) {}
ComplexVector::ComplexVector(std::initializer_list<Complex> values) : v_(values) {}

ComplexVector ComplexVector::delta(std::size_t d, std::int64_t at) {
  ComplexVector e(d);
  e.at(at) = 1.0;
  return e;
}

double ComplexVector::norm_sq() const {
  double s = 0.0;
  for (const auto& z : v_) s += std::norm(z);
  return s;
}

double ComplexVector::norm() const { return std::sqrt(norm_sq()); }

double ComplexVector::max_abs() const {
  double m = 0.0;
  for (const auto& z : v_) m = std::max(m, std::abs(z));
  return m;
}

ComplexVector& ComplexVector::operator+=(const ComplexVector& o) {
  require_same_length(*this, o, "operator+");
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] += o.v_[i];
  return *this;
}

ComplexVector& ComplexVector::operator-=(const ComplexVector& o) {
  require_same_length(*this, o, "operator-");
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] -= o.v_[i];
  return *this;
}

ComplexVector& ComplexVector::operator*=(Complex s) {
  for (auto& z : v_) z *= s;
  return *this;
}

ComplexVector dft(const ComplexVector& x) {
  ComplexVector out = x;
  fft::transform(out.span(), fft::Direction::Forward);
  return out;
}

ComplexVector idft(const ComplexVector& x) {
  ComplexVector out = x;
  if (out.empty()) return out;
  fft::transform(out.span(), fft::Direction::Backward);
  out *= 1.0 / static_cast<double>(out.size());
  return out;
}

ComplexVector dft_direct(const ComplexVector& x) {
  const std::size_t d = x.size();
  ComplexVector out(d);
  for (std::size_t k = 0; k < d; ++k) {
    Complex s = 0.0;
    for (std::size_t n = 0; n < d; ++n) {
      s += x[n] * unit_root(static_cast<std::int64_t>(n * k), d, -1.0);
    }
    out[k] = s;
  }
  return out;
}

ComplexVector idft_direct(const ComplexVector& x) {
  const std::size_t d = x.size();
  ComplexVector out(d);
  for (std::size_t n = 0; n < d; ++n) {
    Complex s = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
      s += x[k] * unit_root(static_cast<std::int64_t>(n * k), d, 1.0);
    }
    out[n] = s / static_cast<double>(d);
  }
  return out;
}

ComplexVector circular_shift(const ComplexVector& x, std::int64_t l) {
  const std::size_t d = x.size();
  ComplexVector out(d);
  if (d == 0) return out;
  const std::size_t s = wrap(l, d);
  for (std::size_t j = 0; j < d; ++j) out[j] = x[(j + s) % d];
  return out;
}

ComplexVector modulate(const ComplexVector& x, std::int64_t k) {
  const std::size_t d = x.size();
  ComplexVector out(d);
  if (d == 0) return out;
  const std::size_t kk = wrap(k, d);
  for (std::size_t j = 0; j < d; ++j) {
    out[j] = x[j] * unit_root(static_cast<std::int64_t>((j * kk) % d), d, 1.0);
  }
  return out;
}

ComplexVector reverse(const ComplexVector& x) {
  const std::size_t d = x.size();
  ComplexVector out(d);
  for (std::size_t n = 0; n < d; ++n) out[n] = x[(d - n) % d];
  return out;
}

ComplexVector conj(const ComplexVector& x) {
  ComplexVector out = x;
  for (auto& z : out) z = std::conj(z);
  return out;
}

ComplexVector conj_reverse(const ComplexVector& x) { return conj(reverse(x)); }

ComplexVector circular_convolve(const ComplexVector& x, const ComplexVector& y) {
  require_same_length(x, y, "circular_convolve");
  return idft(hadamard(dft(x), dft(y)));
}

ComplexVector circular_convolve_direct(const ComplexVector& x, const ComplexVector& y) {
  require_same_length(x, y, "circular_convolve");
  const std::size_t d = x.size();
  ComplexVector out(d);
  for (std::size_t l = 0; l < d; ++l) {
    Complex s = 0.0;
    for (std::size_t n = 0; n < d; ++n) s += x[n] * y[(l + d - n) % d];
    out[l] = s;
  }
  return out;
}

ComplexVector hadamard(const ComplexVector& x, const ComplexVector& y) {
  require_same_length(x, y, "hadamard");
  ComplexVector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] * y[i];
  return out;
}

ComplexVector quotient(const ComplexVector& x, const ComplexVector& y, double eps) {
  require_same_length(x, y, "quotient");
  const double threshold = eps < 0.0 ? kQuotientRelEps * y.max_abs() : eps;
  ComplexVector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double mag = std::abs(y[i]);
    if (mag <= threshold) throw NearZeroDenominator(i, mag, threshold, "quotient");
    out[i] = x[i] / y[i];
  }
  return out;
}

ComplexVector abs_sq(const ComplexVector& x) {
  ComplexVector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = std::norm(x[i]);
  return out;
}

ComplexVector subsample(const ComplexVector& x, std::size_t s) {
  const std::size_t d = x.size();
  if (s == 0 || d % s != 0) {
    throw Error(ErrorKind::NonDivisor, "subsample: step " + std::to_string(s) +
                                           " does not divide d=" + std::to_string(d));
  }
  ComplexVector out(d / s);
  for (std::size_t n = 0; n < d / s; ++n) out[n] = x[n * s];
  return out;
}

ComplexVector fold(const ComplexVector& x, std::size_t blocks_len) {
  const std::size_t d = x.size();
  if (blocks_len == 0 || d % blocks_len != 0) {
    throw Error(ErrorKind::NonDivisor, "fold: length " + std::to_string(blocks_len) +
                                           " does not divide d=" + std::to_string(d));
  }
  ComplexVector out(blocks_len);
  for (std::size_t n = 0; n < d; ++n) out[n % blocks_len] += x[n];
  return out;
}

Complex inner(const ComplexVector& x, const ComplexVector& y) {
  require_same_length(x, y, "inner");
  Complex s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * std::conj(y[i]);
  return s;
}

double phase_distance(const ComplexVector& x, const ComplexVector& y) {
  ComplexVector diff = x;
  diff -= align_phase(x, y);
  return diff.norm();
}

ComplexVector align_phase(const ComplexVector& x, const ComplexVector& y) {
  const Complex c = inner(x, y);
  const double a = std::abs(c);
  return a > 0.0 ? (c / a) * y : y;
}

ComplexVector shifted_autocorrelation(const ComplexVector& x, std::int64_t a) {
  return hadamard(x, conj(circular_shift(x, a)));
}

BandedMatrix::BandedMatrix(std::size_t d, std::size_t kappa) : d_(d), kappa_(kappa) {
  if (kappa == 0 || 2 * kappa - 1 > d) {
    throw Error(ErrorKind::InvalidParameter, "banded matrix: 2*kappa-1=" +
                                                 std::to_string(2 * kappa - 1) +
                                                 " exceeds d=" + std::to_string(d));
  }
  m_ = CMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(2 * kappa - 1));
}

BandedMatrix BandedMatrix::embed(const CMatrix& m) {
  if (m.cols() % 2 == 0) {
    throw Error(ErrorKind::InvalidParameter, "banded matrix: band count must be odd");
  }
  BandedMatrix out(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols() + 1) / 2);
  out.m_ = m;
  return out;
}

BandedMatrix BandedMatrix::from_bands(const std::vector<ComplexVector>& bands) {
  if (bands.empty() || bands.size() % 2 == 0) {
    throw Error(ErrorKind::InvalidParameter, "banded matrix: band count must be odd");
  }
  const std::size_t kappa = (bands.size() + 1) / 2;
  BandedMatrix out(bands.front().size(), kappa);
  for (std::size_t c = 0; c < bands.size(); ++c) {
    out.set_band(static_cast<std::int64_t>(c) - static_cast<std::int64_t>(kappa - 1), bands[c]);
  }
  return out;
}

bool BandedMatrix::in_band(std::size_t j, std::size_t k) const {
  const std::size_t off = (k + d_ - j) % d_;
  return off < kappa_ || off > d_ - kappa_;
}

Complex BandedMatrix::operator()(std::size_t j, std::size_t k) const {
  const std::size_t off = (k + d_ - j) % d_;
  if (off < kappa_) return m_(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(off + kappa_ - 1));
  if (off > d_ - kappa_) {
    return m_(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(off + kappa_ - 1 - d_));
  }
  return 0.0;
}

Complex& BandedMatrix::band_entry(std::size_t j, std::int64_t alpha) {
  return m_(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(alpha + static_cast<std::int64_t>(kappa_) - 1));
}

Complex BandedMatrix::band_entry(std::size_t j, std::int64_t alpha) const {
  return m_(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(alpha + static_cast<std::int64_t>(kappa_) - 1));
}

ComplexVector BandedMatrix::band(std::int64_t alpha) const {
  const auto k = static_cast<std::int64_t>(kappa_);
  if (alpha <= -k || alpha >= k) return ComplexVector(d_);
  ComplexVector out(d_);
  for (std::size_t j = 0; j < d_; ++j) out[j] = band_entry(j, alpha);
  return out;
}

void BandedMatrix::set_band(std::int64_t alpha, const ComplexVector& v) {
  const auto k = static_cast<std::int64_t>(kappa_);
  if (alpha <= -k || alpha >= k) {
    throw Error(ErrorKind::InvalidParameter, "banded matrix: offset " + std::to_string(alpha) +
                                                 " outside the band");
  }
  if (v.size() != d_) throw Error(ErrorKind::LengthMismatch, "banded matrix: band length");
  for (std::size_t j = 0; j < d_; ++j) band_entry(j, alpha) = v[j];
}

ComplexVector BandedMatrix::multiply(const ComplexVector& v) const {
  if (v.size() != d_) throw Error(ErrorKind::LengthMismatch, "banded matrix: vector length");
  ComplexVector out(d_);
  const auto k = static_cast<std::int64_t>(kappa_);
  for (std::size_t j = 0; j < d_; ++j) {
    Complex s = 0.0;
    for (std::int64_t a = 1 - k; a < k; ++a) {
      s += band_entry(j, a) * v.at(static_cast<std::int64_t>(j) + a);
    }
    out[j] = s;
  }
  return out;
}

CMatrix BandedMatrix::to_dense() const {
  CMatrix out = CMatrix::Zero(static_cast<Eigen::Index>(d_), static_cast<Eigen::Index>(d_));
  const auto k = static_cast<std::int64_t>(kappa_);
  for (std::size_t j = 0; j < d_; ++j) {
    for (std::int64_t a = 1 - k; a < k; ++a) {
      out(static_cast<Eigen::Index>(j),
          static_cast<Eigen::Index>(wrap(static_cast<std::int64_t>(j) + a, d_))) = band_entry(j, a);
    }
  }
  return out;
}

BandedMatrix BandedMatrix::hermitianized() const {
  BandedMatrix out(d_, kappa_);
  const auto k = static_cast<std::int64_t>(kappa_);
  for (std::size_t j = 0; j < d_; ++j) {
    for (std::int64_t a = 1 - k; a < k; ++a) {
      // (M^*)_{j, j+a} = conj(M_{j+a, j}) = conj(band_{-a} at row j+a)
      const std::size_t r = wrap(static_cast<std::int64_t>(j) + a, d_);
      out.band_entry(j, a) = 0.5 * (band_entry(j, a) + std::conj(band_entry(r, -a)));
    }
  }
  return out;
}

BandedMatrix BandedMatrix::sign_normalized() const {
  BandedMatrix out(d_, kappa_);
  for (Eigen::Index j = 0; j < m_.rows(); ++j) {
    for (Eigen::Index c = 0; c < m_.cols(); ++c) {
      const Complex z = m_(j, c);
      const double a = std::abs(z);
      out.m_(j, c) = a > 0.0 ? z / a : Complex(1.0, 0.0);
    }
  }
  return out;
}

double BandedMatrix::one_norm() const {
  std::vector<double> col(d_, 0.0);
  const auto k = static_cast<std::int64_t>(kappa_);
  for (std::size_t j = 0; j < d_; ++j) {
    for (std::int64_t a = 1 - k; a < k; ++a) {
      col[wrap(static_cast<std::int64_t>(j) + a, d_)] += std::abs(band_entry(j, a));
    }
  }
  return col.empty() ? 0.0 : *std::max_element(col.begin(), col.end());
}

}  // namespace wdd
