#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace wdd {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;

/// Reduce any integer index into [0, n).
inline std::size_t wrap(std::int64_t i, std::size_t n) {
  const auto m = static_cast<std::int64_t>(n);
  const std::int64_t r = i % m;
  return static_cast<std::size_t>(r < 0 ? r + m : r);
}

/// Fixed-length complex sequence with cyclic index semantics.
class ComplexVector {
 public:
  ComplexVector() = default;
  explicit ComplexVector(std::size_t d, Complex fill = {0.0, 0.0});
  explicit ComplexVector(std::vector<Complex> values);
  ComplexVector(std::initializer_list<Complex> values);

  static ComplexVector zeros(std::size_t d) { return ComplexVector(d); }
  static ComplexVector delta(std::size_t d, std::int64_t at = 0);

  std::size_t size() const noexcept { return v_.size(); }
  bool empty() const noexcept { return v_.empty(); }

  Complex& operator[](std::size_t i) { return v_[i]; }
  const Complex& operator[](std::size_t i) const { return v_[i]; }

  /// Cyclic access: index n resolves to n mod d.
  Complex& at(std::int64_t n) { return v_[wrap(n, v_.size())]; }
  const Complex& at(std::int64_t n) const { return v_[wrap(n, v_.size())]; }

  Complex* data() noexcept { return v_.data(); }
  const Complex* data() const noexcept { return v_.data(); }
  std::span<Complex> span() noexcept { return v_; }
  std::span<const Complex> span() const noexcept { return v_; }
  const std::vector<Complex>& values() const noexcept { return v_; }

  auto begin() noexcept { return v_.begin(); }
  auto end() noexcept { return v_.end(); }
  auto begin() const noexcept { return v_.begin(); }
  auto end() const noexcept { return v_.end(); }

  double norm() const;
  double norm_sq() const;
  double max_abs() const;

  ComplexVector& operator+=(const ComplexVector& o);
  ComplexVector& operator-=(const ComplexVector& o);
  ComplexVector& operator*=(Complex s);

  friend ComplexVector operator+(ComplexVector a, const ComplexVector& b) { return a += b; }
  friend ComplexVector operator-(ComplexVector a, const ComplexVector& b) { return a -= b; }
  friend ComplexVector operator*(Complex s, ComplexVector a) { return a *= s; }
  friend ComplexVector operator*(ComplexVector a, Complex s) { return a *= s; }

  bool operator==(const ComplexVector&) const = default;

 private:
  std::vector<Complex> v_;
};

// Transforms. Forward is unnormalized, the inverse carries 1/d.
ComplexVector dft(const ComplexVector& x);
ComplexVector idft(const ComplexVector& x);
ComplexVector dft_direct(const ComplexVector& x);
ComplexVector idft_direct(const ComplexVector& x);

/// (S_l x)_j = x_{j+l}
ComplexVector circular_shift(const ComplexVector& x, std::int64_t l);
/// (W_k x)_j = e^{2 pi i jk/d} x_j
ComplexVector modulate(const ComplexVector& x, std::int64_t k);
/// (R x)_n = x_{-n}
ComplexVector reverse(const ComplexVector& x);
ComplexVector conj(const ComplexVector& x);
/// conj(reverse(x)), written x tilde bar in autocorrelations.
ComplexVector conj_reverse(const ComplexVector& x);

ComplexVector circular_convolve(const ComplexVector& x, const ComplexVector& y);
ComplexVector circular_convolve_direct(const ComplexVector& x, const ComplexVector& y);

ComplexVector hadamard(const ComplexVector& x, const ComplexVector& y);

/// Default relative threshold for quotient: eps = 1e-12 * max|y|.
inline constexpr double kQuotientRelEps = 1e-12;
/// Entrywise x/y. Throws NearZeroDenominator when some |y_n| <= eps.
/// A negative `eps` selects the default relative threshold.
ComplexVector quotient(const ComplexVector& x, const ComplexVector& y, double eps = -1.0);
/// |x_n|^2 as a complex vector with zero imaginary part.
ComplexVector abs_sq(const ComplexVector& x);

/// (Z_s x)_n = x_{ns}, length d/s. Throws NonDivisor.
ComplexVector subsample(const ComplexVector& x, std::size_t s);
/// Sum of the s blocks of length d/s; F_{d/s}(fold(v)) = Z_s F_d(v).
ComplexVector fold(const ComplexVector& x, std::size_t blocks_len);

/// <x, y> = sum x_n conj(y_n)
Complex inner(const ComplexVector& x, const ComplexVector& y);
/// min over theta of ||x - e^{i theta} y||.
double phase_distance(const ComplexVector& x, const ComplexVector& y);
/// Rotate y by the global phase that best aligns it with x.
ComplexVector align_phase(const ComplexVector& x, const ComplexVector& y);

/// x o S_a conj(x), the a-th diagonal of the lifted matrix x x^*.
ComplexVector shifted_autocorrelation(const ComplexVector& x, std::int64_t a);

/// d x d matrix supported on the cyclic band |j-k| < kappa, stored as d x (2kappa-1)
/// with column c holding the offset alpha = c - (kappa-1).
class BandedMatrix {
 public:
  BandedMatrix() = default;
  BandedMatrix(std::size_t d, std::size_t kappa);

  /// C_{2k-1}(M): entry (j, j+alpha) = M(j, alpha + kappa - 1).
  static BandedMatrix embed(const CMatrix& m);
  static BandedMatrix from_bands(const std::vector<ComplexVector>& bands);

  std::size_t dim() const noexcept { return d_; }
  std::size_t halfwidth() const noexcept { return kappa_; }

  bool in_band(std::size_t j, std::size_t k) const;
  /// Entry (j, k) of the full matrix; zero off the band.
  Complex operator()(std::size_t j, std::size_t k) const;
  Complex& band_entry(std::size_t j, std::int64_t alpha);
  Complex band_entry(std::size_t j, std::int64_t alpha) const;

  /// Diagonal alpha as a length-d vector, entry j = (j, j+alpha).
  ComplexVector band(std::int64_t alpha) const;
  void set_band(std::int64_t alpha, const ComplexVector& v);

  const CMatrix& storage() const noexcept { return m_; }

  ComplexVector multiply(const ComplexVector& v) const;
  CMatrix to_dense() const;
  BandedMatrix hermitianized() const;
  /// Entrywise z/|z| inside the band, with sgn(0) = 1; off-band stays zero.
  BandedMatrix sign_normalized() const;
  ComplexVector diagonal() const { return band(0); }
  /// Maximum absolute column sum.
  double one_norm() const;

 private:
  std::size_t d_ = 0;
  std::size_t kappa_ = 0;
  CMatrix m_;
};

}  // namespace wdd
