#pragma once

#include <cstdint>
#include <vector>

#include "wdd/core_dsp.hpp"
#include "wdd/masks.hpp"
#include "wdd/measure.hpp"

namespace wdd {

/// Y tilde = F_L Y^T F_K^T, an L x K complex matrix.
CMatrix double_fft(const RMatrix& Y);
CMatrix double_fft(const MeasurementSet& y);

enum class BandTarget { Fourier, Space };

/// Estimated diagonals of x^ x^* (Fourier) or x x^* (Space), offsets 1-kappa..kappa-1.
struct BandSet {
  BandTarget target = BandTarget::Fourier;
  std::size_t kappa = 0;
  /// bands[alpha + kappa - 1] estimates v o S_alpha conj(v).
  std::vector<ComplexVector> bands;
  /// The same bands before the inverse DFT.
  std::vector<ComplexVector> spectra;
  /// Smallest divisor magnitude used.
  double min_denominator = 0.0;

  std::size_t dim() const { return bands.empty() ? 0 : bands.front().size(); }
  const ComplexVector& band(std::int64_t alpha) const {
    return bands[static_cast<std::size_t>(alpha + static_cast<std::int64_t>(kappa) - 1)];
  }
};

/// V(omega + delta - 1, alpha + gamma - 1) estimates F(x^ o S_alpha conj(x^))_omega.
struct CollapsedTable {
  CMatrix V;
  std::size_t delta = 0;
  std::size_t gamma = 0;
  double min_denominator = 0.0;

  Complex at(std::int64_t omega, std::int64_t alpha) const {
    return V(static_cast<Eigen::Index>(omega + static_cast<std::int64_t>(delta) - 1),
             static_cast<Eigen::Index>(alpha + static_cast<std::int64_t>(gamma) - 1));
  }
};

/// Divisor guard: refuse when the smallest denominator magnitude is below 1e-10 * d.
inline constexpr double kWddRelEps = 1e-10;

/// Row of Y tilde holding shift alpha: -alpha for alpha <= 0, L - alpha otherwise.
std::size_t shift_row(std::int64_t alpha, std::size_t L);
/// Column of Y tilde holding frequency omega: omega + K for omega <= -1, omega otherwise.
std::size_t freq_col(std::int64_t omega, std::size_t K);

/// Fourier-bandlimited mask, K = d, L >= rho + kappa - 1.
BandSet collapse_bandlimited_mask(const CMatrix& Ytilde, const Mask& m, std::size_t kappa);
/// Compactly supported mask, bandlimited signal: K = 2 delta - 1, L = 2 gamma - 1.
CollapsedTable collapse_bandlimited_signal(const CMatrix& Ytilde, const Mask& m, std::size_t gamma);
/// Compactly supported mask, L = d, K >= delta + kappa - 1; bands of x x^*.
BandSet collapse_compact_mask(const CMatrix& Ytilde, const Mask& m, std::size_t kappa);

}  // namespace wdd
