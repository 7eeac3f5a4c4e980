#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "wdd/core_dsp.hpp"
#include "wdd/masks.hpp"

namespace wdd {

struct NoiseRecord {
  double snr_db = std::numeric_limits<double>::infinity();
  double sigma2 = 0.0;
  std::uint64_t seed = 0;
  std::string generator;
  /// Frobenius norm of the realized noise matrix.
  double frobenius = 0.0;
};

/// K x L spectrogram samples; entry (k, l) is row k*d/K, column l*d/L of the full map.
struct MeasurementSet {
  RMatrix Y;
  std::size_t d = 0;
  std::size_t K = 0;
  std::size_t L = 0;
  std::optional<NoiseRecord> noise;

  /// Shift step a = d/L.
  std::size_t shift_step() const { return d / L; }
};

/// Y_{k,l} = |sum_n x_n m_{n-l} e^{-2 pi i nk/d}|^2 for all k, l in [d]_0.
MeasurementSet spectrogram_full(const ComplexVector& x, const ComplexVector& m);
/// Rows k*d/K, columns l*d/L of the full map, without forming it.
MeasurementSet spectrogram_subsampled(const ComplexVector& x, const ComplexVector& m,
                                      std::size_t K, std::size_t L);
/// Y'_{k,l} = |sum_n x_n (m_k)_{n - l d/L}|^2 for a family of K masks.
MeasurementSet spectrogram_general(const ComplexVector& x, const std::vector<ComplexVector>& masks,
                                   std::size_t L);

/// Adds i.i.d. N(0, sigma^2) with sigma^2 = sum Y^2 / (K L 10^{snr/10}). snr_db = +inf
/// leaves Y untouched (the record still notes the request).
MeasurementSet add_noise(const MeasurementSet& clean, double snr_db, std::uint64_t seed);

/// 10 log10(sum Y^2 / ||N||_F^2); +inf for zero noise.
double snr_realized(const RMatrix& clean, const RMatrix& noise);

void write_measurements(std::ostream& os, const MeasurementSet& y);
MeasurementSet read_measurements(std::istream& is);
void write_measurements_file(const std::string& path, const MeasurementSet& y);
MeasurementSet read_measurements_file(const std::string& path);

/// Throws NonDivisor naming the violated constraint ("L must divide d").
void require_divides(std::size_t n, std::size_t d, const char* name);

}  // namespace wdd
