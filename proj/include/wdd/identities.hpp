#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wdd/core_dsp.hpp"

namespace wdd::identities {

struct Check {
  std::string suite;
  std::string name;
  double max_rel_error = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

/// Deliberate faults for exercising the failure path of the self-check.
struct Faults {
  /// Flip the sign of the exponent in the shifted-product phase factor.
  bool shifted_product_sign = false;
};

/// ||a - b||_inf / max(||a||_inf, ||b||_inf), 0 when both vanish.
double rel_diff(const ComplexVector& a, const ComplexVector& b);
double rel_diff(const CMatrix& a, const CMatrix& b);

ComplexVector random_vector(std::size_t d, std::uint64_t seed);

std::vector<Check> dft_properties(std::size_t d, std::uint64_t seed, double tol = 1e-10);
std::vector<Check> convolution_theorem(std::size_t d, std::uint64_t seed, double tol = 1e-10);
std::vector<Check> shifted_product_spectrum(std::size_t d, std::uint64_t seed, double tol = 1e-10, const Faults& f = {});
std::vector<Check> reversed_autocorrelation(std::size_t d, std::uint64_t seed, double tol = 1e-10);
std::vector<Check> convolution_index_swap(std::size_t d, std::uint64_t seed, double tol = 1e-10);
std::vector<Check> aliasing(std::size_t d, std::uint64_t seed, double tol = 1e-10);
/// The four aliased double-sum expressions against double_fft, every divisor pair (K, L) of d.
std::vector<Check> aliased_wdd(std::size_t d, std::uint64_t seed, double tol = 1e-9);
/// Subsampled-column identity, every divisor K of d.
std::vector<Check> subsampled_columns(std::size_t d, std::uint64_t seed, double tol = 1e-9);
/// Column identity of the unsubsampled double FFT.
std::vector<Check> wdd_columns(std::size_t d, std::uint64_t seed, double tol = 1e-9);
/// Noiseless collapse equalities for the three single-term regimes.
std::vector<Check> collapses(std::uint64_t seed, double tol = 1e-8);
/// mu1 > 0 and mu2 > 0 for admissible masks.
std::vector<Check> mask_positivity(std::uint64_t seed);

/// Everything above at the standard sizes.
std::vector<Check> full_suite(std::uint64_t seed, const Faults& f = {});

}  // namespace wdd::identities
