#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wdd/masks.hpp"
#include "wdd/measure.hpp"
#include "wdd/pipelines.hpp"

namespace wdd::cli {

enum class Algorithm { Alg1, Alg2, Compact, HioEr };

const char* to_string(Algorithm a) noexcept;
/// Accepts alg1, alg2, compact, hioer (also hio_er).
Algorithm parse_algorithm(const std::string& s);

struct ExperimentConfig {
  Algorithm algorithm = Algorithm::Alg1;
  std::size_t d = 60;
  std::size_t rho = 8;
  std::size_t delta = 10;
  std::size_t gamma = 10;
  /// 0: derived from the other sizes.
  std::size_t kappa = 0;
  std::size_t K = 0;
  std::size_t L = 0;
  /// nullopt: exponential mask of the kind the algorithm needs.
  std::optional<MaskKind> mask;
  std::optional<std::uint64_t> mask_seed;
  std::vector<double> snr_db;
  std::size_t trials = 1;
  std::string output;
  Alg2Solver solver = Alg2Solver::Pinv;
  double q = 0.8;
  std::size_t tikhonov_iterations = 20;
  /// nullopt: L-curve.
  std::optional<double> alpha0;

  /// Fills derived sizes (K = d for alg1, L = d for compact, ...) and checks every
  /// divisibility and range constraint. Throws wdd::Error naming the violation.
  void resolve();
};

/// Mask for the configured algorithm; random masks draw from `seed` unless mask_seed is set.
Mask build_mask(const ExperimentConfig& cfg, std::uint64_t seed);

/// Random signal for the configured algorithm: complex Gaussian, or gamma-bandlimited for alg2.
ComplexVector random_signal(const ExperimentConfig& cfg, std::uint64_t seed);

struct Trial {
  ComplexVector truth;
  MeasurementSet y;
};

/// Signal from derive_seed(seed, 1), noise from derive_seed(seed, 2).
Trial make_trial(const ExperimentConfig& cfg, const Mask& m, std::uint64_t seed, double snr_db);

RecoveryResult run_algorithm(Algorithm alg, const ExperimentConfig& cfg, const MeasurementSet& y, const Mask& m,
                             const std::optional<ComplexVector>& truth = std::nullopt);

/// rho = ceil(1.25 log2 d), L = rho + ceil(rho/2) - 1, d rounded up to the first multiple
/// m L with m 7-smooth, so the length-d transforms stay fast.
ExperimentConfig bench_config(std::size_t d_requested);

}  // namespace wdd::cli
