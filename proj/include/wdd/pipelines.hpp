#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wdd/angsync.hpp"
#include "wdd/core_dsp.hpp"
#include "wdd/masks.hpp"
#include "wdd/measure.hpp"
#include "wdd/tiksolve.hpp"

namespace wdd {

/// Floor for error_db so identical vectors give a finite value.
inline constexpr double kErrorDbFloor = -320.0;

struct Diagnostics {
  double min_denominator = 0.0;
  double eigenvalue = 0.0;
  std::size_t eigen_iterations = 0;
  double eigen_residual = 0.0;
  bool eigen_converged = true;
  std::vector<double> tikhonov_residuals;
  double alpha0 = 0.0;
  std::size_t hio_iterations = 0;
  double hio_residual = 0.0;
  std::vector<std::string> warnings;
};

struct RecoveryResult {
  ComplexVector x_e;
  std::optional<double> error_db;
  double runtime_seconds = 0.0;
  std::string algorithm;
  Diagnostics diagnostics;
};

/// 10 log10(min_theta ||e^{i theta} x_e - x||^2 / ||x||^2), floored at -320.
double error_db(const ComplexVector& x_true, const ComplexVector& x_e);
/// min_theta ||x - e^{i theta} x_e|| / ||x||
double relative_error(const ComplexVector& x_true, const ComplexVector& x_e);

/// Fourier-bandlimited mask, K = d, kappa = L - rho + 1.
RecoveryResult algorithm1(const MeasurementSet& y, const Mask& m,
                          const std::optional<ComplexVector>& truth = std::nullopt,
                          const EigenOptions& eig = {});

enum class Alg2Solver { Pinv, Tikhonov };

struct Alg2Options {
  Alg2Solver solver = Alg2Solver::Pinv;
  TikhonovConfig tikhonov;
  /// Choose alpha0 by the L-curve instead of tikhonov.alpha0.
  bool auto_alpha0 = true;
  EigenOptions eig;
};

/// Compactly supported mask, x bandlimited to [gamma]_0, K = 2 delta - 1, L = 2 gamma - 1.
RecoveryResult algorithm2(const MeasurementSet& y, const Mask& m, std::size_t gamma,
                          const Alg2Options& opt = {},
                          const std::optional<ComplexVector>& truth = std::nullopt);

/// Compactly supported mask, L = d, kappa = min(delta, K - delta + 1).
RecoveryResult compact_mask_pipeline(const MeasurementSet& y, const Mask& m,
                                const std::optional<ComplexVector>& truth = std::nullopt,
                                const EigenOptions& eig = {});

struct HioOptions {
  std::size_t hio_block = 25;
  std::size_t er_block = 5;
  std::size_t max_iter = 600;
  double beta = 0.9;
  /// Defaults to zero.
  std::optional<ComplexVector> x0;
};

/// Relative magnitude misfit || |A x| - sqrt(Y) ||_F / ||sqrt(Y)||_F.
double magnitude_residual(const MeasurementSet& y, const ComplexVector& m, const ComplexVector& x);

/// HIO/ER alternating projections in measurement space.
RecoveryResult hio_er(const MeasurementSet& y, const Mask& m, const HioOptions& opt = {},
                      const std::optional<ComplexVector>& truth = std::nullopt);

/// Right-hand side of the Algorithm 1 error bound (absolute error).
double alg1_error_bound(std::size_t d, std::size_t L, std::size_t kappa, double mu1,
                      double xhat_inf, double xhat_min, double noise_fro, double C = 1e3,
                      double Cprime = 1e3);
/// Right-hand side of the Algorithm 2 relative error bound.
double alg2_error_bound(std::size_t d, std::size_t K, std::size_t L, double sigma_gamma, double mu2,
                      double noise_fro, double x_norm);

}  // namespace wdd
