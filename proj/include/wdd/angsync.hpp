#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "wdd/core_dsp.hpp"
#include "wdd/wdd.hpp"

namespace wdd {

/// (M + M^*) / 2
CMatrix hermitianize(const CMatrix& M);
/// z/|z|, with sgn(0) = 1.
Complex sgn(Complex z);
/// Entrywise sgn over every entry of M.
CMatrix sign_normalize(const CMatrix& M);

inline constexpr std::size_t kMinPowerIterations = 2000;

struct EigenOptions {
  double tol = 1e-12;
  /// 0 selects max(10 * d * max(kappa, 1), kMinPowerIterations).
  std::size_t max_iter = 0;
  /// Optional start vector; defaults to all ones.
  std::optional<ComplexVector> start;
};

struct EigenPair {
  double value = 0.0;
  ComplexVector vector;
  std::size_t iterations = 0;
  double residual = 0.0;
  bool converged = false;
};

/// Top eigenpair of a Hermitian operator by power iteration on M + cI with
/// c = ||M||_1. The eigenvector is phase-fixed so its largest entry is real positive.
/// Never throws on non-convergence; `converged` reports it and the best iterate is kept.
EigenPair leading_eigenvector(const std::function<ComplexVector(const ComplexVector&)>& apply,
                              std::size_t d, double one_norm, std::size_t kappa,
                              const EigenOptions& opt = {});
EigenPair leading_eigenvector(const CMatrix& M, const EigenOptions& opt = {});
EigenPair leading_eigenvector(const BandedMatrix& M, const EigenOptions& opt = {});

/// sqrt(max(Re M_jj, 0))
std::vector<double> magnitudes_from_diagonal(const BandedMatrix& M);

/// Walk the first kappa-1 off-diagonals to chain relative phases into an initial
/// phase vector for the power iteration.
ComplexVector propagate_phases(const BandedMatrix& normalized);

struct SyncResult {
  std::vector<double> magnitudes;
  ComplexVector phases;
  /// magnitudes o phases
  ComplexVector estimate;
  double eigenvalue = 0.0;
  std::size_t eigen_iterations = 0;
  double eigen_residual = 0.0;
  bool converged = false;
};

SyncResult synchronize(const BandSet& bands, const EigenOptions& opt = {});
SyncResult synchronize(const BandedMatrix& C, const EigenOptions& opt = {});

}  // namespace wdd
