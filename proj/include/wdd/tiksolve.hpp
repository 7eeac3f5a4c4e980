#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "wdd/core_dsp.hpp"

namespace wdd {

/// W_{j,k} = e^{-2 pi i (j - delta + 1) k / d}, j in [2 delta - 1]_0, k in [gamma]_0.
struct VandermondeSystem {
  std::size_t d = 0;
  std::size_t delta = 0;
  std::size_t gamma = 0;
  CMatrix W;
  CMatrix WtW;
  Eigen::LLT<CMatrix> llt;
  double sigma_min = 0.0;
  double sigma_max = 0.0;
};

VandermondeSystem build_vandermonde(std::size_t d, std::size_t delta, std::size_t gamma);

/// A = (W^*W)^{-1} W^* V.
CMatrix pinv_solve(const VandermondeSystem& sys, const CMatrix& V);
/// (W^*W + alpha I)^{-1} W^* R
CMatrix tikhonov_step(const VandermondeSystem& sys, const CMatrix& R, double alpha);

/// G(i, j) = A(i, j - i + gamma - 1).
CMatrix reshape_to_G(const CMatrix& A);
/// Inverse of reshape_to_G onto the band pattern of A; other entries are zero.
CMatrix embed_from_G(const CMatrix& G);

struct RankOne {
  double tau = 0.0;
  Eigen::VectorXcd u;
  Eigen::VectorXcd v;
  std::size_t iterations = 0;
  bool converged = false;

  CMatrix matrix() const { return tau * u * v.adjoint(); }
};

/// Leading singular triple by power iteration on G^*G.
RankOne rank_one_approx(const CMatrix& G, double tol = 1e-14, std::size_t max_iter = 0);

struct TikhonovConfig {
  double alpha0 = 1.0;
  double q = 0.8;
  std::size_t iterations = 20;

  void validate() const;
};

struct TikhonovResult {
  CMatrix G;
  /// ||V - W A||_F after each iteration's correction.
  std::vector<double> residuals;
};

TikhonovResult iterated_tikhonov(const VandermondeSystem& sys, const CMatrix& V, const TikhonovConfig& cfg);

struct LCurveOptions {
  double alpha_min = 1e-12;
  double alpha_max = 1e2;
  std::size_t points = 60;
};

struct LCurveResult {
  double alpha = 0.0;
  bool degenerate = false;
  std::string warning;
  std::vector<double> alphas;
  std::vector<double> residual_norms;
  std::vector<double> solution_norms;
  std::vector<double> curvature;
};

/// Maximum-curvature point of (log ||WA - V||, log ||A||) over a log grid of alpha.
LCurveResult lcurve(const VandermondeSystem& sys, const CMatrix& V, const LCurveOptions& opt = {});
double lcurve_alpha0(const VandermondeSystem& sys, const CMatrix& V, const LCurveOptions& opt = {});

}  // namespace wdd
