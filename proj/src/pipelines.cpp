#include "wdd/pipelines.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "wdd/error.hpp"
#include "wdd/fft.hpp"
#include "wdd/wdd.hpp"

namespace wdd {
namespace {

using Clock = std::chrono::steady_clock;
using Idx = Eigen::Index;

template <class F>
auto staged(const char* name, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    if (!e.stage().empty()) throw;
    throw e.with_stage(name);
  }
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void attach_error(RecoveryResult& r, const std::optional<ComplexVector>& truth) {
  if (!truth) return;
  if (truth->norm() == 0.0) {
    r.diagnostics.warnings.push_back("truth has zero norm; error_db undefined");
    return;
  }
  r.error_db = error_db(*truth, r.x_e);
}

void fill_sync(Diagnostics& dg, const SyncResult& s) {
  dg.eigenvalue = s.eigenvalue;
  dg.eigen_iterations = s.eigen_iterations;
  dg.eigen_residual = s.eigen_residual;
  dg.eigen_converged = s.converged;
  if (!s.converged) dg.warnings.push_back("eigen-solver hit max_iter; best iterate used");
}

// Spectrogram samples as a linear map of x: z(k, l) = F_K(fold_K(x o w_l))_k, w_l = S_{-la} m.
class StftOperator {
 public:
  StftOperator(const ComplexVector& m, std::size_t K, std::size_t L)
      : d_(m.size()), K_(K), L_(L), blocks_(K) {
    require_divides(K, d_, "K");
    require_divides(L, d_, "L");
    const std::size_t a = d_ / L;
    for (std::size_t l = 0; l < L; ++l) windows_.push_back(circular_shift(m, -static_cast<std::int64_t>(l * a)));
    const std::size_t nb = d_ / K;
    for (std::size_t r = 0; r < K; ++r) {
      CMatrix B = CMatrix::Zero(static_cast<Idx>(nb), static_cast<Idx>(nb));
      for (const auto& w : windows_) {
        for (std::size_t j = 0; j < nb; ++j) {
          for (std::size_t jp = 0; jp < nb; ++jp) {
            B(static_cast<Idx>(j), static_cast<Idx>(jp)) +=
                static_cast<double>(K) * std::conj(w[r + j * K]) * w[r + jp * K];
          }
        }
      }
      Eigen::SelfAdjointEigenSolver<CMatrix> es(B);
      const Eigen::VectorXd ev = es.eigenvalues();
      const double cut = 1e-12 * std::max(ev.cwiseAbs().maxCoeff(), std::numeric_limits<double>::min());
      Eigen::VectorXd inv = ev.unaryExpr([cut](double v) { return v > cut ? 1.0 / v : 0.0; });
      blocks_[r] = es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().adjoint();
    }
  }

  CMatrix forward(const ComplexVector& x) const {
    CMatrix Z(static_cast<Idx>(K_), static_cast<Idx>(L_));
    ComplexVector f(K_);
    for (std::size_t l = 0; l < L_; ++l) {
      std::fill(f.begin(), f.end(), Complex(0.0));
      for (std::size_t n = 0; n < d_; ++n) f[n % K_] += x[n] * windows_[l][n];
      fft::transform(f.span(), fft::Direction::Forward);
      for (std::size_t k = 0; k < K_; ++k) Z(static_cast<Idx>(k), static_cast<Idx>(l)) = f[k];
    }
    return Z;
  }

  ComplexVector adjoint(const CMatrix& Z) const {
    ComplexVector x(d_);
    ComplexVector u(K_);
    for (std::size_t l = 0; l < L_; ++l) {
      for (std::size_t k = 0; k < K_; ++k) u[k] = Z(static_cast<Idx>(k), static_cast<Idx>(l));
      fft::transform(u.span(), fft::Direction::Backward);
      for (std::size_t n = 0; n < d_; ++n) x[n] += std::conj(windows_[l][n]) * u[n % K_];
    }
    return x;
  }

  /// (A^*A)^+ b, block by block over residues mod K.
  ComplexVector normal_solve(const ComplexVector& b) const {
    const std::size_t nb = d_ / K_;
    ComplexVector x(d_);
    Eigen::VectorXcd g(static_cast<Idx>(nb));
    for (std::size_t r = 0; r < K_; ++r) {
      for (std::size_t j = 0; j < nb; ++j) g(static_cast<Idx>(j)) = b[r + j * K_];
      const Eigen::VectorXcd s = blocks_[r] * g;
      for (std::size_t j = 0; j < nb; ++j) x[r + j * K_] = s(static_cast<Idx>(j));
    }
    return x;
  }

  ComplexVector least_squares(const CMatrix& Z) const { return normal_solve(adjoint(Z)); }

 private:
  std::size_t d_, K_, L_;
  std::vector<ComplexVector> windows_;
  std::vector<CMatrix> blocks_;
};

double magnitude_misfit(const CMatrix& Z, const RMatrix& sqrtY) {
  const double ref = sqrtY.norm();
  const double diff = (Z.cwiseAbs() - sqrtY).norm();
  return ref > 0.0 ? diff / ref : diff;
}

RMatrix sqrt_clamped(const RMatrix& Y) { return Y.cwiseMax(0.0).cwiseSqrt(); }

}  // namespace

double relative_error(const ComplexVector& x_true, const ComplexVector& x_e) {
  const double nx = x_true.norm();
  if (nx == 0.0) throw Error(ErrorKind::ZeroNorm, "error metric: truth has zero norm");
  return phase_distance(x_true, x_e) / nx;
}

double error_db(const ComplexVector& x_true, const ComplexVector& x_e) {
  const double rel = relative_error(x_true, x_e);
  if (rel == 0.0) return kErrorDbFloor;
  return std::max(kErrorDbFloor, 20.0 * std::log10(rel));
}

RecoveryResult algorithm1(const MeasurementSet& y, const Mask& m, const std::optional<ComplexVector>& truth,
                          const EigenOptions& eig) {
  const auto t0 = Clock::now();
  RecoveryResult r;
  r.algorithm = "alg1";
  const std::size_t kappa = staged("validate", [&] {
    if (m.dim() != y.d) throw Error(ErrorKind::LengthMismatch, "mask length differs from d");
    if (m.domain != SupportDomain::Fourier) throw Error(ErrorKind::InvalidParameter, "alg1 needs a fourier-supported mask");
    if (y.K != y.d) throw Error(ErrorKind::InvalidParameter, "alg1 needs K = d");
    require_divides(y.L, y.d, "L");
    if (2 * m.support >= y.d) throw Error(ErrorKind::InvalidParameter, "alg1 needs rho < d/2");
    if (y.L + 1 < m.support + 2 || y.L + 1 > 2 * m.support) {
      throw Error(ErrorKind::InvalidParameter, "alg1 needs L = rho + kappa - 1 with 2 <= kappa <= rho (L=" +
                                                   std::to_string(y.L) + ", rho=" + std::to_string(m.support) + ")");
    }
    return y.L - m.support + 1;
  });
  const CMatrix Yt = staged("double_fft", [&] { return double_fft(y); });
  const BandSet bands = staged("collapse", [&] { return collapse_bandlimited_mask(Yt, m, kappa); });
  r.diagnostics.min_denominator = bands.min_denominator;
  const SyncResult s = staged("synchronize", [&] { return synchronize(bands, eig); });
  fill_sync(r.diagnostics, s);
  r.x_e = idft(s.estimate);
  r.runtime_seconds = seconds_since(t0);
  attach_error(r, truth);
  return r;
}

RecoveryResult algorithm2(const MeasurementSet& y, const Mask& m, std::size_t gamma, const Alg2Options& opt,
                          const std::optional<ComplexVector>& truth) {
  const auto t0 = Clock::now();
  RecoveryResult r;
  r.algorithm = opt.solver == Alg2Solver::Pinv ? "alg2_pinv" : "alg2_tikhonov";
  const std::size_t delta = m.support;
  staged("validate", [&] {
    if (m.dim() != y.d) throw Error(ErrorKind::LengthMismatch, "mask length differs from d");
    if (m.domain != SupportDomain::Space) throw Error(ErrorKind::InvalidParameter, "alg2 needs a space-supported mask");
    require_divides(y.K, y.d, "K");
    require_divides(y.L, y.d, "L");
    if (gamma < 1 || gamma > 2 * delta - 1 || 2 * delta - 1 >= y.d) {
      throw Error(ErrorKind::InvalidParameter, "alg2 needs gamma <= 2*delta-1 < d");
    }
    if (y.K != 2 * delta - 1 || y.L != 2 * gamma - 1) {
      throw Error(ErrorKind::InvalidParameter, "alg2 needs K = 2*delta-1 and L = 2*gamma-1 (K=" +
                                                   std::to_string(y.K) + ", L=" + std::to_string(y.L) + ")");
    }
    return 0;
  });
  const CMatrix Yt = staged("double_fft", [&] { return double_fft(y); });
  const CollapsedTable table = staged("collapse", [&] { return collapse_bandlimited_signal(Yt, m, gamma); });
  r.diagnostics.min_denominator = table.min_denominator;
  const VandermondeSystem sys = staged("vandermonde", [&] { return build_vandermonde(y.d, delta, gamma); });
  CMatrix G = staged("solve", [&] {
    if (opt.solver == Alg2Solver::Pinv) return hermitianize(reshape_to_G(pinv_solve(sys, table.V)));
    TikhonovConfig cfg = opt.tikhonov;
    if (opt.auto_alpha0) {
      const LCurveResult lc = lcurve(sys, table.V);
      cfg.alpha0 = lc.alpha;
      if (lc.degenerate) r.diagnostics.warnings.push_back(lc.warning);
    }
    r.diagnostics.alpha0 = cfg.alpha0;
    TikhonovResult tr = iterated_tikhonov(sys, table.V, cfg);
    r.diagnostics.tikhonov_residuals = tr.residuals;
    return hermitianize(tr.G);
  });
  const EigenPair ep = staged("eigen", [&] { return leading_eigenvector(G, opt.eig); });
  r.diagnostics.eigenvalue = ep.value;
  r.diagnostics.eigen_iterations = ep.iterations;
  r.diagnostics.eigen_residual = ep.residual;
  r.diagnostics.eigen_converged = ep.converged;
  ComplexVector xhat(y.d);
  const double scale = std::sqrt(std::abs(ep.value));
  for (std::size_t i = 0; i < gamma; ++i) xhat[i] = scale * ep.vector[i];
  r.x_e = idft(xhat);
  r.runtime_seconds = seconds_since(t0);
  attach_error(r, truth);
  return r;
}

RecoveryResult compact_mask_pipeline(const MeasurementSet& y, const Mask& m, const std::optional<ComplexVector>& truth,
                                const EigenOptions& eig) {
  const auto t0 = Clock::now();
  RecoveryResult r;
  r.algorithm = "compact";
  const std::size_t kappa = staged("validate", [&] {
    if (m.dim() != y.d) throw Error(ErrorKind::LengthMismatch, "mask length differs from d");
    if (m.domain != SupportDomain::Space) throw Error(ErrorKind::InvalidParameter, "compact pipeline needs a space-supported mask");
    require_divides(y.K, y.d, "K");
    if (y.L != y.d) throw Error(ErrorKind::InvalidParameter, "compact pipeline needs L = d");
    if (y.K + 1 < m.support + 2) {
      throw Error(ErrorKind::InvalidParameter, "compact pipeline needs K = delta + kappa - 1 with kappa >= 2 (K=" +
                                                   std::to_string(y.K) + ", delta=" + std::to_string(m.support) + ")");
    }
    std::size_t k = std::min(m.support, y.K - m.support + 1);
    k = std::min(k, (y.d + 1) / 2);
    return k;
  });
  const CMatrix Yt = staged("double_fft", [&] { return double_fft(y); });
  const BandSet bands = staged("collapse", [&] { return collapse_compact_mask(Yt, m, kappa); });
  r.diagnostics.min_denominator = bands.min_denominator;
  const SyncResult s = staged("synchronize", [&] { return synchronize(bands, eig); });
  fill_sync(r.diagnostics, s);
  r.x_e = s.estimate;
  r.runtime_seconds = seconds_since(t0);
  attach_error(r, truth);
  return r;
}

double magnitude_residual(const MeasurementSet& y, const ComplexVector& m, const ComplexVector& x) {
  const StftOperator A(m, y.K, y.L);
  return magnitude_misfit(A.forward(x), sqrt_clamped(y.Y));
}

RecoveryResult hio_er(const MeasurementSet& y, const Mask& m, const HioOptions& opt,
                      const std::optional<ComplexVector>& truth) {
  const auto t0 = Clock::now();
  RecoveryResult r;
  r.algorithm = "hio_er";
  const StftOperator A = staged("validate", [&] {
    if (m.dim() != y.d) throw Error(ErrorKind::LengthMismatch, "mask length differs from d");
    if (opt.hio_block + opt.er_block == 0) throw Error(ErrorKind::InvalidParameter, "hio_er: empty schedule");
    return StftOperator(m.values, y.K, y.L);
  });
  const RMatrix sqrtY = sqrt_clamped(y.Y);
  auto project_magnitude = [&](const CMatrix& z) {
    CMatrix out(z.rows(), z.cols());
    for (Idx j = 0; j < z.cols(); ++j) {
      for (Idx i = 0; i < z.rows(); ++i) out(i, j) = sqrtY(i, j) * sgn(z(i, j));
    }
    return out;
  };

  ComplexVector x = opt.x0 ? *opt.x0 : ComplexVector(y.d);
  if (x.size() != y.d) throw Error(ErrorKind::LengthMismatch, "hio_er: x0 length", "validate");
  CMatrix z = A.forward(x);
  ComplexVector best_x = x;
  double best_res = magnitude_misfit(z, sqrtY);
  std::size_t best_it = 0;
  const std::size_t period = opt.hio_block + opt.er_block;
  for (std::size_t it = 1; it <= opt.max_iter; ++it) {
    const bool hio = ((it - 1) % period) < opt.hio_block;
    const CMatrix pm = project_magnitude(z);
    const ComplexVector xs = A.least_squares(pm);
    const CMatrix ps_pm = A.forward(xs);
    const double res = magnitude_misfit(ps_pm, sqrtY);
    if (res < best_res) {
      best_res = res;
      best_x = xs;
      best_it = it;
    }
    if (hio) {
      const CMatrix t = z - opt.beta * pm;
      z = ps_pm + t - A.forward(A.least_squares(t));
    } else {
      z = ps_pm;
    }
  }
  r.x_e = best_x;
  r.diagnostics.hio_iterations = best_it;
  r.diagnostics.hio_residual = best_res;
  r.runtime_seconds = seconds_since(t0);
  attach_error(r, truth);
  return r;
}

double alg1_error_bound(std::size_t d, std::size_t L, std::size_t kappa, double mu1, double xhat_inf,
                      double xhat_min, double noise_fro, double C, double Cprime) {
  const double dd = static_cast<double>(d);
  const double Ld = static_cast<double>(L);
  const double kd = static_cast<double>(kappa);
  const double first = C * std::pow(dd, 3.5) * xhat_inf * noise_fro /
                       (std::sqrt(Ld) * mu1 * std::pow(kd, 2.5) * xhat_min * xhat_min);
  const double second = Cprime * std::pow(dd, 1.5) / std::pow(Ld, 0.25) * std::sqrt(noise_fro / mu1);
  return first + second;
}

double alg2_error_bound(std::size_t d, std::size_t K, std::size_t L, double sigma_gamma, double mu2,
                      double noise_fro, double x_norm) {
  const double beta = noise_fro / (x_norm * x_norm);
  const double dd = static_cast<double>(d);
  return (1.0 + 2.0 * std::sqrt(2.0)) * beta / sigma_gamma * dd * dd /
         (std::sqrt(static_cast<double>(K) * static_cast<double>(L)) * mu2);
}

}  // namespace wdd
