#include "wdd/tiksolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "wdd/angsync.hpp"
#include "wdd/error.hpp"

namespace wdd {
namespace {

using Idx = Eigen::Index;

}  // namespace

VandermondeSystem build_vandermonde(std::size_t d, std::size_t delta, std::size_t gamma) {
  if (delta < 1 || gamma < 1 || gamma > 2 * delta - 1 || 2 * delta - 1 >= d) {
    throw Error(ErrorKind::InvalidParameter, "vandermonde: need gamma <= 2*delta-1 < d (gamma=" +
                                                 std::to_string(gamma) + ", delta=" + std::to_string(delta) +
                                                 ", d=" + std::to_string(d) + ")");
  }
  VandermondeSystem sys;
  sys.d = d;
  sys.delta = delta;
  sys.gamma = gamma;
  const Idx rows = static_cast<Idx>(2 * delta - 1);
  const Idx cols = static_cast<Idx>(gamma);
  sys.W.resize(rows, cols);
  const auto dl = static_cast<std::int64_t>(delta);
  for (Idx j = 0; j < rows; ++j) {
    for (Idx k = 0; k < cols; ++k) {
      const std::int64_t t = (static_cast<std::int64_t>(j) - dl + 1) * static_cast<std::int64_t>(k);
      const double angle = -2.0 * std::numbers::pi * static_cast<double>(wrap(t, d)) / static_cast<double>(d);
      sys.W(j, k) = std::polar(1.0, angle);
    }
  }
  sys.WtW = sys.W.adjoint() * sys.W;
  sys.llt.compute(sys.WtW);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(sys.WtW, Eigen::EigenvaluesOnly);
  sys.sigma_min = std::sqrt(std::max(es.eigenvalues().minCoeff(), 0.0));
  sys.sigma_max = std::sqrt(std::max(es.eigenvalues().maxCoeff(), 0.0));
  if (sys.llt.info() != Eigen::Success || sys.sigma_min <= sys.sigma_max * 1e-15) {
    throw Error(ErrorKind::InvalidParameter, "vandermonde: W^*W is numerically singular");
  }
  return sys;
}

CMatrix pinv_solve(const VandermondeSystem& sys, const CMatrix& V) {
  if (V.rows() != sys.W.rows()) {
    throw Error(ErrorKind::LengthMismatch, "pinv_solve: V has " + std::to_string(V.rows()) +
                                               " rows, W has " + std::to_string(sys.W.rows()));
  }
  return sys.llt.solve(sys.W.adjoint() * V);
}

CMatrix tikhonov_step(const VandermondeSystem& sys, const CMatrix& R, double alpha) {
  CMatrix reg = sys.WtW;
  reg.diagonal().array() += alpha;
  Eigen::LLT<CMatrix> llt(reg);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorKind::InvalidParameter, "tikhonov step: regularized normal matrix not positive definite");
  }
  return llt.solve(sys.W.adjoint() * R);
}

CMatrix reshape_to_G(const CMatrix& A) {
  const Idx g = A.rows();
  if (A.cols() != 2 * g - 1) throw Error(ErrorKind::LengthMismatch, "reshape_to_G: A must be gamma x (2gamma-1)");
  CMatrix G(g, g);
  for (Idx i = 0; i < g; ++i) {
    for (Idx j = 0; j < g; ++j) G(i, j) = A(i, j - i + g - 1);
  }
  return G;
}

CMatrix embed_from_G(const CMatrix& G) {
  const Idx g = G.rows();
  if (G.cols() != g) throw Error(ErrorKind::LengthMismatch, "embed_from_G: G must be square");
  CMatrix A = CMatrix::Zero(g, 2 * g - 1);
  for (Idx i = 0; i < g; ++i) {
    for (Idx j = 0; j < g; ++j) A(i, j - i + g - 1) = G(i, j);
  }
  return A;
}

RankOne rank_one_approx(const CMatrix& G, double tol, std::size_t max_iter) {
  const Idx n = G.cols();
  RankOne out;
  out.u = Eigen::VectorXcd::Zero(G.rows());
  out.v = Eigen::VectorXcd::Zero(n);
  if (G.rows() > 0) out.u(0) = 1.0;
  if (n > 0) out.v(0) = 1.0;
  if (G.size() == 0 || G.norm() == 0.0) {
    out.converged = true;
    return out;
  }
  if (max_iter == 0) max_iter = 1000 * static_cast<std::size_t>(std::max<Idx>(n, 1));
  // Start from the largest row, which lies in the range of G^*.
  Idx best = 0;
  G.rowwise().squaredNorm().maxCoeff(&best);
  Eigen::VectorXcd v = G.row(best).adjoint();
  v.normalize();
  const CMatrix GtG = G.adjoint() * G;
  double lambda = 0.0;
  for (std::size_t it = 1; it <= max_iter; ++it) {
    Eigen::VectorXcd w = GtG * v;
    const double nw = w.norm();
    if (nw == 0.0) break;
    w /= nw;
    const double change = (w - v).norm();
    v = w;
    lambda = nw;
    out.iterations = it;
    if (change <= tol || (GtG * v - lambda * v).norm() <= tol * lambda) {
      out.converged = true;
      break;
    }
  }
  const Eigen::VectorXcd Gv = G * v;
  out.tau = Gv.norm();
  out.v = v;
  out.u = out.tau > 0.0 ? Eigen::VectorXcd(Gv / out.tau) : out.u;
  return out;
}

void TikhonovConfig::validate() const {
  if (!(alpha0 > 0.0) || !std::isfinite(alpha0)) {
    throw Error(ErrorKind::InvalidParameter, "tikhonov: alpha0 must be positive");
  }
  if (!(q > 0.0 && q < 1.0)) throw Error(ErrorKind::InvalidParameter, "tikhonov: q must lie in (0,1)");
}

TikhonovResult iterated_tikhonov(const VandermondeSystem& sys, const CMatrix& V, const TikhonovConfig& cfg) {
  cfg.validate();
  const Idx g = static_cast<Idx>(sys.gamma);
  if (V.rows() != sys.W.rows() || V.cols() != 2 * g - 1) {
    throw Error(ErrorKind::LengthMismatch, "tikhonov: V must be (2delta-1) x (2gamma-1)");
  }
  TikhonovResult out;
  out.G = CMatrix::Zero(g, g);
  double alpha = cfg.alpha0;
  for (std::size_t k = 1; k <= cfg.iterations; ++k) {
    alpha *= cfg.q;
    const RankOne r1 = rank_one_approx(out.G);
    CMatrix A = embed_from_G(r1.matrix());
    A += tikhonov_step(sys, V - sys.W * A, alpha);
    out.residuals.push_back((V - sys.W * A).norm());
    out.G = hermitianize(reshape_to_G(A));
  }
  return out;
}

LCurveResult lcurve(const VandermondeSystem& sys, const CMatrix& V, const LCurveOptions& opt) {
  if (opt.points < 3 || !(opt.alpha_min > 0.0) || !(opt.alpha_max > opt.alpha_min)) {
    throw Error(ErrorKind::InvalidParameter, "lcurve: need >= 3 points on a positive increasing range");
  }
  const std::size_t n = opt.points;
  LCurveResult out;
  const double lo = std::log(opt.alpha_min);
  const double hi = std::log(opt.alpha_max);
  std::vector<double> t(n), r(n), e(n);
  const CMatrix WtV = sys.W.adjoint() * V;
  constexpr double tiny = 1e-300;
  for (std::size_t i = 0; i < n; ++i) {
    t[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    const double a = std::exp(t[i]);
    CMatrix reg = sys.WtW;
    reg.diagonal().array() += a;
    const CMatrix A = reg.llt().solve(WtV);
    const double rn = (sys.W * A - V).norm();
    const double an = A.norm();
    out.alphas.push_back(a);
    out.residual_norms.push_back(rn);
    out.solution_norms.push_back(an);
    r[i] = std::log(rn + tiny);
    e[i] = std::log(an + tiny);
  }
  // Second-order finite differences (central inside, one-sided at the ends).
  auto grad = [&](const std::vector<double>& f) {
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == 0) g[i] = (f[1] - f[0]) / (t[1] - t[0]);
      else if (i == n - 1) g[i] = (f[n - 1] - f[n - 2]) / (t[n - 1] - t[n - 2]);
      else g[i] = (f[i + 1] - f[i - 1]) / (t[i + 1] - t[i - 1]);
    }
    return g;
  };
  const auto dr = grad(r), de = grad(e), ddr = grad(dr), dde = grad(de);
  out.curvature.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double den = std::pow(dr[i] * dr[i] + de[i] * de[i], 1.5);
    out.curvature[i] = den > 0.0 ? (dr[i] * dde[i] - ddr[i] * de[i]) / den : 0.0;
  }
  std::size_t best = 0;
  double kmax = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (std::isfinite(out.curvature[i]) && out.curvature[i] > kmax) {
      kmax = out.curvature[i];
      best = i;
    }
  }
  // V in the range of W: no regularization needed.
  if (V.norm() > 0.0 && out.residual_norms.front() <= 1e-8 * V.norm()) {
    out.alpha = out.alphas.front();
    out.warning = "consistent system; using the smallest grid alpha";
    return out;
  }
  if (V.norm() == 0.0 || best == 0 || !(kmax > 0.0)) {
    out.degenerate = true;
    out.alpha = out.alphas[n / 2];
    out.warning = "L-curve has no curvature peak; using grid midpoint alpha";
    return out;
  }
  out.alpha = out.alphas[best];
  return out;
}

double lcurve_alpha0(const VandermondeSystem& sys, const CMatrix& V, const LCurveOptions& opt) {
  return lcurve(sys, V, opt).alpha;
}

}  // namespace wdd
