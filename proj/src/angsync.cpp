#include "wdd/angsync.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wdd/error.hpp"

namespace wdd {

CMatrix hermitianize(const CMatrix& M) {
  if (M.rows() != M.cols()) throw Error(ErrorKind::InvalidParameter, "hermitianize: matrix not square");
  return 0.5 * (M + M.adjoint());
}

Complex sgn(Complex z) {
  const double a = std::abs(z);
  return a > 0.0 ? z / a : Complex(1.0, 0.0);
}

CMatrix sign_normalize(const CMatrix& M) {
  return M.unaryExpr([](const Complex& z) { return sgn(z); });
}

namespace {

void fix_gauge(ComplexVector& v) {
  std::size_t best = 0;
  double mag = -1.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    // Strict comparison with a small margin keeps the choice stable under roundoff ties.
    if (std::abs(v[i]) > mag * (1.0 + 1e-9)) {
      mag = std::abs(v[i]);
      best = i;
    }
  }
  if (mag > 0.0) v *= std::conj(v[best]) / mag;
}

}  // namespace

EigenPair leading_eigenvector(const std::function<ComplexVector(const ComplexVector&)>& apply,
                              std::size_t d, double one_norm, std::size_t kappa,
                              const EigenOptions& opt) {
  if (!(opt.tol > 0.0)) throw Error(ErrorKind::InvalidParameter, "leading_eigenvector: tol must be positive");
  const std::size_t max_iter =
      opt.max_iter ? opt.max_iter : std::max<std::size_t>(10 * d * std::max<std::size_t>(kappa, 1), kMinPowerIterations);
  ComplexVector v = opt.start ? *opt.start : ComplexVector(d, Complex(1.0, 0.0));
  if (v.size() != d) throw Error(ErrorKind::LengthMismatch, "leading_eigenvector: start vector length");
  if (v.norm() == 0.0) v = ComplexVector(d, Complex(1.0, 0.0));
  v *= 1.0 / v.norm();

  const double c = one_norm;
  EigenPair best;
  best.residual = std::numeric_limits<double>::infinity();
  for (std::size_t it = 0; it <= max_iter; ++it) {
    const ComplexVector Mv = apply(v);
    const double lambda = inner(Mv, v).real();
    ComplexVector r = Mv;
    for (std::size_t i = 0; i < d; ++i) r[i] -= lambda * v[i];
    const double res = r.norm();
    if (res < best.residual) {
      best.value = lambda;
      best.vector = v;
      best.residual = res;
      best.iterations = it;
    }
    if (res <= opt.tol * std::abs(lambda) || (lambda == 0.0 && res == 0.0)) {
      best.converged = true;
      break;
    }
    ComplexVector next = Mv;
    for (std::size_t i = 0; i < d; ++i) next[i] += c * v[i];
    const double n = next.norm();
    if (n == 0.0) break;
    next *= 1.0 / n;
    v = std::move(next);
  }
  fix_gauge(best.vector);
  return best;
}

EigenPair leading_eigenvector(const CMatrix& M, const EigenOptions& opt) {
  if (M.rows() != M.cols()) throw Error(ErrorKind::InvalidParameter, "leading_eigenvector: matrix not square");
  const auto d = static_cast<std::size_t>(M.rows());
  const double norm1 = d ? M.cwiseAbs().colwise().sum().maxCoeff() : 0.0;
  auto apply = [&M, d](const ComplexVector& v) {
    Eigen::Map<const Eigen::VectorXcd> in(v.data(), static_cast<Eigen::Index>(d));
    ComplexVector out(d);
    Eigen::Map<Eigen::VectorXcd>(out.data(), static_cast<Eigen::Index>(d)) = M * in;
    return out;
  };
  return leading_eigenvector(apply, d, norm1, d, opt);
}

EigenPair leading_eigenvector(const BandedMatrix& M, const EigenOptions& opt) {
  auto apply = [&M](const ComplexVector& v) { return M.multiply(v); };
  return leading_eigenvector(apply, M.dim(), M.one_norm(), M.halfwidth(), opt);
}

std::vector<double> magnitudes_from_diagonal(const BandedMatrix& M) {
  std::vector<double> out(M.dim());
  for (std::size_t j = 0; j < M.dim(); ++j) out[j] = std::sqrt(std::max(M.band_entry(j, 0).real(), 0.0));
  return out;
}

ComplexVector propagate_phases(const BandedMatrix& normalized) {
  const std::size_t d = normalized.dim();
  const auto k = static_cast<std::int64_t>(normalized.halfwidth());
  ComplexVector s(d, Complex(1.0, 0.0));
  // Entry (j-a, j) ~ s_{j-a} conj(s_j), so conj of it times s_{j-a} votes for s_j.
  for (std::size_t j = 1; j < d; ++j) {
    Complex vote = 0.0;
    for (std::int64_t a = 1; a < k && a <= static_cast<std::int64_t>(j); ++a) {
      const std::size_t i = j - static_cast<std::size_t>(a);
      vote += std::conj(normalized.band_entry(i, a)) * s[i];
    }
    s[j] = sgn(vote);
  }
  return s;
}

SyncResult synchronize(const BandedMatrix& C, const EigenOptions& opt) {
  const BandedMatrix H = C.hermitianized();
  SyncResult out;
  out.magnitudes = magnitudes_from_diagonal(H);
  const BandedMatrix S = H.sign_normalized();
  EigenOptions o = opt;
  if (!o.start) o.start = propagate_phases(S);
  const EigenPair ep = leading_eigenvector(S, o);
  const std::size_t d = C.dim();
  out.phases = ComplexVector(d);
  out.estimate = ComplexVector(d);
  for (std::size_t j = 0; j < d; ++j) {
    out.phases[j] = sgn(ep.vector[j]);
    out.estimate[j] = out.magnitudes[j] * out.phases[j];
  }
  out.eigenvalue = ep.value;
  out.eigen_iterations = ep.iterations;
  out.eigen_residual = ep.residual;
  out.converged = ep.converged;
  return out;
}

SyncResult synchronize(const BandSet& bands, const EigenOptions& opt) {
  if (bands.bands.empty()) throw Error(ErrorKind::InvalidParameter, "synchronize: empty band set");
  if (2 * bands.kappa - 1 > bands.dim()) {
    throw Error(ErrorKind::InvalidParameter, "synchronize: 2*kappa-1 exceeds d");
  }
  return synchronize(BandedMatrix::from_bands(bands.bands), opt);
}

}  // namespace wdd
