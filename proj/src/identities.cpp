#include "wdd/identities.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "wdd/masks.hpp"
#include "wdd/measure.hpp"
#include "wdd/rng.hpp"
#include "wdd/wdd.hpp"

namespace wdd::identities {
namespace {

using Idx = Eigen::Index;

Check make(const std::string& suite, const std::string& name, double err, double tol) {
  return Check{suite, name, err, tol, err <= tol};
}

std::int64_t i64(std::size_t v) { return static_cast<std::int64_t>(v); }

Complex cis(double num, std::size_t d) {
  return std::polar(1.0, 2.0 * std::numbers::pi * num / static_cast<double>(d));
}

std::vector<std::size_t> divisors(std::size_t d) {
  std::vector<std::size_t> out;
  for (std::size_t s = 1; s <= d; ++s) {
    if (d % s == 0) out.push_back(s);
  }
  return out;
}

// Tracks the worst relative error across many vector comparisons of one identity.
struct Worst {
  double err = 0.0;
  void add(double e) { err = std::max(err, std::isnan(e) ? INFINITY : e); }
};

std::vector<ComplexVector> autocorr_spectra(const ComplexVector& v) {
  std::vector<ComplexVector> out;
  for (std::size_t p = 0; p < v.size(); ++p) out.push_back(dft(shifted_autocorrelation(v, i64(p))));
  return out;
}

}  // namespace

double rel_diff(const ComplexVector& a, const ComplexVector& b) {
  double diff = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) diff = std::max(diff, std::abs(a[i] - b[i]));
  const double scale = std::max(a.max_abs(), b.max_abs());
  return scale > 0.0 ? diff / scale : diff;
}

double rel_diff(const CMatrix& a, const CMatrix& b) {
  const double diff = (a - b).cwiseAbs().maxCoeff();
  const double scale = std::max(a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff());
  return scale > 0.0 ? diff / scale : diff;
}

ComplexVector random_vector(std::size_t d, std::uint64_t seed) {
  CounterRng rng(seed);
  ComplexVector x(d);
  for (auto& z : x) {
    const double re = rng.normal();
    z = Complex(re, rng.normal());
  }
  return x;
}

std::vector<Check> dft_properties(std::size_t d, std::uint64_t seed, double tol) {
  const std::string suite = "dft_properties(d=" + std::to_string(d) + ")";
  const ComplexVector x = random_vector(d, seed);
  const ComplexVector xh = dft(x);
  const ComplexVector xt = reverse(x);
  Worst w[8];
  w[0].add(rel_diff(dft(xh), static_cast<double>(d) * xt));
  w[5].add(rel_diff(dft(conj(x)), conj(dft(xt))));
  w[6].add(rel_diff(reverse(xh), dft(xt)));
  w[7].add(rel_diff(abs_sq(xh), dft(circular_convolve_direct(x, conj(xt)))));
  for (std::size_t l = 0; l < d; ++l) {
    const auto li = i64(l);
    w[1].add(rel_diff(dft(modulate(x, li)), circular_shift(xh, -li)));
    w[2].add(rel_diff(dft(circular_shift(x, li)), modulate(xh, li)));
    w[3].add(rel_diff(modulate(dft(circular_shift(conj(xt), li)), -li), conj(xh)));
    w[4].add(rel_diff(conj(reverse(circular_shift(x, li))), circular_shift(conj(xt), -li)));
  }
  const char* names[8] = {"F(xhat) = d*reverse(x)",
                          "F(W_l x) = S_-l xhat",
                          "F(S_l x) = W_l xhat",
                          "W_-l F(S_l conj(reverse x)) = conj(xhat)",
                          "conj(reverse(S_l x)) = S_-l conj(reverse x)",
                          "F(conj x) = conj(F(reverse x))",
                          "reverse(xhat) = F(reverse x)",
                          "|F x|^2 = F(x * conj(reverse x))"};
  std::vector<Check> out;
  for (int i = 0; i < 8; ++i) out.push_back(make(suite, names[i], w[i].err, tol));
  return out;
}

std::vector<Check> convolution_theorem(std::size_t d, std::uint64_t seed, double tol) {
  const std::string suite = "convolution_theorem(d=" + std::to_string(d) + ")";
  const ComplexVector x = random_vector(d, seed);
  const ComplexVector y = random_vector(d, derive_seed(seed, 1));
  return {
      make(suite, "idft(xhat o yhat) = x * y", rel_diff(idft(hadamard(dft(x), dft(y))), circular_convolve_direct(x, y)), tol),
      make(suite, "(F x) * (F y) = d F(x o y)",
           rel_diff(circular_convolve_direct(dft(x), dft(y)), static_cast<double>(d) * dft(hadamard(x, y))), tol),
  };
}

std::vector<Check> shifted_product_spectrum(std::size_t d, std::uint64_t seed, double tol, const Faults& f) {
  const std::string suite = "shifted_product_spectrum(d=" + std::to_string(d) + ")";
  const ComplexVector x = random_vector(d, seed);
  const ComplexVector xh = dft(x);
  const double sign = f.shifted_product_sign ? -1.0 : 1.0;
  CMatrix lhs(static_cast<Idx>(d), static_cast<Idx>(d)), rhs(static_cast<Idx>(d), static_cast<Idx>(d));
  for (std::size_t om = 0; om < d; ++om) {
    const ComplexVector a = dft(shifted_autocorrelation(x, i64(om)));
    for (std::size_t al = 0; al < d; ++al) {
      const ComplexVector b = dft(shifted_autocorrelation(xh, -i64(al)));
      lhs(static_cast<Idx>(al), static_cast<Idx>(om)) = a[al];
      rhs(static_cast<Idx>(al), static_cast<Idx>(om)) =
          cis(sign * static_cast<double>((om * al) % d), d) * b[om] / static_cast<double>(d);
    }
  }
  return {make(suite, "F(x o S_w conj x)_a = e^{2 pi i w a/d}/d F(xhat o S_-a conj xhat)_w", rel_diff(lhs, rhs), tol)};
}

std::vector<Check> reversed_autocorrelation(std::size_t d, std::uint64_t seed, double tol) {
  const std::string suite = "reversed_autocorrelation(d=" + std::to_string(d) + ")";
  const ComplexVector x = random_vector(d, seed);
  const ComplexVector xt = reverse(x);
  Worst w;
  for (std::size_t a = 0; a < d; ++a) {
    const auto ai = i64(a);
    w.add(rel_diff(dft(hadamard(xt, circular_shift(conj(xt), -ai))), reverse(dft(shifted_autocorrelation(x, ai)))));
  }
  return {make(suite, "F(xt o S_-a conj xt) = R F(x o S_a conj x)", w.err, tol)};
}

std::vector<Check> convolution_index_swap(std::size_t d, std::uint64_t seed, double tol) {
  const std::string suite = "convolution_index_swap(d=" + std::to_string(d) + ")";
  const ComplexVector x = random_vector(d, seed);
  const ComplexVector y = random_vector(d, derive_seed(seed, 2));
  const ComplexVector xt = reverse(x), yt = reverse(y);
  CMatrix lhs(static_cast<Idx>(d), static_cast<Idx>(d)), rhs(static_cast<Idx>(d), static_cast<Idx>(d));
  for (std::size_t l = 0; l < d; ++l) {
    const auto li = i64(l);
    const ComplexVector c = circular_convolve_direct(hadamard(x, circular_shift(y, -li)),
                                                     hadamard(conj(xt), circular_shift(conj(yt), li)));
    for (std::size_t k = 0; k < d; ++k) lhs(static_cast<Idx>(l), static_cast<Idx>(k)) = c[k];
  }
  for (std::size_t k = 0; k < d; ++k) {
    const auto ki = i64(k);
    const ComplexVector c = circular_convolve_direct(hadamard(x, circular_shift(conj(x), -ki)),
                                                     hadamard(yt, circular_shift(conj(yt), ki)));
    for (std::size_t l = 0; l < d; ++l) rhs(static_cast<Idx>(l), static_cast<Idx>(k)) = c[l];
  }
  return {make(suite, "((x o S_-l y) * (conj xt o S_l conj yt))_k = ((x o S_-k conj x) * (yt o S_k conj yt))_l",
               rel_diff(lhs, rhs), tol)};
}

std::vector<Check> aliasing(std::size_t d, std::uint64_t seed, double tol) {
  const std::string suite = "aliasing(d=" + std::to_string(d) + ")";
  const ComplexVector x = random_vector(d, seed);
  const ComplexVector xh = dft(x);
  std::vector<Check> out;
  for (std::size_t s : divisors(d)) {
    const std::size_t n = d / s;
    const ComplexVector lhs = dft(subsample(x, s));
    ComplexVector rhs(n);
    for (std::size_t om = 0; om < n; ++om) {
      Complex acc = 0.0;
      for (std::size_t r = 0; r < s; ++r) acc += xh.at(i64(om) - i64(r * n));
      rhs[om] = acc / static_cast<double>(s);
    }
    out.push_back(make(suite, "s=" + std::to_string(s), rel_diff(lhs, rhs), tol));
  }
  return out;
}

std::vector<Check> aliased_wdd(std::size_t d, std::uint64_t seed, double tol) {
  const std::string suite = "aliased_wdd(d=" + std::to_string(d) + ")";
  const ComplexVector x = random_vector(d, seed);
  const ComplexVector m = random_vector(d, derive_seed(seed, 3));
  const auto AX = autocorr_spectra(dft(x));
  const auto AM = autocorr_spectra(dft(m));
  const auto BX = autocorr_spectra(x);
  const auto BM = autocorr_spectra(m);
  auto at = [&](const std::vector<ComplexVector>& t, std::int64_t p, std::int64_t q) {
    return t[wrap(p, d)].at(q);
  };
  Worst w[4];
  const double dd = static_cast<double>(d);
  for (std::size_t K : divisors(d)) {
    for (std::size_t L : divisors(d)) {
      const CMatrix Yt = double_fft(spectrogram_subsampled(x, m, K, L));
      CMatrix e[4];
      for (auto& E : e) E = CMatrix::Zero(static_cast<Idx>(L), static_cast<Idx>(K));
      const double KL = static_cast<double>(K * L);
      for (std::size_t al = 0; al < L; ++al) {
        for (std::size_t om = 0; om < K; ++om) {
          Complex s1 = 0.0, s2 = 0.0, s3 = 0.0, s4 = 0.0;
          for (std::size_t r = 0; r < d / K; ++r) {
            for (std::size_t l = 0; l < d / L; ++l) {
              const std::int64_t p = i64(l * L) - i64(al);  // lL - alpha
              const std::int64_t q = i64(om) - i64(r * K);  // omega - rK
              const double phase = static_cast<double>(wrap(p * q, d));
              s1 += at(AX, p, q) * at(AM, -p, q);
              s2 += cis(-phase, d) * at(AX, p, q) * at(BM, q, p);
              s3 += cis(phase, d) * at(BX, q, -p) * at(AM, -p, q);
              s4 += at(BX, q, -p) * at(BM, q, p);
            }
          }
          const Idx i = static_cast<Idx>(al), j = static_cast<Idx>(om);
          e[0](i, j) = KL / (dd * dd * dd) * s1;
          e[1](i, j) = KL / (dd * dd) * s2;
          e[2](i, j) = KL / (dd * dd) * s3;
          e[3](i, j) = KL / dd * s4;
        }
      }
      for (int k = 0; k < 4; ++k) w[k].add(rel_diff(Yt, e[k]));
    }
  }
  const char* names[4] = {"hat-hat form", "hat-space form", "space-hat form", "space-space form"};
  std::vector<Check> out;
  for (int k = 0; k < 4; ++k) out.push_back(make(suite, std::string(names[k]) + " (all divisor pairs K,L)", w[k].err, tol));
  return out;
}

std::vector<Check> subsampled_columns(std::size_t d, std::uint64_t seed, double tol) {
  const std::string suite = "subsampled_columns(d=" + std::to_string(d) + ")";
  const ComplexVector x = random_vector(d, seed);
  const ComplexVector m = random_vector(d, derive_seed(seed, 4));
  const ComplexVector mt = reverse(m);
  const MeasurementSet full = spectrogram_full(x, m);
  std::vector<Check> out;
  for (std::size_t K : divisors(d)) {
    CMatrix lhs(static_cast<Idx>(d), static_cast<Idx>(K)), rhs = CMatrix::Zero(static_cast<Idx>(d), static_cast<Idx>(K));
    for (std::size_t l = 0; l < d; ++l) {
      ComplexVector col(d);
      for (std::size_t k = 0; k < d; ++k) col[k] = full.Y(static_cast<Idx>(k), static_cast<Idx>(l));
      const ComplexVector f = dft(subsample(col, d / K));
      for (std::size_t om = 0; om < K; ++om) lhs(static_cast<Idx>(l), static_cast<Idx>(om)) = f[om];
    }
    for (std::size_t om = 0; om < K; ++om) {
      ComplexVector acc(d);
      for (std::size_t r = 0; r < d / K; ++r) {
        const std::int64_t s = i64(om) - i64(r * K);
        acc += circular_convolve_direct(shifted_autocorrelation(x, s), hadamard(mt, circular_shift(conj(mt), -s)));
      }
      for (std::size_t l = 0; l < d; ++l) rhs(static_cast<Idx>(l), static_cast<Idx>(om)) = static_cast<double>(K) * acc[l];
    }
    out.push_back(make(suite, "K=" + std::to_string(K), rel_diff(lhs, rhs), tol));
  }
  return out;
}

std::vector<Check> wdd_columns(std::size_t d, std::uint64_t seed, double tol) {
  const std::string suite = "wdd_columns(d=" + std::to_string(d) + ")";
  const ComplexVector x = random_vector(d, seed);
  const ComplexVector m = random_vector(d, derive_seed(seed, 5));
  const CMatrix Yt = double_fft(spectrogram_full(x, m));
  CMatrix rhs(static_cast<Idx>(d), static_cast<Idx>(d));
  for (std::size_t om = 0; om < d; ++om) {
    const auto oi = i64(om);
    const ComplexVector c = static_cast<double>(d) * hadamard(dft(shifted_autocorrelation(x, oi)),
                                                              reverse(dft(shifted_autocorrelation(m, oi))));
    for (std::size_t a = 0; a < d; ++a) rhs(static_cast<Idx>(a), static_cast<Idx>(om)) = c[a];
  }
  return {make(suite, "column w = d F(x o S_w conj x) o R F(m o S_w conj m)", rel_diff(Yt, rhs), tol)};
}

std::vector<Check> collapses(std::uint64_t seed, double tol) {
  std::vector<Check> out;
  {
    const std::size_t d = 60, rho = 8, kappa = 8, L = 15;
    const Mask m = exp_bandlimited_mask(d, rho);
    const ComplexVector x = random_vector(d, seed);
    const BandSet b = collapse_bandlimited_mask(double_fft(spectrogram_subsampled(x, m.values, d, L)), m, kappa);
    const ComplexVector xh = dft(x);
    Worst w;
    for (std::int64_t a = 1 - i64(kappa); a < i64(kappa); ++a) w.add(rel_diff(b.band(a), shifted_autocorrelation(xh, a)));
    out.push_back(make("collapse", "bandlimited mask (d=60, rho=8, kappa=8, L=15)", w.err, tol));
  }
  {
    const std::size_t d = 190, delta = 48, gamma = 10, K = 95, L = 19;
    const Mask m = exp_compact_mask(d, delta);
    ComplexVector xh(d);
    const ComplexVector r = random_vector(gamma, derive_seed(seed, 6));
    for (std::size_t i = 0; i < gamma; ++i) xh[i] = r[i];
    const ComplexVector x = idft(xh);
    const CollapsedTable t = collapse_bandlimited_signal(double_fft(spectrogram_subsampled(x, m.values, K, L)), m, gamma);
    CMatrix truth(t.V.rows(), t.V.cols());
    for (std::int64_t a = 1 - i64(gamma); a < i64(gamma); ++a) {
      const ComplexVector s = dft(shifted_autocorrelation(xh, a));
      for (std::int64_t om = 1 - i64(delta); om < i64(delta); ++om) {
        truth(static_cast<Idx>(om + i64(delta) - 1), static_cast<Idx>(a + i64(gamma) - 1)) = s.at(om);
      }
    }
    out.push_back(make("collapse", "bandlimited signal (d=190, delta=48, gamma=10)", rel_diff(t.V, truth), tol));
  }
  {
    const std::size_t d = 247, delta = 10, kappa = 10, K = 19;
    const Mask m = exp_compact_mask(d, delta);
    const ComplexVector x = random_vector(d, derive_seed(seed, 7));
    const BandSet b = collapse_compact_mask(double_fft(spectrogram_subsampled(x, m.values, K, d)), m, kappa);
    Worst w;
    for (std::int64_t a = 1 - i64(kappa); a < i64(kappa); ++a) w.add(rel_diff(b.band(a), shifted_autocorrelation(x, a)));
    out.push_back(make("collapse", "compact mask (d=247, delta=10, kappa=10, K=19)", w.err, tol));
  }
  return out;
}

std::vector<Check> mask_positivity(std::uint64_t seed) {
  std::vector<Check> out;
  const std::size_t d = 60, len = 8;
  CounterRng rng(seed);
  std::vector<double> mags{static_cast<double>(len)};
  for (std::size_t i = 1; i < len; ++i) mags.push_back(1.0 - 0.1 * static_cast<double>(i - 1));
  ComplexVector fourier(d), space(d);
  for (std::size_t i = 0; i < len; ++i) {
    fourier[i] = std::polar(mags[i], 2.0 * std::numbers::pi * rng.uniform());
    space[i] = std::polar(mags[i], 2.0 * std::numbers::pi * rng.uniform());
  }
  const Mask mf = user_mask(idft(fourier), SupportDomain::Fourier, len);
  const Mask ms = user_mask(space, SupportDomain::Space, len);
  double worst1 = INFINITY, worst2 = INFINITY;
  for (std::size_t k = 2; k <= len; ++k) worst1 = std::min(worst1, mu1(mf, k));
  for (std::size_t g = 1; g <= 2 * len - 1; ++g) worst2 = std::min(worst2, mu2(ms, g));
  const bool adm = check_admissible(mf).admissible && check_admissible(ms).admissible;
  out.push_back(Check{"mask_positivity", "admissible fourier mask: min mu1 over kappa > 0", worst1, 0.0, adm && worst1 > 0.0});
  out.push_back(Check{"mask_positivity", "admissible space mask: min mu2 over gamma > 0", worst2, 0.0, adm && worst2 > 0.0});
  return out;
}

std::vector<Check> full_suite(std::uint64_t seed, const Faults& f) {
  std::vector<Check> out;
  auto append = [&out](std::vector<Check> v) { out.insert(out.end(), v.begin(), v.end()); };
  std::uint64_t stream = 0;
  auto next = [&] { return derive_seed(seed, ++stream); };
  for (std::size_t d : {1, 2, 5, 16, 24}) append(dft_properties(d, next()));
  for (std::size_t d : {16, 24}) append(convolution_theorem(d, next()));
  for (std::size_t d : {12, 16}) append(shifted_product_spectrum(d, next(), 1e-10, f));
  for (std::size_t d : {12, 16}) append(reversed_autocorrelation(d, next()));
  for (std::size_t d : {12, 16}) append(convolution_index_swap(d, next()));
  for (std::size_t d : {8, 12, 16}) append(aliasing(d, next()));
  for (std::size_t d : {12, 24}) append(aliased_wdd(d, next()));
  append(subsampled_columns(24, next()));
  append(wdd_columns(24, next()));
  append(collapses(next()));
  append(mask_positivity(next()));
  return out;
}

}  // namespace wdd::identities
