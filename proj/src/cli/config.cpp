#include "wdd/cli/config.hpp"

#include <cmath>

#include "wdd/error.hpp"
#include "wdd/rng.hpp"

namespace wdd::cli {

namespace {

[[noreturn]] void invalid(const std::string& msg) { throw Error(ErrorKind::InvalidParameter, msg, "config"); }

std::string num(std::size_t v) { return std::to_string(v); }

bool smooth7(std::size_t n) {
  for (std::size_t p : {2, 3, 5, 7})
    while (n % p == 0) n /= p;
  return n == 1;
}

bool bandlimited(MaskKind k) { return k == MaskKind::ExpBandlimited || k == MaskKind::RandomBandlimited; }

}  // namespace

const char* to_string(Algorithm a) noexcept {
  switch (a) {
    case Algorithm::Alg1: return "alg1";
    case Algorithm::Alg2: return "alg2";
    case Algorithm::Compact: return "compact";
    case Algorithm::HioEr: return "hioer";
  }
  return "?";
}

Algorithm parse_algorithm(const std::string& s) {
  if (s == "alg1") return Algorithm::Alg1;
  if (s == "alg2") return Algorithm::Alg2;
  if (s == "compact") return Algorithm::Compact;
  if (s == "hioer" || s == "hio_er") return Algorithm::HioEr;
  throw Error(ErrorKind::Parse, "unknown algorithm '" + s + "' (alg1, alg2, compact, hioer)");
}

void ExperimentConfig::resolve() {
  if (trials < 1) invalid("trials must be >= 1");
  if (d < 2) invalid("d must be >= 2");
  const bool fourier = algorithm == Algorithm::Alg1 || algorithm == Algorithm::HioEr;
  if (!mask) mask = fourier ? MaskKind::ExpBandlimited : MaskKind::ExpCompact;
  if (*mask == MaskKind::User) invalid("user masks are only accepted by recover");
  if (fourier != bandlimited(*mask)) {
    invalid(std::string(to_string(algorithm)) + " cannot use a " + wdd::to_string(*mask) + " mask");
  }

  switch (algorithm) {
    case Algorithm::Alg1:
    case Algorithm::HioEr: {
      if (rho < 2 || 2 * rho >= d) invalid("rho must satisfy 2 <= rho < d/2 (rho=" + num(rho) + ", d=" + num(d) + ")");
      if (K == 0) K = d;
      if (K != d) invalid("alg1 needs K = d (K=" + num(K) + ")");
      if (L == 0) L = rho + (kappa == 0 ? rho : kappa) - 1;
      require_divides(L, d, "L");
      if (L < rho + 1 || L > 2 * rho - 1) {
        invalid("L must satisfy rho + 1 <= L <= 2 rho - 1 (L=" + num(L) + ", rho=" + num(rho) + ")");
      }
      if (kappa == 0) kappa = L - rho + 1;
      if (kappa != L - rho + 1) invalid("kappa must equal L - rho + 1 (kappa=" + num(kappa) + ")");
      break;
    }
    case Algorithm::Compact: {
      if (delta < 2 || delta >= d) invalid("delta must satisfy 2 <= delta < d");
      if (L == 0) L = d;
      if (L != d) invalid("compact pipeline needs L = d (L=" + num(L) + ")");
      if (K == 0) K = delta + (kappa == 0 ? delta : kappa) - 1;
      require_divides(K, d, "K");
      if (K < delta + 1) invalid("K must be >= delta + 1 (K=" + num(K) + ", delta=" + num(delta) + ")");
      const std::size_t k = std::min({delta, K - delta + 1, (d + 1) / 2});
      if (kappa == 0) kappa = k;
      if (kappa != k) invalid("kappa must equal min(delta, K - delta + 1) (kappa=" + num(kappa) + ")");
      break;
    }
    case Algorithm::Alg2: {
      if (delta < 2 || 2 * delta - 1 >= d) invalid("delta must satisfy 2 <= delta and 2 delta - 1 < d");
      if (gamma < 1 || gamma > 2 * delta - 1) invalid("gamma must satisfy 1 <= gamma <= 2 delta - 1");
      if (K == 0) K = 2 * delta - 1;
      if (L == 0) L = 2 * gamma - 1;
      if (K != 2 * delta - 1) invalid("alg2 needs K = 2 delta - 1 (K=" + num(K) + ")");
      if (L != 2 * gamma - 1) invalid("alg2 needs L = 2 gamma - 1 (L=" + num(L) + ")");
      require_divides(K, d, "K");
      require_divides(L, d, "L");
      break;
    }
  }

  if (!(q > 0.0 && q < 1.0)) invalid("q must lie in (0, 1)");
  if (tikhonov_iterations < 1) invalid("tikhonov iterations must be >= 1");
  if (alpha0 && !(*alpha0 > 0.0)) invalid("alpha0 must be positive");
  for (double s : snr_db) {
    if (std::isnan(s)) invalid("snr must be a number or inf");
  }
}

Mask build_mask(const ExperimentConfig& cfg, std::uint64_t seed) {
  switch (cfg.mask.value_or(MaskKind::ExpBandlimited)) {
    case MaskKind::ExpBandlimited: return exp_bandlimited_mask(cfg.d, cfg.rho);
    case MaskKind::RandomBandlimited:
      return random_bandlimited_mask(cfg.d, cfg.rho, cfg.mask_seed.value_or(derive_seed(seed, 3)));
    case MaskKind::ExpCompact: return exp_compact_mask(cfg.d, cfg.delta);
    case MaskKind::User: break;
  }
  invalid("cannot build a user mask");
}

ComplexVector random_signal(const ExperimentConfig& cfg, std::uint64_t seed) {
  CounterRng rng(seed);
  if (cfg.algorithm == Algorithm::Alg2) {
    ComplexVector xh(cfg.d);
    for (std::size_t i = 0; i < cfg.gamma; ++i) {
      const double re = rng.normal();
      xh[i] = Complex(re, rng.normal());
    }
    return idft(xh);
  }
  ComplexVector x(cfg.d);
  for (std::size_t i = 0; i < cfg.d; ++i) {
    const double re = rng.normal();
    x[i] = Complex(re, rng.normal());
  }
  return x;
}

Trial make_trial(const ExperimentConfig& cfg, const Mask& m, std::uint64_t seed, double snr_db) {
  Trial t;
  t.truth = random_signal(cfg, derive_seed(seed, 1));
  const MeasurementSet clean = spectrogram_subsampled(t.truth, m.values, cfg.K, cfg.L);
  t.y = add_noise(clean, snr_db, derive_seed(seed, 2));
  return t;
}

RecoveryResult run_algorithm(Algorithm alg, const ExperimentConfig& cfg, const MeasurementSet& y, const Mask& m,
                             const std::optional<ComplexVector>& truth) {
  switch (alg) {
    case Algorithm::Alg1: return algorithm1(y, m, truth);
    case Algorithm::Compact: return compact_mask_pipeline(y, m, truth);
    case Algorithm::HioEr: return hio_er(y, m, {}, truth);
    case Algorithm::Alg2: {
      Alg2Options opt;
      opt.solver = cfg.solver;
      opt.tikhonov.q = cfg.q;
      opt.tikhonov.iterations = cfg.tikhonov_iterations;
      opt.auto_alpha0 = !cfg.alpha0.has_value();
      if (cfg.alpha0) opt.tikhonov.alpha0 = *cfg.alpha0;
      return algorithm2(y, m, cfg.gamma, opt, truth);
    }
  }
  invalid("unknown algorithm");
}

ExperimentConfig bench_config(std::size_t d_requested) {
  if (d_requested < 4) invalid("bench d must be >= 4");
  ExperimentConfig cfg;
  cfg.algorithm = Algorithm::Alg1;
  cfg.mask = MaskKind::RandomBandlimited;
  cfg.rho = static_cast<std::size_t>(std::ceil(1.25 * std::log2(static_cast<double>(d_requested))));
  cfg.L = cfg.rho + (cfg.rho + 1) / 2 - 1;
  std::size_t mult = std::max<std::size_t>((d_requested + cfg.L - 1) / cfg.L, 1);
  while (!smooth7(mult) || 2 * cfg.rho >= mult * cfg.L) ++mult;
  cfg.d = mult * cfg.L;
  cfg.resolve();
  return cfg;
}

}  // namespace wdd::cli
