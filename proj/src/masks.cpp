#include "wdd/masks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "wdd/csv.hpp"
#include "wdd/error.hpp"
#include "wdd/rng.hpp"

namespace wdd {
namespace {

double exp_scale(std::size_t len) {
  return std::max(4.0, (static_cast<double>(len) - 1.0) / 2.0);
}

void check_fourier_support(std::size_t d, std::size_t rho, const char* who) {
  if (rho < 2 || 2 * rho >= d) {
    throw Error(ErrorKind::InvalidParameter, std::string(who) + ": need 2 <= rho < d/2, got rho=" +
                                                 std::to_string(rho) + " d=" + std::to_string(d));
  }
}

bool in_interval(std::size_t i, std::int64_t offset, std::size_t len, std::size_t d) {
  return (i + d - wrap(offset, d)) % d < len;
}

}  // namespace

const char* to_string(MaskKind kind) noexcept {
  switch (kind) {
    case MaskKind::ExpBandlimited: return "exp_bandlimited";
    case MaskKind::RandomBandlimited: return "random_bandlimited";
    case MaskKind::ExpCompact: return "exp_compact";
    case MaskKind::User: return "user";
  }
  return "user";
}

const char* to_string(SupportDomain domain) noexcept {
  return domain == SupportDomain::Space ? "space" : "fourier";
}

MaskKind parse_mask_kind(const std::string& s) {
  if (s == "exp_bandlimited" || s == "exp") return MaskKind::ExpBandlimited;
  if (s == "random_bandlimited" || s == "random") return MaskKind::RandomBandlimited;
  if (s == "exp_compact") return MaskKind::ExpCompact;
  if (s == "user") return MaskKind::User;
  throw Error(ErrorKind::Parse, "unknown mask kind '" + s + "'");
}

SupportDomain parse_support_domain(const std::string& s) {
  if (s == "space") return SupportDomain::Space;
  if (s == "fourier") return SupportDomain::Fourier;
  throw Error(ErrorKind::Parse, "unknown support domain '" + s + "'");
}

Mask exp_bandlimited_mask(std::size_t d, std::size_t rho) {
  check_fourier_support(d, rho, "exp_bandlimited_mask");
  const double a = exp_scale(rho);
  const double norm = std::pow(2.0 * static_cast<double>(rho) - 1.0, 0.25);
  ComplexVector mhat(d);
  for (std::size_t k = 0; k < rho; ++k) mhat[k] = std::exp(-static_cast<double>(k) / a) / norm;
  return Mask{idft(mhat), MaskKind::ExpBandlimited, SupportDomain::Fourier, rho, 0, std::nullopt};
}

Mask random_bandlimited_mask(std::size_t d, std::size_t rho, std::uint64_t seed) {
  check_fourier_support(d, rho, "random_bandlimited_mask");
  CounterRng rng(seed);
  ComplexVector mhat(d);
  for (std::size_t k = 0; k < rho; ++k) {
    const double u = rng.uniform();
    const double v = rng.uniform();
    mhat[k] = std::polar(1.0 + 0.5 * u, 2.0 * std::numbers::pi * v);
  }
  return Mask{idft(mhat), MaskKind::RandomBandlimited, SupportDomain::Fourier, rho, 0, seed};
}

Mask exp_compact_mask(std::size_t d, std::size_t delta) {
  if (delta < 2 || delta >= d) {
    throw Error(ErrorKind::InvalidParameter, "exp_compact_mask: need 2 <= delta < d, got delta=" +
                                                 std::to_string(delta) + " d=" + std::to_string(d));
  }
  const double a = exp_scale(delta);
  const double norm = std::pow(2.0 * static_cast<double>(delta) - 1.0, 0.25);
  ComplexVector m(d);
  for (std::size_t k = 0; k < delta; ++k) m[k] = std::exp(-static_cast<double>(k) / a) / norm;
  return Mask{std::move(m), MaskKind::ExpCompact, SupportDomain::Space, delta, 0, std::nullopt};
}

Mask user_mask(ComplexVector values, SupportDomain domain, std::size_t support,
               std::int64_t offset) {
  const std::size_t d = values.size();
  if (support == 0 || support > d) {
    throw Error(ErrorKind::InvalidParameter, "user mask: support length " +
                                                 std::to_string(support) + " out of range");
  }
  Mask m{std::move(values), MaskKind::User, domain, support, offset, std::nullopt};
  if (support_leakage(m) > 1e-24) {
    throw Error(ErrorKind::InvalidParameter, std::string("user mask: values do not vanish off the declared ") +
                                                 to_string(domain) + " support");
  }
  return m;
}

double support_leakage(const Mask& m) {
  const ComplexVector v = m.domain == SupportDomain::Space ? m.values : m.spectrum();
  const double total = v.norm_sq();
  if (total == 0.0) return 0.0;
  double off = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!in_interval(i, m.offset, m.support, v.size())) off += std::norm(v[i]);
  }
  return off / total;
}

double mu_generic(const ComplexVector& mhat, std::int64_t p_lo, std::int64_t p_hi,
                  std::int64_t q_lo, std::int64_t q_hi) {
  double best = std::numeric_limits<double>::infinity();
  for (std::int64_t p = p_lo; p <= p_hi; ++p) {
    const ComplexVector spec = dft(shifted_autocorrelation(mhat, p));
    for (std::int64_t q = q_lo; q <= q_hi; ++q) best = std::min(best, std::abs(spec.at(q)));
  }
  return best;
}

double mu1(const Mask& m, std::size_t kappa) {
  if (m.domain != SupportDomain::Fourier) {
    throw Error(ErrorKind::InvalidParameter, "mu1: mask must be fourier-supported");
  }
  if (m.support < 2 || kappa < 2 || kappa > m.support) {
    throw Error(ErrorKind::InvalidParameter, "mu1: need 2 <= kappa <= rho with rho >= 2");
  }
  const auto k = static_cast<std::int64_t>(kappa);
  const auto d = static_cast<std::int64_t>(m.dim());
  return mu_generic(m.spectrum(), 1 - k, k - 1, 0, d - 1);
}

double mu2(const Mask& m, std::size_t gamma) {
  if (m.domain != SupportDomain::Space) {
    throw Error(ErrorKind::InvalidParameter, "mu2: mask must be space-supported");
  }
  const std::size_t delta = m.support;
  if (gamma < 1 || gamma > 2 * delta - 1) {
    throw Error(ErrorKind::InvalidParameter, "mu2: need 1 <= gamma <= 2*delta-1");
  }
  const auto g = static_cast<std::int64_t>(gamma);
  const auto dl = static_cast<std::int64_t>(delta);
  return mu_generic(m.spectrum(), 1 - g, g - 1, 1 - dl, dl - 1);
}

double mu_compact_collapse(const Mask& m, std::size_t kappa) {
  if (m.domain != SupportDomain::Space) {
    throw Error(ErrorKind::InvalidParameter, "mu_compact_collapse: mask must be space-supported");
  }
  if (kappa < 1 || 2 * kappa - 1 > m.dim()) {
    throw Error(ErrorKind::InvalidParameter, "mu_compact_collapse: kappa out of range");
  }
  const auto k = static_cast<std::int64_t>(kappa);
  const auto d = static_cast<std::int64_t>(m.dim());
  return mu_generic(m.values, 1 - k, k - 1, 0, d - 1);
}

AdmissibilityReport check_admissible(const Mask& m) {
  const ComplexVector v = m.domain == SupportDomain::Space ? m.values : m.spectrum();
  const std::size_t len = m.support;
  std::vector<double> a(len);
  for (std::size_t i = 0; i < len; ++i) a[i] = std::abs(v.at(m.offset + static_cast<std::int64_t>(i)));
  // Roundoff from idft/dft round trips must not flip ties.
  const double tol = 1e-12 * (a.empty() ? 0.0 : *std::max_element(a.begin(), a.end()));
  AdmissibilityReport r;
  if (len == 0) {
    r.failed = "empty support";
    return r;
  }
  for (std::size_t i = 0; i < len; ++i) {
    if (a[i] <= tol) {
      r.failed = "zero magnitude at support position " + std::to_string(i);
      return r;
    }
  }
  if (len >= 2 && !(a[0] > static_cast<double>(len - 1) * a[1] + tol)) {
    r.failed = "|a_0| > (len-1)|a_1| fails: " + csv::format_double(a[0]) + " <= " +
               std::to_string(len - 1) + "*" + csv::format_double(a[1]);
    return r;
  }
  for (std::size_t i = 1; i + 1 < len; ++i) {
    if (a[i] + tol < a[i + 1]) {
      r.failed = "magnitudes not nonincreasing at support position " + std::to_string(i);
      return r;
    }
  }
  r.admissible = true;
  return r;
}

void write_mask_file(const std::string& path, const Mask& m) {
  std::map<std::string, std::string> meta{
      {"kind", to_string(m.kind)},
      {"domain", to_string(m.domain)},
      {"support", std::to_string(m.support)},
      {"offset", std::to_string(m.offset)},
      {"seed", m.seed ? std::to_string(*m.seed) : std::string("none")},
  };
  csv::write_vector_file(path, m.values, meta);
}

Mask read_mask_file(const std::string& path) {
  std::map<std::string, std::string> meta;
  ComplexVector v = csv::read_vector_file(path, &meta);
  auto need = [&](const char* key) -> const std::string& {
    auto it = meta.find(key);
    if (it == meta.end()) throw Error(ErrorKind::Parse, "mask file '" + path + "' lacks '" + key + "'");
    return it->second;
  };
  Mask m;
  m.values = std::move(v);
  m.kind = parse_mask_kind(need("kind"));
  m.domain = parse_support_domain(need("domain"));
  try {
    m.support = std::stoull(need("support"));
    m.offset = meta.count("offset") ? std::stoll(meta["offset"]) : 0;
    if (meta.count("seed") && meta["seed"] != "none") m.seed = std::stoull(meta["seed"]);
  } catch (const std::logic_error&) {
    throw Error(ErrorKind::Parse, "mask file '" + path + "': bad integer field");
  }
  return m;
}

}  // namespace wdd
