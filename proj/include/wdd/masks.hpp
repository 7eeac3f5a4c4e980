#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "wdd/core_dsp.hpp"

namespace wdd {

enum class MaskKind { ExpBandlimited, RandomBandlimited, ExpCompact, User };
enum class SupportDomain { Space, Fourier };

const char* to_string(MaskKind kind) noexcept;
const char* to_string(SupportDomain domain) noexcept;
MaskKind parse_mask_kind(const std::string& s);
SupportDomain parse_support_domain(const std::string& s);

/// Spatial mask values m plus the declared support of m (space) or m hat (fourier):
/// the cyclic interval [offset, offset + support).
struct Mask {
  ComplexVector values;
  MaskKind kind = MaskKind::User;
  SupportDomain domain = SupportDomain::Space;
  std::size_t support = 0;
  std::int64_t offset = 0;
  std::optional<std::uint64_t> seed;

  std::size_t dim() const noexcept { return values.size(); }
  /// m hat = dft(m).
  ComplexVector spectrum() const { return dft(values); }
};

/// m hat_k = e^{-k/a} / (2 rho - 1)^{1/4} on [rho]_0, a = max(4, (rho-1)/2).
Mask exp_bandlimited_mask(std::size_t d, std::size_t rho);
/// m hat_k = (1 + 0.5 u) e^{2 pi i v} on [rho]_0 with u, v independent U(0,1).
Mask random_bandlimited_mask(std::size_t d, std::size_t rho, std::uint64_t seed);
/// m_k = e^{-k/a} / (2 delta - 1)^{1/4} on [delta]_0, a = max(4, (delta-1)/2).
Mask exp_compact_mask(std::size_t d, std::size_t delta);
/// Wrap caller-supplied values; validates that they vanish off the declared support.
Mask user_mask(ComplexVector values, SupportDomain domain, std::size_t support,
               std::int64_t offset = 0);

/// Off-support energy relative to total, in the declared domain.
double support_leakage(const Mask& m);

/// min over |p| <= kappa-1 and all q of |F(m hat o S_p conj(m hat))_q|.
double mu1(const Mask& m, std::size_t kappa);
/// min over |p| <= gamma-1 and |q| <= delta-1 of |F(m hat o S_p conj(m hat))_q|.
double mu2(const Mask& m, std::size_t gamma);
/// min over |w| <= kappa-1 and all a of |F(m o S_w conj(m))_a|; the smallest divisor
/// met when collapsing compact-mask measurements. Equals (1/d) times the full-shift
/// variant of mu2 when kappa = delta.
double mu_compact_collapse(const Mask& m, std::size_t kappa);

/// Generic min over p in [p_lo, p_hi] and q in [q_lo, q_hi] of |F(m hat o S_p conj(m hat))_q|.
double mu_generic(const ComplexVector& mhat, std::int64_t p_lo, std::int64_t p_hi,
                  std::int64_t q_lo, std::int64_t q_hi);

struct AdmissibilityReport {
  bool admissible = false;
  /// Empty when admissible, otherwise the first failed condition.
  std::string failed;
};

/// |a_0| > (len-1)|a_1| and |a_1| >= ... >= |a_{len-1}| > 0 on the declared support,
/// read from m (space) or m hat (fourier) starting at the support offset.
AdmissibilityReport check_admissible(const Mask& m);

void write_mask_file(const std::string& path, const Mask& m);
Mask read_mask_file(const std::string& path);

}  // namespace wdd
