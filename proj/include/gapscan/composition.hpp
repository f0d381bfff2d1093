#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "gapscan/gap_analysis.hpp"
#include "gapscan/series.hpp"

namespace gapscan {

/// The substitution z = q(w) = (c/2)(w^p + w^{p+1}) used to push a boundary
/// point c of the unit circle onto w = 1.
struct CompositionConfig {
  Complex boundary_point{1.0, 0.0};
  std::size_t degree = 1;  // p

  /// Throws PreconditionError unless |c| = 1 (within 1e-12), p >= 1 and,
  /// when `delta` is given, p >= 1/delta.
  void validate(std::optional<double> delta = std::nullopt) const;
  /// Coefficients of q(w) in ascending powers.
  std::vector<Complex> inner_polynomial() const;
};

/// Taylor coefficients of sum_{r <= r_max} a_r q(w)^r up to w^{w_length - 1}
/// by repeated multiplication with q. Coefficients beyond the stored prefix
/// are taken as zero. Throws PreconditionError when some nonzero a_r with
/// r > r_max has r p < w_length (its term would reach the requested range).
std::vector<Complex> compose_bruteforce(const CoefficientSeries& series, const CompositionConfig& cfg,
                                        std::size_t w_length, std::size_t r_max);

/// d_n^{(k)} = sum_r a_r (c/2)^r C(r, r(p+1) - n), r from floor(n/(p+1)) to
/// min(floor(n/p), m_k): the w^n coefficient of s_{m_k}(q(w)).
Complex grouped_coefficient(const CoefficientSeries& series, const CompositionConfig& cfg, std::size_t section,
                            std::size_t n);

/// d_0^{(k)}, ..., d_{(p+1) m_k}^{(k)}.
std::vector<Complex> grouped_polynomial(const CoefficientSeries& series, const CompositionConfig& cfg,
                                        std::size_t section);

/// (1/m_k^2)(n/(p(p+1)) + 2) c_{floor(n/(p+1))} for p m_k < n <= (p+1) m_k,
/// and 0 below.
double contribution_bound(const BoundingFamily& family, std::size_t section, std::size_t p, std::size_t n);

/// (1/m_k^2)(m_k^2/p + 2 m_k) c_{floor(p m_k/(p+1))}: the sup-norm bound on
/// |t_{(p+1)m_k}(w) - s_{m_k}(q(w))| over the closed unit disc.
double aggregate_contribution_bound(const BoundingFamily& family, std::size_t section, std::size_t p);

struct LedgerEntry {
  std::size_t n = 0;
  double contribution = 0.0;  // |b_n - d_n^{(k)}|
  double bound = 0.0;
};

struct ContributionOptions {
  bool require_accepted_certificate = true;
  double slack = 1e-10;
  /// b_n = d_n^{(k)} on n <= p m_k is checked as |b_n - d_n| <= tol * max(1, |b_n|).
  double equality_tolerance = 1e-12;
};

struct CompositionResult {
  std::size_t section_index = 0;  // k
  std::size_t section = 0;        // m_k
  std::size_t r_max = 0;
  std::vector<Complex> b_coefficients;  // n = 0..(p+1) m_k
  std::vector<Complex> d_coefficients;
  std::vector<LedgerEntry> bound_ledger;
  double low_range_max_error = 0.0;
  bool low_range_equal = false;
  bool bounds_hold = false;
  bool passed = false;
  std::optional<std::size_t> first_violation;  // first n breaking equality or the bound
  double aggregate_bound = 0.0;
};

/// Compares b_n (brute force, r_max = floor((p+1) m_k / p)) with d_n^{(k)}
/// for every n <= (p+1) m_k and checks each difference against the
/// contribution bound. `k` indexes the certificate's m sequence.
CompositionResult contribution_bound_check(const CoefficientSeries& series, const GapCertificate& cert,
                                           const CompositionConfig& cfg, std::size_t k,
                                           const ContributionOptions& options = {});

}  // namespace gapscan
