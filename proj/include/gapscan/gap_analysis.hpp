#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gapscan/series.hpp"

namespace gapscan {

enum class BoundingKind { power_law, explicit_list, zero };

/// The sequence (c_j) that dominates gap coefficients in the quasi classes.
struct BoundingFamily {
  BoundingKind kind = BoundingKind::power_law;
  double scale = 1.0;     // power_law: c_j = scale / j^exponent, j >= 1
  double exponent = 2.0;
  std::vector<double> values;  // explicit_list: c_j = values[j]

  static BoundingFamily power_law(double scale, double exponent);
  static BoundingFamily explicit_list(std::vector<double> values);
  /// c_j = 0: the quasi classes collapse to the classical ones.
  static BoundingFamily zero();

  /// c_j. power_law gives +inf at j = 0; explicit_list throws IndexError
  /// beyond its length.
  double operator()(std::size_t j) const;
  bool is_zero() const { return kind == BoundingKind::zero; }

  /// Infimum of the p for which sum c_j^p < inf (power law: 1/exponent,
  /// zero family: 0). Empty for explicit lists, which are finite and say
  /// nothing about the tail.
  std::optional<double> summability_threshold() const;
  /// Every c_j positive and nonincreasing (checked over the first `upto`
  /// indices for explicit lists).
  bool positive_decreasing(std::size_t upto) const;
};

enum class SeriesClass { lacunary, ostrowski, hadamard, quasi_lacunary, quasi_ostrowski, quasi_hadamard };

std::string_view to_string(SeriesClass c);
std::optional<SeriesClass> parse_series_class(std::string_view name);
bool is_quasi(SeriesClass c);
bool is_ostrowski_type(SeriesClass c);
bool is_hadamard_type(SeriesClass c);
bool is_lacunary_type(SeriesClass c);

/// Claimed membership of a series in one of the gap classes.
struct GapCertificate {
  SeriesClass series_class = SeriesClass::hadamard;
  std::vector<std::size_t> m_seq;
  std::vector<std::size_t> n_seq;  // Ostrowski-type classes only
  double delta = 0.0;              // Ostrowski and Hadamard classes
  std::optional<BoundingFamily> bounds;
  double summability_exponent = 2.0;  // p of the quasi-lacunary class
};

struct VerifyOptions {
  /// Partial sums of |a_{m_v}| must exceed this for divergence evidence.
  double divergence_floor = 5.0;
  /// ... and the last observed |a_{m_v}| must exceed this.
  double term_floor = 1e-4;
};

struct FailedCondition {
  std::string condition;
  std::size_t index = 0;  // first violating index (coefficient or sequence position)
  double measured = 0.0;
  double required = 0.0;
};

struct CertificateVerdict {
  bool accepted = false;
  std::vector<FailedCondition> failed_conditions;
  /// Asymptotic conditions were only checked on the observed range.
  bool prefix_caveat = false;
  /// sup |a_{m_v}| over the prefix, for the lacunary classes.
  std::optional<double> anchor_sup;
  std::vector<std::string> notes;

  bool failed(std::string_view condition) const;
};

/// Checks the definition of the certificate's class restricted to the
/// observed prefix. Throws IndexError for certificate indices beyond the
/// prefix and PreconditionError when a quasi class has no bounding family.
CertificateVerdict verify_certificate(const CoefficientSeries& series, const GapCertificate& cert,
                                      const VerifyOptions& options = {});

struct GapRun {
  std::size_t first = 0;  // inclusive
  std::size_t last = 0;   // inclusive
};

struct GapProposal {
  std::vector<std::size_t> large_indices;  // |a_j| > c_j
  std::vector<GapRun> gaps;                // maximal small runs between large indices
  std::vector<std::size_t> m_seq;          // large index opening each gap
  std::vector<std::size_t> n_seq;          // large index closing each gap
};

/// Splits indices into large (|a_j| > c_j) and small (|a_j| <= c_j; ties are
/// small). Gaps are the runs of small indices flanked by large ones.
GapProposal detect_gaps(const CoefficientSeries& series, const BoundingFamily& smallness);

/// Hadamard-type certificate read as Ostrowski with n_v = m_{v+1}.
GapCertificate hadamard_as_ostrowski(const GapCertificate& cert);
/// Hadamard-type certificate read as lacunary with the same anchors.
GapCertificate hadamard_as_lacunary(const GapCertificate& cert);

}  // namespace gapscan
