#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <string_view>
#include <vector>

#include "gapscan/series.hpp"

namespace gapscan {

/// Hypotheses of the relaxed pole-count bound: only poles on |z| = rho,
/// nothing else singular inside |z| = rho1, and 1/rho1 < 1/rho - 2 eps.
struct PoleBoundConfig {
  double rho = 1.0;
  double rho1 = std::numeric_limits<double>::infinity();
  double epsilon = 0.05;
  double tail_fraction = kDefaultTailFraction;

  /// Throws PreconditionError on any violated hypothesis.
  void validate() const;
  /// ln(1/rho - eps), the per-index log threshold slope.
  double log_threshold_base() const;
};

enum class ThresholdMode { relaxed, classical_nonzero };
enum class BoundStatus { ok, no_admissible_coefficients };

std::string_view to_string(ThresholdMode mode);
std::string_view to_string(BoundStatus status);

struct PoleBoundReport {
  ThresholdMode mode = ThresholdMode::relaxed;
  /// v_counts[n - 1] = v_n for n = 1..N.
  std::vector<std::size_t> v_counts;
  /// ratios[n - 1] = n / v_n, empty when v_n = 0.
  std::vector<std::optional<double>> ratios;
  BoundStatus status = BoundStatus::ok;
  /// floor of the tail maximum of n / v_n; empty when no admissible coefficients.
  std::optional<std::size_t> bound;
  /// n attaining the tail maximum.
  std::optional<std::size_t> argmax;
  double tail_fraction = kDefaultTailFraction;
};

/// v_n = #{ j < n : |a_j| > (1/rho - eps)^j }, compared in the log domain
/// with strict inequality and no extra slack.
PoleBoundReport count_exceeding(const CoefficientSeries& series, const PoleBoundConfig& cfg);

/// Classical count: v_n = #{ j < n : |a_j| > zero_tolerance }.
PoleBoundReport count_nonzero(const CoefficientSeries& series, double zero_tolerance = 0.0,
                              double tail_fraction = kDefaultTailFraction);

}  // namespace gapscan
