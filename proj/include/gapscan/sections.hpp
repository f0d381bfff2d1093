#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gapscan/series.hpp"

namespace gapscan {

/// A partial-sum value stored as mantissa * 2^exponent so that sections at
/// |z| > 1 stay representable long after z^n has left the double range.
struct SectionValue {
  Complex mantissa{};
  long exponent = 0;
  /// Data-conditioning guard: false when u * sum_j |a_j||z|^j exceeds the
  /// tolerance times max(1, |s(z)|), i.e. when half-ulp perturbations of the
  /// stored coefficients could move the value by more than the tolerance.
  bool resolved = true;

  /// ln|s(z)|, kZeroLogMagnitude for an exact zero.
  double log_magnitude() const;
  double phase() const;
  /// The value as a plain complex number (may overflow to inf).
  Complex value() const;
};

/// |x - y| in the log domain (kZeroLogMagnitude when equal).
double log_distance(const SectionValue& x, const SectionValue& y);

inline constexpr double kDefaultConditioningTolerance = 1e-12;

/// values[s][i] = s_{sections[s]}(points[i]).
struct SectionMatrix {
  std::vector<std::size_t> sections;
  std::vector<Complex> points;
  std::vector<std::vector<SectionValue>> values;
};

/// Evaluates every requested section at every point in one forward pass per
/// point. Powers and partial sums are carried in double-double arithmetic
/// (error-free TwoSum / FMA TwoProduct), with exact power-of-two rescaling
/// whenever |z^j| leaves [2^-600, 2^600]. `sections` must be strictly
/// increasing and below the series length (IndexError otherwise).
SectionMatrix evaluate_sections(const CoefficientSeries& series, std::span<const std::size_t> sections,
                                std::span<const Complex> points,
                                double conditioning_tolerance = kDefaultConditioningTolerance);

/// Plain complex values of a single section at several points.
std::vector<Complex> evaluate_section(const CoefficientSeries& series, std::size_t section,
                                      std::span<const Complex> points);

}  // namespace gapscan
