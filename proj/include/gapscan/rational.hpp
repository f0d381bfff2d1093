#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "gapscan/series.hpp"

namespace gapscan {

struct Pole {
  Complex location;
  unsigned multiplicity = 1;
};

/// P(z) / Q(z) with coefficient lists in ascending powers. Q(0) must be
/// nonzero. Callers assert that P and Q share no roots; nothing here checks.
struct RationalFunction {
  std::vector<Complex> numerator;
  std::vector<Complex> denominator;
  std::optional<std::vector<Pole>> declared_poles;

  /// numerator / prod_k (1 - z / pole_k)^{m_k}, with the poles declared.
  static RationalFunction from_poles(std::vector<Complex> numerator, std::vector<Pole> poles);

  std::size_t denominator_degree() const;
  Complex operator()(Complex z) const;
};

struct Expansion {
  CoefficientSeries series;
  /// Set when |a_n|^{1/n} drifts monotonically away from the declared 1/r by
  /// more than 10% over the last quarter of the prefix.
  bool numerically_unstable = false;
};

/// First `length` Taylor coefficients by the recurrence
/// a_n = (p_n - sum_{j=1..deg Q} q_j a_{n-j}) / q_0.
CoefficientSeries expand(const RationalFunction& rf, std::size_t length);

/// expand() plus the drift monitor (only active when poles are declared).
Expansion expand_monitored(const RationalFunction& rf, std::size_t length);

struct PolesOnCircle {
  std::size_t count = 0;                                            // distinct locations
  double radius = std::numeric_limits<double>::infinity();          // min pole modulus
  std::vector<Pole> poles;
};

/// Poles whose modulus lies within `radius_tolerance` (relative) of the
/// smallest pole modulus. Uses the declared poles when present, otherwise
/// the roots of the denominator.
PolesOnCircle poles_on_circle(const RationalFunction& rf, double radius_tolerance = 1e-6);

/// Roots of sum_k c_k z^k (ascending coefficients, trailing zeros ignored).
/// Degrees 1 and 2 are closed form; higher degrees use Aberth-Ehrlich
/// iteration. Throws ConvergenceError when the relative residual of any root
/// stays above 1e-10.
std::vector<Complex> polynomial_roots(std::span<const Complex> coefficients);

/// Groups nearly equal roots into poles with multiplicity.
std::vector<Pole> cluster_roots(std::span<const Complex> roots, double relative_tolerance = 1e-5);

}  // namespace gapscan
