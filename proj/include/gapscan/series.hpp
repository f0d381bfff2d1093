#pragma once

#include <complex>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gapscan {

using Complex = std::complex<double>;

/// ln|a_n| reported for a coefficient that is exactly zero.
inline constexpr double kZeroLogMagnitude = -std::numeric_limits<double>::infinity();

inline constexpr double kDefaultTailFraction = 0.5;

/// Finite prefix a_0, ..., a_{N-1} of a Taylor series about the origin.
///
/// Immutable after construction. Log-magnitudes are computed once so that
/// every magnitude comparison downstream can stay in the log domain.
class CoefficientSeries {
 public:
  /// Throws PreconditionError when `coefficients` is empty or holds a
  /// non-finite value.
  explicit CoefficientSeries(std::vector<Complex> coefficients, std::string label = {});

  std::size_t size() const noexcept { return coefficients_.size(); }
  const Complex& operator[](std::size_t n) const noexcept { return coefficients_[n]; }
  const Complex& at(std::size_t n) const;

  std::span<const Complex> coefficients() const noexcept { return coefficients_; }
  std::span<const double> log_magnitudes() const noexcept { return log_magnitudes_; }
  const std::string& label() const noexcept { return label_; }

  double magnitude(std::size_t n) const { return std::abs(at(n)); }

 private:
  std::vector<Complex> coefficients_;
  std::vector<double> log_magnitudes_;
  std::string label_;
};

/// ln|a_n|, or kZeroLogMagnitude when a_n = 0. Throws IndexError.
double log_magnitude(const CoefficientSeries& series, std::size_t n);

enum class RadiusMethod { cauchy_hadamard, windowed_maximum };

std::string_view to_string(RadiusMethod method);

struct RadiusEstimate {
  double value = std::numeric_limits<double>::infinity();  // may be +inf
  RadiusMethod method = RadiusMethod::cauchy_hadamard;
  std::size_t window = 1;
  double tail_fraction = kDefaultTailFraction;
};

/// First index of the trailing `tail_fraction` of [0, length): the last
/// ceil(tail_fraction * length) indices are the tail.
std::size_t tail_start(std::size_t length, double tail_fraction);

/// 1 / max_{n in indices, n > 0} exp(log_values[n] / n), evaluated in the log
/// domain. Indices with a zero sentinel are skipped; returns +inf when every
/// index is skipped.
double radius_from_log_values(std::span<const double> log_values,
                              std::span<const std::size_t> indices);

/// Finite-prefix Cauchy-Hadamard estimate: the limsup of |a_n|^{1/n} is
/// replaced by the maximum over the trailing fraction of indices.
RadiusEstimate radius_cauchy_hadamard(const CoefficientSeries& series,
                                      double tail_fraction = kDefaultTailFraction);

/// Windowed-maximum estimate. A_n = max(|a_n|, ..., |a_{n-q+1}|); for the
/// expansion of a rational function with denominator degree q the n-th
/// root of A_n converges to 1/r even when the coefficients vanish
/// periodically.
RadiusEstimate radius_windowed(const CoefficientSeries& series, std::size_t window,
                               double tail_fraction = kDefaultTailFraction);

/// ln A_n for every n, window clipped at index 0.
std::vector<double> windowed_log_maxima(std::span<const double> log_values, std::size_t window);

}  // namespace gapscan
