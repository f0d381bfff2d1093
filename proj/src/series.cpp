#include "gapscan/series.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gapscan/errors.hpp"

namespace gapscan {

namespace {

void check_tail_fraction(double tail_fraction) {
  if (!(tail_fraction > 0.0 && tail_fraction < 1.0)) {
    throw PreconditionError("tail_fraction must lie in (0, 1)");
  }
}

}  // namespace

CoefficientSeries::CoefficientSeries(std::vector<Complex> coefficients, std::string label)
    : coefficients_(std::move(coefficients)), label_(std::move(label)) {
  if (coefficients_.empty()) {
    throw PreconditionError("coefficient series must hold at least one coefficient");
  }
  log_magnitudes_.reserve(coefficients_.size());
  for (const Complex& a : coefficients_) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
      throw PreconditionError("coefficient series holds a non-finite value");
    }
    log_magnitudes_.push_back(a == Complex{} ? kZeroLogMagnitude : std::log(std::abs(a)));
  }
}

const Complex& CoefficientSeries::at(std::size_t n) const {
  if (n >= coefficients_.size()) {
    throw IndexError("coefficient index " + std::to_string(n) + " outside prefix of length " +
                     std::to_string(coefficients_.size()));
  }
  return coefficients_[n];
}

double log_magnitude(const CoefficientSeries& series, std::size_t n) {
  if (n >= series.size()) {
    throw IndexError("coefficient index " + std::to_string(n) + " outside prefix of length " +
                     std::to_string(series.size()));
  }
  return series.log_magnitudes()[n];
}

std::string_view to_string(RadiusMethod method) {
  switch (method) {
    case RadiusMethod::cauchy_hadamard:
      return "cauchy_hadamard";
    case RadiusMethod::windowed_maximum:
      return "windowed_maximum";
  }
  return "unknown";
}

std::size_t tail_start(std::size_t length, double tail_fraction) {
  const auto count = static_cast<std::size_t>(std::ceil(tail_fraction * static_cast<double>(length)));
  return length - std::min(count, length);
}

double radius_from_log_values(std::span<const double> log_values,
                              std::span<const std::size_t> indices) {
  double best = kZeroLogMagnitude;
  for (std::size_t n : indices) {
    if (n == 0 || n >= log_values.size() || log_values[n] == kZeroLogMagnitude) continue;
    best = std::max(best, log_values[n] / static_cast<double>(n));
  }
  if (best == kZeroLogMagnitude) return std::numeric_limits<double>::infinity();
  return std::exp(-best);
}

std::vector<double> windowed_log_maxima(std::span<const double> log_values, std::size_t window) {
  std::vector<double> out(log_values.size(), kZeroLogMagnitude);
  for (std::size_t n = 0; n < log_values.size(); ++n) {
    const std::size_t first = n + 1 >= window ? n + 1 - window : 0;
    out[n] = *std::max_element(log_values.begin() + static_cast<std::ptrdiff_t>(first),
                               log_values.begin() + static_cast<std::ptrdiff_t>(n) + 1);
  }
  return out;
}

namespace {

std::vector<std::size_t> tail_indices(std::size_t length, double tail_fraction) {
  std::vector<std::size_t> idx(length - tail_start(length, tail_fraction));
  std::iota(idx.begin(), idx.end(), tail_start(length, tail_fraction));
  return idx;
}

}  // namespace

RadiusEstimate radius_cauchy_hadamard(const CoefficientSeries& series, double tail_fraction) {
  check_tail_fraction(tail_fraction);
  if (series.size() < 10) throw PreconditionError("radius estimation needs at least 10 coefficients");
  const auto idx = tail_indices(series.size(), tail_fraction);
  return {radius_from_log_values(series.log_magnitudes(), idx), RadiusMethod::cauchy_hadamard, 1,
          tail_fraction};
}

RadiusEstimate radius_windowed(const CoefficientSeries& series, std::size_t window,
                               double tail_fraction) {
  check_tail_fraction(tail_fraction);
  if (window == 0) throw PreconditionError("window must be a positive integer");
  if (series.size() < window + 10) {
    throw PreconditionError("windowed radius estimation needs at least window + 10 coefficients");
  }
  const auto maxima = windowed_log_maxima(series.log_magnitudes(), window);
  const auto idx = tail_indices(series.size(), tail_fraction);
  return {radius_from_log_values(maxima, idx), RadiusMethod::windowed_maximum, window, tail_fraction};
}

}  // namespace gapscan
