#include "gapscan/pole_bound.hpp"

#include <cmath>

#include "gapscan/errors.hpp"

namespace gapscan {

void PoleBoundConfig::validate() const {
  if (!(rho > 0.0) || !std::isfinite(rho)) throw PreconditionError("rho must be a positive finite radius");
  if (!(rho1 > rho)) throw PreconditionError("rho1 must exceed rho");
  if (!(epsilon > 0.0)) throw PreconditionError("epsilon must be positive");
  if (!(epsilon < 1.0 / (2.0 * rho))) throw PreconditionError("epsilon must be below 1/(2 rho)");
  if (!(1.0 / rho1 < 1.0 / rho - 2.0 * epsilon)) {
    throw PreconditionError("configuration violates 1/rho1 < 1/rho - 2 eps");
  }
  if (!(tail_fraction > 0.0 && tail_fraction < 1.0)) throw PreconditionError("tail_fraction must lie in (0, 1)");
}

double PoleBoundConfig::log_threshold_base() const { return std::log(1.0 / rho - epsilon); }

std::string_view to_string(ThresholdMode mode) {
  return mode == ThresholdMode::relaxed ? "relaxed" : "classical_nonzero";
}

std::string_view to_string(BoundStatus status) {
  return status == BoundStatus::ok ? "ok" : "no_admissible_coefficients";
}

namespace {

template <class Admissible>
PoleBoundReport build_report(const CoefficientSeries& series, ThresholdMode mode, double tail_fraction,
                             Admissible admissible) {
  const std::size_t N = series.size();
  PoleBoundReport report;
  report.mode = mode;
  report.tail_fraction = tail_fraction;
  report.v_counts.resize(N);
  report.ratios.resize(N);

  std::size_t v = 0;
  for (std::size_t n = 1; n <= N; ++n) {
    if (admissible(n - 1)) ++v;
    report.v_counts[n - 1] = v;
    if (v > 0) report.ratios[n - 1] = static_cast<double>(n) / static_cast<double>(v);
  }

  // Tail over n in [first, N]; v_n = 0 positions are skipped.
  const std::size_t first = tail_start(N, tail_fraction) + 1;
  double best = -1.0;
  for (std::size_t n = first; n <= N; ++n) {
    const auto& ratio = report.ratios[n - 1];
    if (ratio && *ratio > best) {
      best = *ratio;
      report.argmax = n;
    }
  }
  if (best < 0.0) {
    report.status = BoundStatus::no_admissible_coefficients;
  } else {
    report.bound = static_cast<std::size_t>(std::floor(best));
  }
  return report;
}

void check_common(const CoefficientSeries& series, double tail_fraction) {
  if (series.size() < 10) throw PreconditionError("pole bound needs at least 10 coefficients");
  if (!(tail_fraction > 0.0 && tail_fraction < 1.0)) throw PreconditionError("tail_fraction must lie in (0, 1)");
}

}  // namespace

PoleBoundReport count_exceeding(const CoefficientSeries& series, const PoleBoundConfig& cfg) {
  cfg.validate();
  check_common(series, cfg.tail_fraction);
  const double slope = cfg.log_threshold_base();
  const auto logs = series.log_magnitudes();
  return build_report(series, ThresholdMode::relaxed, cfg.tail_fraction, [&](std::size_t j) {
    return logs[j] > static_cast<double>(j) * slope;
  });
}

PoleBoundReport count_nonzero(const CoefficientSeries& series, double zero_tolerance, double tail_fraction) {
  check_common(series, tail_fraction);
  if (!(zero_tolerance >= 0.0)) throw PreconditionError("zero_tolerance must be nonnegative");
  const double log_tol = zero_tolerance == 0.0 ? kZeroLogMagnitude : std::log(zero_tolerance);
  const auto logs = series.log_magnitudes();
  return build_report(series, ThresholdMode::classical_nonzero, tail_fraction,
                      [&](std::size_t j) { return logs[j] > log_tol; });
}

}  // namespace gapscan
