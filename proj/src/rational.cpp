#include "gapscan/rational.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gapscan/errors.hpp"

namespace gapscan {

namespace {

std::vector<Complex> multiply(std::span<const Complex> a, std::span<const Complex> b) {
  std::vector<Complex> out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

std::size_t effective_degree(std::span<const Complex> c) {
  std::size_t deg = c.size();
  while (deg > 0 && c[deg - 1] == Complex{}) --deg;
  return deg == 0 ? 0 : deg - 1;
}

Complex horner(std::span<const Complex> c, Complex z) {
  Complex acc{};
  for (std::size_t k = c.size(); k-- > 0;) acc = acc * z + c[k];
  return acc;
}

double horner_abs(std::span<const Complex> c, double r) {
  double acc = 0.0;
  for (std::size_t k = c.size(); k-- > 0;) acc = acc * r + std::abs(c[k]);
  return acc;
}

}  // namespace

RationalFunction RationalFunction::from_poles(std::vector<Complex> numerator, std::vector<Pole> poles) {
  std::vector<Complex> den{Complex{1.0}};
  for (const Pole& p : poles) {
    if (p.location == Complex{}) throw PreconditionError("pole at the origin has no Taylor expansion");
    const Complex factor[2] = {Complex{1.0}, -1.0 / p.location};
    for (unsigned m = 0; m < p.multiplicity; ++m) den = multiply(den, factor);
  }
  return {std::move(numerator), std::move(den), std::move(poles)};
}

std::size_t RationalFunction::denominator_degree() const { return effective_degree(denominator); }

Complex RationalFunction::operator()(Complex z) const {
  return horner(numerator, z) / horner(denominator, z);
}

CoefficientSeries expand(const RationalFunction& rf, std::size_t length) {
  if (length == 0) throw PreconditionError("expansion length must be positive");
  if (rf.denominator.empty() || rf.denominator[0] == Complex{}) {
    throw PreconditionError("denominator has zero constant term");
  }
  const auto& q = rf.denominator;
  const std::size_t deg_q = effective_degree(q);
  std::vector<Complex> a(length);
  for (std::size_t n = 0; n < length; ++n) {
    Complex acc = n < rf.numerator.size() ? rf.numerator[n] : Complex{};
    for (std::size_t j = 1; j <= std::min(n, deg_q); ++j) acc -= q[j] * a[n - j];
    a[n] = acc / q[0];
  }
  return CoefficientSeries(std::move(a));
}

Expansion expand_monitored(const RationalFunction& rf, std::size_t length) {
  Expansion out{expand(rf, length), false};
  if (!rf.declared_poles || rf.declared_poles->empty() || length < 16) return out;

  double r = std::numeric_limits<double>::infinity();
  for (const Pole& p : *rf.declared_poles) r = std::min(r, std::abs(p.location));
  const double target = 1.0 / r;
  const auto maxima =
      windowed_log_maxima(out.series.log_magnitudes(), std::max<std::size_t>(1, rf.denominator_degree()));

  // Relative deviation of A_n^{1/n} from 1/r at checkpoints spanning the last quarter.
  constexpr int kCheckpoints = 8;
  const std::size_t first = length - length / 4;
  std::vector<double> dev;
  for (int c = 0; c <= kCheckpoints; ++c) {
    const std::size_t n = first + (length - 1 - first) * static_cast<std::size_t>(c) / kCheckpoints;
    if (n == 0 || maxima[n] == kZeroLogMagnitude) continue;
    dev.push_back(std::abs(std::exp(maxima[n] / static_cast<double>(n)) - target) / target);
  }
  if (dev.size() >= 2 && dev.back() > 0.1) {
    out.numerically_unstable = std::is_sorted(dev.begin(), dev.end());
  }
  return out;
}

std::vector<Complex> polynomial_roots(std::span<const Complex> coefficients) {
  const std::size_t deg = effective_degree(coefficients);
  if (deg == 0) return {};
  const auto c = coefficients.first(deg + 1);

  if (deg == 1) return {-c[0] / c[1]};
  if (deg == 2) {
    const Complex disc = std::sqrt(c[1] * c[1] - 4.0 * c[2] * c[0]);
    // Pick the sign that avoids cancellation, then recover the other root from the product.
    const Complex t = std::real(std::conj(c[1]) * disc) >= 0.0 ? -(c[1] + disc) / 2.0 : -(c[1] - disc) / 2.0;
    if (t == Complex{}) return {Complex{}, Complex{}};
    return {t / c[2], c[0] / t};
  }

  // Aberth-Ehrlich on the monic polynomial, started on a circle of radius
  // given by the Cauchy bound with an irrational angular offset.
  std::vector<Complex> monic(c.begin(), c.end());
  for (auto& v : monic) v /= c[deg];
  std::vector<Complex> deriv(deg);
  for (std::size_t k = 1; k <= deg; ++k) deriv[k - 1] = static_cast<double>(k) * monic[k];

  double bound = 0.0;
  for (std::size_t k = 0; k < deg; ++k) bound = std::max(bound, std::abs(monic[k]));
  const double start_radius = 0.5 * (1.0 + bound);

  std::vector<Complex> z(deg);
  for (std::size_t k = 0; k < deg; ++k) {
    z[k] = std::polar(start_radius, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(deg) + 0.4);
  }

  constexpr int kMaxIterations = 500;
  for (int it = 0; it < kMaxIterations; ++it) {
    double max_step = 0.0;
    for (std::size_t k = 0; k < deg; ++k) {
      const Complex pz = horner(monic, z[k]);
      if (pz == Complex{}) continue;
      const Complex ratio = pz / horner(deriv, z[k]);
      Complex repulsion{};
      for (std::size_t j = 0; j < deg; ++j)
        if (j != k) repulsion += 1.0 / (z[k] - z[j]);
      const Complex step = ratio / (1.0 - ratio * repulsion);
      z[k] -= step;
      max_step = std::max(max_step, std::abs(step) / std::max(1.0, std::abs(z[k])));
    }
    if (max_step < 1e-15) break;
  }

  for (const Complex& root : z) {
    const double scale = horner_abs(monic, std::abs(root));
    if (!(std::abs(horner(monic, root)) <= 1e-10 * scale)) {
      throw ConvergenceError("root finder failed to converge");
    }
  }
  return z;
}

std::vector<Pole> cluster_roots(std::span<const Complex> roots, double relative_tolerance) {
  std::vector<Pole> poles;
  std::vector<std::vector<Complex>> members;
  for (const Complex& r : roots) {
    bool merged = false;
    for (std::size_t i = 0; i < poles.size(); ++i) {
      if (std::abs(r - poles[i].location) <= relative_tolerance * std::max(1.0, std::abs(r))) {
        members[i].push_back(r);
        Complex mean{};
        for (const Complex& m : members[i]) mean += m;
        poles[i].location = mean / static_cast<double>(members[i].size());
        ++poles[i].multiplicity;
        merged = true;
        break;
      }
    }
    if (!merged) {
      poles.push_back({r, 1});
      members.push_back({r});
    }
  }
  return poles;
}

PolesOnCircle poles_on_circle(const RationalFunction& rf, double radius_tolerance) {
  if (!(radius_tolerance >= 0.0)) throw PreconditionError("radius_tolerance must be nonnegative");
  std::vector<Pole> all;
  if (rf.declared_poles) {
    all = *rf.declared_poles;
  } else {
    all = cluster_roots(polynomial_roots(rf.denominator));
  }
  PolesOnCircle out;
  for (const Pole& p : all) out.radius = std::min(out.radius, std::abs(p.location));
  if (all.empty()) return out;
  for (const Pole& p : all) {
    if (std::abs(p.location) <= out.radius * (1.0 + radius_tolerance)) out.poles.push_back(p);
  }
  out.count = out.poles.size();
  return out;
}

}  // namespace gapscan
