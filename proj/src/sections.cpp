#include "gapscan/sections.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gapscan/errors.hpp"

namespace gapscan {

namespace {

constexpr int kRescaleBits = 600;
constexpr double kUnitRoundoff = 0x1p-53;

struct DoubleDouble {
  double hi = 0.0;
  double lo = 0.0;
};

DoubleDouble two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

DoubleDouble quick_two_sum(double a, double b) {
  const double s = a + b;
  return {s, b - (s - a)};
}

DoubleDouble operator+(DoubleDouble x, DoubleDouble y) {
  DoubleDouble s = two_sum(x.hi, y.hi);
  s.lo += x.lo + y.lo;
  return quick_two_sum(s.hi, s.lo);
}

DoubleDouble operator-(DoubleDouble x) { return {-x.hi, -x.lo}; }

DoubleDouble operator*(DoubleDouble x, double y) {
  const double p = x.hi * y;
  const double e = std::fma(x.hi, y, -p) + x.lo * y;
  return quick_two_sum(p, e);
}

DoubleDouble scale(DoubleDouble x, int bits) { return {std::ldexp(x.hi, bits), std::ldexp(x.lo, bits)}; }

struct ComplexDD {
  DoubleDouble re;
  DoubleDouble im;
};

ComplexDD operator*(const ComplexDD& x, Complex y) {
  return {x.re * y.real() + -(x.im * y.imag()), x.re * y.imag() + x.im * y.real()};
}

ComplexDD operator+(const ComplexDD& x, const ComplexDD& y) { return {x.re + y.re, x.im + y.im}; }

ComplexDD scale(const ComplexDD& x, int bits) { return {scale(x.re, bits), scale(x.im, bits)}; }

double magnitude(const ComplexDD& x) { return std::hypot(x.re.hi, x.im.hi); }

Complex collapse(const ComplexDD& x) { return {x.re.hi + x.re.lo, x.im.hi + x.im.lo}; }

/// A value times 2^exponent with the mantissa kept in a safe range.
struct Scaled {
  ComplexDD v;
  long exponent = 0;

  void normalize() {
    for (double mag = magnitude(v); mag != 0.0 && std::isfinite(mag) && (mag > 0x1p600 || mag < 0x1p-600); mag = magnitude(v)) {
      const int shift = mag > 1.0 ? -kRescaleBits : kRescaleBits;
      v = scale(v, shift);
      exponent -= shift;
    }
  }
};

/// target += term, both scaled; the sum keeps the larger of the two exponents.
void accumulate(Scaled& target, const ComplexDD& term, long term_exponent) {
  if (magnitude(target.v) == 0.0) {
    target.v = term;
    target.exponent = term_exponent;
    return;
  }
  if (term_exponent > target.exponent) {
    const long diff = term_exponent - target.exponent;
    target.v = diff > 2000 ? ComplexDD{} : scale(target.v, static_cast<int>(-diff));
    target.exponent = term_exponent;
    target.v = target.v + term;
  } else {
    const long diff = target.exponent - term_exponent;
    if (diff <= 2000) target.v = target.v + scale(term, static_cast<int>(-diff));
  }
  target.normalize();
}

/// Running magnitude sum sum_j |a_j||z|^j as (mantissa, exponent).
struct ScaledReal {
  double v = 0.0;
  long exponent = 0;

  void add(double term, long term_exponent) {
    if (term == 0.0) return;
    if (v == 0.0 || term_exponent > exponent) {
      const long diff = term_exponent - exponent;
      v = (v == 0.0 || diff > 2000) ? 0.0 : std::ldexp(v, static_cast<int>(-diff));
      exponent = term_exponent;
      v += term;
    } else {
      const long diff = exponent - term_exponent;
      if (diff <= 2000) v += std::ldexp(term, static_cast<int>(-diff));
    }
    int e = 0;
    v = std::frexp(v, &e);
    exponent += e;
  }

  double log() const { return v == 0.0 ? kZeroLogMagnitude : std::log(v) + exponent * std::numbers::ln2; }
};

}  // namespace

double SectionValue::log_magnitude() const {
  const double mag = std::abs(mantissa);
  if (mag == 0.0) return kZeroLogMagnitude;
  return std::log(mag) + static_cast<double>(exponent) * std::numbers::ln2;
}

double SectionValue::phase() const { return std::arg(mantissa); }

Complex SectionValue::value() const {
  if (exponent > 4000) return mantissa * std::numeric_limits<double>::infinity();
  return {std::ldexp(mantissa.real(), static_cast<int>(exponent)),
          std::ldexp(mantissa.imag(), static_cast<int>(exponent))};
}

double log_distance(const SectionValue& x, const SectionValue& y) {
  const long e = std::max(x.exponent, y.exponent);
  auto rescale = [e](const SectionValue& s) {
    const long diff = e - s.exponent;
    if (diff > 2000) return Complex{};
    return Complex{std::ldexp(s.mantissa.real(), static_cast<int>(-diff)),
                   std::ldexp(s.mantissa.imag(), static_cast<int>(-diff))};
  };
  const double mag = std::abs(rescale(x) - rescale(y));
  if (mag == 0.0) return kZeroLogMagnitude;
  return std::log(mag) + static_cast<double>(e) * std::numbers::ln2;
}

SectionMatrix evaluate_sections(const CoefficientSeries& series, std::span<const std::size_t> sections,
                                std::span<const Complex> points, double conditioning_tolerance) {
  for (std::size_t s = 0; s < sections.size(); ++s) {
    if (sections[s] >= series.size()) {
      throw IndexError("section index " + std::to_string(sections[s]) + " beyond prefix");
    }
    if (s > 0 && sections[s] <= sections[s - 1]) throw PreconditionError("sections must be strictly increasing");
  }
  SectionMatrix out;
  out.sections.assign(sections.begin(), sections.end());
  out.points.assign(points.begin(), points.end());
  out.values.assign(sections.size(), std::vector<SectionValue>(points.size()));
  if (sections.empty()) return out;

  const double log_tol = std::log(conditioning_tolerance);
  const double log_u = std::log(kUnitRoundoff);
  const std::size_t last = sections.back();
  const auto coeffs = series.coefficients();

  for (std::size_t i = 0; i < points.size(); ++i) {
    const Complex z = points[i];
    const double abs_z = std::abs(z);
    Scaled power{{{1.0, 0.0}, {0.0, 0.0}}, 0};
    Scaled sum{};
    ScaledReal abs_power{1.0, 0};
    ScaledReal condition{};
    std::size_t next = 0;
    for (std::size_t j = 0; j <= last; ++j) {
      if (j > 0) {
        power.v = power.v * z;
        power.normalize();
        int e = 0;
        abs_power.v = std::frexp(abs_power.v * abs_z, &e);
        abs_power.exponent += e;
      }
      const Complex a = coeffs[j];
      if (a != Complex{}) {
        const ComplexDD term{power.v.re * a.real() + -(power.v.im * a.imag()),
                             power.v.re * a.imag() + power.v.im * a.real()};
        accumulate(sum, term, power.exponent);
        condition.add(std::abs(a) * abs_power.v, abs_power.exponent);
      }
      if (j == sections[next]) {
        SectionValue& sv = out.values[next][i];
        sv.mantissa = collapse(sum.v);
        sv.exponent = sum.exponent;
        const double log_mag = sv.log_magnitude();
        sv.resolved = condition.v == 0.0 || log_u + condition.log() <= log_tol + std::max(0.0, log_mag);
        ++next;
      }
    }
  }
  return out;
}

std::vector<Complex> evaluate_section(const CoefficientSeries& series, std::size_t section,
                                      std::span<const Complex> points) {
  const std::size_t s[1] = {section};
  const auto m = evaluate_sections(series, s, points);
  std::vector<Complex> out;
  out.reserve(points.size());
  for (const auto& v : m.values[0]) out.push_back(v.value());
  return out;
}

}  // namespace gapscan
