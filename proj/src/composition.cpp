#include "gapscan/composition.hpp"

#include <algorithm>
#include <cmath>

#include "gapscan/binomial.hpp"
#include "gapscan/errors.hpp"

namespace gapscan {

namespace {

Complex integer_power(Complex base, std::size_t exponent) {
  Complex result{1.0, 0.0};
  while (exponent > 0) {
    if (exponent & 1U) result *= base;
    base *= base;
    exponent >>= 1U;
  }
  return result;
}

}  // namespace

void CompositionConfig::validate(std::optional<double> delta) const {
  if (std::abs(std::abs(boundary_point) - 1.0) > 1e-12) {
    throw PreconditionError("boundary point must have modulus 1");
  }
  if (degree < 1) throw PreconditionError("composition degree must be at least 1");
  if (delta) {
    if (!(*delta > 0.0)) throw PreconditionError("delta must be positive");
    if (static_cast<double>(degree) * *delta < 1.0) {
      throw PreconditionError("composition degree p is below 1/delta");
    }
  }
}

std::vector<Complex> CompositionConfig::inner_polynomial() const {
  std::vector<Complex> q(degree + 2);
  q[degree] = boundary_point / 2.0;
  q[degree + 1] = boundary_point / 2.0;
  return q;
}

std::vector<Complex> compose_bruteforce(const CoefficientSeries& series, const CompositionConfig& cfg,
                                        std::size_t w_length, std::size_t r_max) {
  cfg.validate();
  const std::size_t p = cfg.degree;
  // q(w)^r starts at w^{rp}: a nonzero a_r past r_max with rp < w_length
  // would change the requested coefficients.
  for (std::size_t r = r_max + 1; r < series.size() && r * p < w_length; ++r) {
    if (series[r] != Complex{}) {
      throw PreconditionError("r_max too small: terms beyond r_max reach the requested coefficients");
    }
  }
  const Complex half_c = cfg.boundary_point / 2.0;
  std::vector<Complex> out(w_length);
  std::vector<Complex> power(w_length);  // q(w)^r truncated
  if (w_length > 0) power[0] = 1.0;
  const std::size_t last = std::min(r_max, series.size() - 1);
  for (std::size_t r = 0; r <= last && r * p < w_length; ++r) {
    if (r > 0) {
      // power <- power * (c/2)(w^p + w^{p+1}); descending so reads precede writes.
      for (std::size_t n = w_length; n-- > 0;) {
        Complex acc{};
        if (n >= p) acc += power[n - p];
        if (n >= p + 1) acc += power[n - p - 1];
        power[n] = half_c * acc;
      }
    }
    const Complex a = series[r];
    if (a == Complex{}) continue;
    for (std::size_t n = r * p; n < w_length; ++n) out[n] += a * power[n];
  }
  return out;
}

Complex grouped_coefficient(const CoefficientSeries& series, const CompositionConfig& cfg, std::size_t section,
                            std::size_t n) {
  cfg.validate();
  const std::size_t p = cfg.degree;
  if (n > (p + 1) * section) throw IndexError("n exceeds the degree (p+1) m_k of s_{m_k}(q(w))");
  if (section >= series.size()) throw IndexError("section index beyond prefix");
  Complex acc{};
  const std::size_t r_lo = n / (p + 1);
  const std::size_t r_hi = std::min(n / p, section);
  for (std::size_t r = r_lo; r <= r_hi; ++r) {
    const std::size_t top = r * (p + 1);
    if (top < n || top - n > r) continue;
    const auto l = static_cast<unsigned>(top - n);
    acc += series[r] * integer_power(cfg.boundary_point, r) * halved_binomial(static_cast<unsigned>(r), l);
  }
  return acc;
}

std::vector<Complex> grouped_polynomial(const CoefficientSeries& series, const CompositionConfig& cfg,
                                        std::size_t section) {
  std::vector<Complex> d((cfg.degree + 1) * section + 1);
  for (std::size_t n = 0; n < d.size(); ++n) d[n] = grouped_coefficient(series, cfg, section, n);
  return d;
}

double contribution_bound(const BoundingFamily& family, std::size_t section, std::size_t p, std::size_t n) {
  if (n <= p * section) return 0.0;
  const double m = static_cast<double>(section);
  const double pd = static_cast<double>(p);
  return (static_cast<double>(n) / (pd * (pd + 1.0)) + 2.0) * family(n / (p + 1)) / (m * m);
}

double aggregate_contribution_bound(const BoundingFamily& family, std::size_t section, std::size_t p) {
  const double m = static_cast<double>(section);
  return (m * m / static_cast<double>(p) + 2.0 * m) * family(p * section / (p + 1)) / (m * m);
}

CompositionResult contribution_bound_check(const CoefficientSeries& series, const GapCertificate& cert,
                                           const CompositionConfig& cfg, std::size_t k,
                                           const ContributionOptions& options) {
  if (cert.series_class != SeriesClass::quasi_ostrowski && cert.series_class != SeriesClass::ostrowski) {
    throw PreconditionError("contribution bound needs an Ostrowski-type certificate");
  }
  if (options.require_accepted_certificate && !verify_certificate(series, cert).accepted) {
    throw PreconditionError("prerequisite certificate rejected");
  }
  cfg.validate(cert.delta);
  if (k >= cert.m_seq.size()) throw IndexError("section index k beyond the certificate");
  const std::size_t p = cfg.degree;
  const std::size_t mk = cert.m_seq[k];
  if (mk == 0) throw PreconditionError("contribution bound needs m_k > 0");

  CompositionResult out;
  out.section_index = k;
  out.section = mk;
  out.r_max = (p + 1) * mk / p;
  if (out.r_max >= series.size()) throw PreconditionError("prefix too short for r_max = floor((p+1) m_k / p)");

  const std::size_t top = (p + 1) * mk;
  out.b_coefficients = compose_bruteforce(series, cfg, top + 1, out.r_max);
  out.d_coefficients = grouped_polynomial(series, cfg, mk);

  const BoundingFamily family = cert.bounds.value_or(BoundingFamily::zero());
  out.low_range_equal = true;
  out.bounds_hold = true;
  for (std::size_t n = 0; n <= top; ++n) {
    const double diff = std::abs(out.b_coefficients[n] - out.d_coefficients[n]);
    if (n <= p * mk) {
      out.low_range_max_error = std::max(out.low_range_max_error, diff);
      if (diff > options.equality_tolerance * std::max(1.0, std::abs(out.b_coefficients[n]))) {
        if (out.low_range_equal && (!out.first_violation || n < *out.first_violation)) out.first_violation = n;
        out.low_range_equal = false;
      }
      continue;
    }
    const double bound = contribution_bound(family, mk, p, n);
    out.bound_ledger.push_back({n, diff, bound});
    if (diff > bound + options.slack) {
      if (out.bounds_hold && (!out.first_violation || n < *out.first_violation)) out.first_violation = n;
      out.bounds_hold = false;
    }
  }
  out.passed = out.low_range_equal && out.bounds_hold;
  out.aggregate_bound = aggregate_contribution_bound(family, mk, p);
  return out;
}

}  // namespace gapscan
