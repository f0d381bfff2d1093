#include "gapscan/gap_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gapscan/errors.hpp"

namespace gapscan {

BoundingFamily BoundingFamily::power_law(double scale, double exponent) {
  if (!(scale > 0.0) || !(exponent > 0.0)) {
    throw PreconditionError("power-law bounding family needs positive scale and exponent");
  }
  return {BoundingKind::power_law, scale, exponent, {}};
}

BoundingFamily BoundingFamily::explicit_list(std::vector<double> values) {
  for (double v : values) {
    if (!(v > 0.0)) throw PreconditionError("explicit bounding values must be positive");
  }
  return {BoundingKind::explicit_list, 1.0, 1.0, std::move(values)};
}

BoundingFamily BoundingFamily::zero() { return {BoundingKind::zero, 0.0, 0.0, {}}; }

double BoundingFamily::operator()(std::size_t j) const {
  switch (kind) {
    case BoundingKind::zero:
      return 0.0;
    case BoundingKind::power_law:
      if (j == 0) return std::numeric_limits<double>::infinity();
      return scale / std::pow(static_cast<double>(j), exponent);
    case BoundingKind::explicit_list:
      if (j >= values.size()) {
        throw IndexError("explicit bounding list has no value for index " + std::to_string(j));
      }
      return values[j];
  }
  return 0.0;
}

std::optional<double> BoundingFamily::summability_threshold() const {
  switch (kind) {
    case BoundingKind::zero:
      return 0.0;
    case BoundingKind::power_law:
      return 1.0 / exponent;
    case BoundingKind::explicit_list:
      return std::nullopt;
  }
  return std::nullopt;
}

bool BoundingFamily::positive_decreasing(std::size_t upto) const {
  switch (kind) {
    case BoundingKind::zero:
      return false;
    case BoundingKind::power_law:
      return scale > 0.0 && exponent > 0.0;
    case BoundingKind::explicit_list: {
      const std::size_t n = std::min(upto, values.size());
      for (std::size_t j = 0; j < n; ++j) {
        if (!(values[j] > 0.0)) return false;
        if (j > 0 && values[j] > values[j - 1]) return false;
      }
      return true;
    }
  }
  return false;
}

std::string_view to_string(SeriesClass c) {
  switch (c) {
    case SeriesClass::lacunary:
      return "lacunary";
    case SeriesClass::ostrowski:
      return "ostrowski";
    case SeriesClass::hadamard:
      return "hadamard";
    case SeriesClass::quasi_lacunary:
      return "quasi_lacunary";
    case SeriesClass::quasi_ostrowski:
      return "quasi_ostrowski";
    case SeriesClass::quasi_hadamard:
      return "quasi_hadamard";
  }
  return "unknown";
}

std::optional<SeriesClass> parse_series_class(std::string_view name) {
  for (auto c : {SeriesClass::lacunary, SeriesClass::ostrowski, SeriesClass::hadamard, SeriesClass::quasi_lacunary,
                 SeriesClass::quasi_ostrowski, SeriesClass::quasi_hadamard}) {
    if (to_string(c) == name) return c;
  }
  return std::nullopt;
}

bool is_quasi(SeriesClass c) {
  return c == SeriesClass::quasi_lacunary || c == SeriesClass::quasi_ostrowski || c == SeriesClass::quasi_hadamard;
}
bool is_ostrowski_type(SeriesClass c) { return c == SeriesClass::ostrowski || c == SeriesClass::quasi_ostrowski; }
bool is_hadamard_type(SeriesClass c) { return c == SeriesClass::hadamard || c == SeriesClass::quasi_hadamard; }
bool is_lacunary_type(SeriesClass c) { return c == SeriesClass::lacunary || c == SeriesClass::quasi_lacunary; }

bool CertificateVerdict::failed(std::string_view condition) const {
  return std::any_of(failed_conditions.begin(), failed_conditions.end(),
                     [&](const FailedCondition& f) { return f.condition == condition; });
}

namespace {

enum class GapRule { zero, at_most, below };

class Checker {
 public:
  Checker(const CoefficientSeries& series, CertificateVerdict& verdict) : series_(series), verdict_(verdict) {}

  void fail(std::string condition, std::size_t index, double measured, double required) {
    if (verdict_.failed(condition)) return;
    verdict_.failed_conditions.push_back({std::move(condition), index, measured, required});
  }

  /// Coefficients a_j with lo < j < hi_exclusive against the rule. `anchor`
  /// is the m opening the gap; `divide_by_anchor` selects the c_j / m^2 form.
  void gap(std::size_t lo, std::size_t hi_exclusive, const BoundingFamily& family, GapRule rule,
           bool divide_by_anchor) {
    const std::size_t hi = std::min(hi_exclusive, series_.size());
    const double anchor = static_cast<double>(lo);
    if (divide_by_anchor && rule != GapRule::zero && lo == 0) return;  // c_j / 0^2 imposes nothing
    for (std::size_t j = lo + 1; j < hi; ++j) {
      const double mag = std::abs(series_[j]);
      if (rule == GapRule::zero) {
        if (mag != 0.0) fail("gap_zero", j, mag, 0.0);
        continue;
      }
      double bound = family(j);
      if (divide_by_anchor) bound /= anchor * anchor;
      const bool ok = rule == GapRule::at_most ? mag <= bound : mag < bound;
      if (!ok) fail(rule == GapRule::at_most ? "gap_bound" : "gap_bound_strict", j, mag, bound);
    }
  }

 private:
  const CoefficientSeries& series_;
  CertificateVerdict& verdict_;
};

}  // namespace

CertificateVerdict verify_certificate(const CoefficientSeries& series, const GapCertificate& cert,
                                      const VerifyOptions& options) {
  const std::size_t N = series.size();
  for (std::size_t m : cert.m_seq)
    if (m >= N) throw IndexError("certificate index " + std::to_string(m) + " beyond prefix");
  for (std::size_t n : cert.n_seq)
    if (n >= N) throw IndexError("certificate index " + std::to_string(n) + " beyond prefix");

  const SeriesClass cls = cert.series_class;
  if (is_quasi(cls) && !cert.bounds) throw PreconditionError("quasi class certificate needs a bounding family");
  const BoundingFamily family = is_quasi(cls) ? *cert.bounds : BoundingFamily::zero();
  const bool classical = family.is_zero();

  CertificateVerdict verdict;
  Checker check(series, verdict);
  const auto& m = cert.m_seq;

  const std::size_t min_anchors = is_ostrowski_type(cls) ? 1 : 2;
  if (m.size() < min_anchors) check.fail("anchor_count", 0, static_cast<double>(m.size()), min_anchors);
  for (std::size_t v = 0; v + 1 < m.size(); ++v) {
    if (m[v + 1] <= m[v]) check.fail("increasing", v + 1, static_cast<double>(m[v + 1]), m[v] + 1.0);
  }

  if (is_lacunary_type(cls)) {
    verdict.prefix_caveat = true;
    for (std::size_t v = 1; v + 1 < m.size(); ++v) {
      const double prev = static_cast<double>(m[v]) - static_cast<double>(m[v - 1]);
      const double cur = static_cast<double>(m[v + 1]) - static_cast<double>(m[v]);
      if (!(cur > prev)) check.fail("gap_growth", v, cur, prev + 1.0);
    }
    const GapRule rule = classical ? GapRule::zero : GapRule::at_most;
    for (std::size_t v = 0; v < m.size(); ++v) {
      check.gap(m[v], v + 1 < m.size() ? m[v + 1] : N, family, rule, false);
    }
    if (!m.empty()) {
      double sup = 0.0;
      for (std::size_t mv : m) sup = std::max(sup, std::abs(series[mv]));
      verdict.anchor_sup = sup;
    }
    if (cls == SeriesClass::quasi_lacunary) {
      const double p = cert.summability_exponent;
      if (!(p > 1.0)) check.fail("summability_exponent", 0, p, 1.0);
      if (const auto threshold = family.summability_threshold()) {
        if (!(p > *threshold)) check.fail("summable", 0, p, *threshold);
      } else {
        verdict.notes.emplace_back("explicit bounding list: p-summability holds on the finite list only");
      }
    }
  }

  if (is_hadamard_type(cls) || is_ostrowski_type(cls)) {
    if (!(cert.delta > 0.0)) check.fail("delta", 0, cert.delta, 0.0);
  }

  if (is_hadamard_type(cls)) {
    for (std::size_t v = 0; v + 1 < m.size(); ++v) {
      const double diff = static_cast<double>(m[v + 1]) - static_cast<double>(m[v]);
      const double need = cert.delta * static_cast<double>(m[v]);
      if (!(diff > need)) check.fail("proportional_gap", v, diff, need);
    }
    const GapRule rule = classical ? GapRule::zero : GapRule::at_most;
    for (std::size_t v = 0; v < m.size(); ++v) {
      check.gap(m[v], v + 1 < m.size() ? m[v + 1] : N, family, rule, true);
    }
    if (cls == SeriesClass::hadamard) {
      for (std::size_t mv : m) {
        if (series[mv] == Complex{}) check.fail("anchor_nonzero", mv, 0.0, 0.0);
      }
    } else {
      verdict.prefix_caveat = true;
      verdict.notes.emplace_back("a_{m_v} != 0 is not imposed; the divergence condition takes its place");
      if (!classical) {
        const auto threshold = family.summability_threshold();
        if (threshold && !(*threshold < 1.0)) check.fail("summable", 0, 1.0, *threshold);
        if (!threshold) verdict.notes.emplace_back("explicit bounding list: summability holds on the finite list only");
        if (!family.positive_decreasing(N)) check.fail("decreasing", 0, 0.0, 0.0);
      }
      double partial = 0.0;
      for (std::size_t mv : m) partial += std::abs(series[mv]);
      const double last = m.empty() ? 0.0 : std::abs(series[m.back()]);
      if (!(partial > options.divergence_floor)) {
        check.fail("divergence", m.empty() ? 0 : m.size() - 1, partial, options.divergence_floor);
      } else if (!(last > options.term_floor)) {
        check.fail("divergence", m.size() - 1, last, options.term_floor);
      }
    }
  }

  if (is_ostrowski_type(cls)) {
    const auto& n = cert.n_seq;
    if (n.size() != m.size()) {
      check.fail("interleave", std::min(n.size(), m.size()), static_cast<double>(n.size()),
                 static_cast<double>(m.size()));
    }
    const std::size_t K = std::min(n.size(), m.size());
    for (std::size_t k = 0; k < K; ++k) {
      if (!(m[k] < n[k])) check.fail("interleave", k, static_cast<double>(n[k]), m[k] + 1.0);
      if (k + 1 < m.size() && !(n[k] <= m[k + 1])) {
        check.fail("interleave", k, static_cast<double>(n[k]), static_cast<double>(m[k + 1]));
      }
      const double diff = static_cast<double>(n[k]) - static_cast<double>(m[k]);
      const double need = cert.delta * static_cast<double>(m[k]);
      if (!(diff > need)) check.fail("proportional_gap", k, diff, need);
    }
    const GapRule rule = classical ? GapRule::zero : GapRule::below;
    for (std::size_t k = 0; k < K; ++k) check.gap(m[k], n[k], family, rule, true);
    if (cls == SeriesClass::quasi_ostrowski && !classical && !family.positive_decreasing(N)) {
      check.fail("decreasing", 0, 0.0, 0.0);
    }
  }

  verdict.accepted = verdict.failed_conditions.empty();
  return verdict;
}

GapProposal detect_gaps(const CoefficientSeries& series, const BoundingFamily& smallness) {
  if (series.size() < 20) throw PreconditionError("gap detection needs at least 20 coefficients");
  GapProposal out;
  for (std::size_t j = 0; j < series.size(); ++j) {
    if (std::abs(series[j]) > smallness(j)) out.large_indices.push_back(j);
  }
  for (std::size_t i = 0; i + 1 < out.large_indices.size(); ++i) {
    const std::size_t lo = out.large_indices[i];
    const std::size_t hi = out.large_indices[i + 1];
    if (hi - lo < 2) continue;
    out.gaps.push_back({lo + 1, hi - 1});
    out.m_seq.push_back(lo);
    out.n_seq.push_back(hi);
  }
  return out;
}

GapCertificate hadamard_as_ostrowski(const GapCertificate& cert) {
  if (!is_hadamard_type(cert.series_class)) throw PreconditionError("expected a Hadamard-type certificate");
  GapCertificate out = cert;
  out.series_class = cert.series_class == SeriesClass::hadamard ? SeriesClass::ostrowski : SeriesClass::quasi_ostrowski;
  out.m_seq.clear();
  out.n_seq.clear();
  for (std::size_t v = 0; v + 1 < cert.m_seq.size(); ++v) {
    out.m_seq.push_back(cert.m_seq[v]);
    out.n_seq.push_back(cert.m_seq[v + 1]);
  }
  return out;
}

GapCertificate hadamard_as_lacunary(const GapCertificate& cert) {
  if (!is_hadamard_type(cert.series_class)) throw PreconditionError("expected a Hadamard-type certificate");
  GapCertificate out = cert;
  out.series_class = cert.series_class == SeriesClass::hadamard ? SeriesClass::lacunary : SeriesClass::quasi_lacunary;
  out.n_seq.clear();
  return out;
}

}  // namespace gapscan
