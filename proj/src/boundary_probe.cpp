#include "gapscan/boundary_probe.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "gapscan/errors.hpp"

namespace gapscan {

std::string_view to_string(Spacing spacing) { return spacing == Spacing::uniform ? "uniform" : "chebyshev"; }

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::converging:
      return "converging";
    case Verdict::overconverging:
      return "overconverging";
    case Verdict::divergence_evidence:
      return "divergence_evidence";
    case Verdict::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

void ArcSpec::validate() const {
  if (!(radius > 0.0)) throw PreconditionError("arc radius must be positive");
  if (!(angle_end > angle_start)) throw PreconditionError("arc needs angle_end > angle_start");
  if (sample_count < 8) throw PreconditionError("arc needs at least 8 samples");
}

std::vector<Complex> ArcSpec::points() const {
  validate();
  std::vector<Complex> out;
  out.reserve(sample_count);
  const double mid = 0.5 * (angle_start + angle_end);
  const double half = 0.5 * (angle_end - angle_start);
  for (std::size_t k = 0; k < sample_count; ++k) {
    const double t = static_cast<double>(k) / static_cast<double>(sample_count - 1);
    const double theta = spacing == Spacing::uniform
                             ? angle_start + t * (angle_end - angle_start)
                             : mid - half * std::cos(std::numbers::pi * t);
    out.push_back(std::polar(radius, theta));
  }
  return out;
}

std::vector<Complex> ExteriorRegion::samples() const {
  if (!(radius > 0.0) || !(eta > 0.0)) throw PreconditionError("exterior region needs positive radius and eta");
  std::vector<Complex> candidates = points;
  if (candidates.empty()) {
    for (std::size_t i = 1; i <= radial_samples; ++i) {
      const double rho = radius * (1.0 + eta * static_cast<double>(i) / static_cast<double>(radial_samples));
      for (std::size_t k = 0; k < angular_samples; ++k) {
        candidates.push_back(
            std::polar(rho, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(angular_samples)));
      }
    }
  }
  std::vector<Complex> out;
  for (const Complex& z : candidates) {
    const double mod = std::abs(z);
    if (!(mod > radius) || mod > (1.0 + eta) * radius * (1.0 + 1e-12)) continue;
    if (excluded_point && std::abs(z - *excluded_point) < exclusion_radius) continue;
    out.push_back(z);
  }
  return out;
}

namespace {

ProbeReport build_probe(std::string name, const CoefficientSeries& series, std::vector<std::size_t> sections,
                        std::vector<Complex> points, const ProbeThresholds& thresholds) {
  ProbeReport report;
  report.probe = std::move(name);
  report.thresholds = thresholds;
  auto matrix = evaluate_sections(series, sections, points, thresholds.conditioning);
  report.section_indices = std::move(matrix.sections);
  report.points = std::move(matrix.points);
  report.values = std::move(matrix.values);

  std::size_t unresolved = 0;
  for (const auto& row : report.values) {
    for (const auto& v : row) {
      if (!v.resolved) {
        ++unresolved;
        continue;
      }
      report.max_log_magnitude = std::max(report.max_log_magnitude, v.log_magnitude());
    }
  }
  report.max_section_magnitude =
      report.max_log_magnitude == kZeroLogMagnitude ? 0.0 : std::exp(report.max_log_magnitude);

  for (std::size_t v = 0; v + 1 < report.values.size(); ++v) {
    double sup = kZeroLogMagnitude;
    bool resolved = true;
    for (std::size_t i = 0; i < report.points.size(); ++i) {
      resolved = resolved && report.values[v][i].resolved && report.values[v + 1][i].resolved;
      sup = std::max(sup, log_distance(report.values[v + 1][i], report.values[v][i]));
    }
    report.cauchy_table.push_back(sup == kZeroLogMagnitude ? 0.0 : std::exp(sup));
    report.cauchy_resolved.push_back(resolved);
  }
  if (unresolved > 0) {
    report.notes.push_back(std::to_string(unresolved) +
                           " section values exceed the conditioning tolerance and were excluded");
  }
  return report;
}

/// Resolved Cauchy differences are eventually decreasing and the last one is
/// below the relative threshold. Only the leading run of resolved entries
/// is used.
bool cauchy_decay(const ProbeReport& report) {
  std::size_t L = 0;
  while (L < report.cauchy_table.size() && report.cauchy_resolved[L]) ++L;
  if (L < 2) return false;
  const auto& c = report.cauchy_table;
  const std::size_t h = std::max<std::size_t>(1, L / 4);
  const double last_max = *std::max_element(c.begin() + static_cast<std::ptrdiff_t>(L - h),
                                            c.begin() + static_cast<std::ptrdiff_t>(L));
  const double prev_max = *std::max_element(c.begin() + static_cast<std::ptrdiff_t>(L - 2 * h),
                                            c.begin() + static_cast<std::ptrdiff_t>(L - h));
  const bool decreasing = last_max == 0.0 || last_max < prev_max;
  const double last = c[L - 1];
  const bool small = last == 0.0 || last < report.thresholds.convergence * report.max_section_magnitude;
  return decreasing && small;
}

bool growth(const ProbeReport& report) { return report.max_log_magnitude > report.thresholds.growth_log; }

}  // namespace

ProbeReport arc_convergence_probe(const CoefficientSeries& series, const GapCertificate& cert, const ArcSpec& arc,
                                  const ProbeThresholds& thresholds) {
  if (!is_lacunary_type(cert.series_class) && !is_hadamard_type(cert.series_class)) {
    throw PreconditionError("arc probe needs a lacunary-type certificate");
  }
  if (cert.m_seq.empty()) throw PreconditionError("certificate lacks m_seq");
  auto report = build_probe("arc_convergence", series, cert.m_seq, arc.points(), thresholds);
  if (growth(report)) {
    report.verdict = Verdict::divergence_evidence;
  } else if (cauchy_decay(report)) {
    report.verdict = Verdict::converging;
  }
  return report;
}

ProbeReport overconvergence_probe(const CoefficientSeries& series, const GapCertificate& cert,
                                  const ExteriorRegion& region, const ProbeThresholds& thresholds) {
  if (!is_ostrowski_type(cert.series_class) && !is_hadamard_type(cert.series_class)) {
    throw PreconditionError("overconvergence probe needs an Ostrowski-type certificate");
  }
  if (cert.m_seq.empty()) throw PreconditionError("certificate lacks m_seq");
  auto samples = region.samples();
  if (samples.empty()) throw PreconditionError("no exterior samples in region");
  auto report = build_probe("overconvergence", series, cert.m_seq, std::move(samples), thresholds);
  if (growth(report)) {
    report.verdict = Verdict::divergence_evidence;
  } else if (cauchy_decay(report)) {
    report.verdict = Verdict::overconverging;
  }
  return report;
}

BoundaryScanReport natural_boundary_scan(const CoefficientSeries& series, const GapCertificate& cert,
                                         double radius_factor, std::size_t angle_samples, const ScanOptions& options,
                                         const ProbeThresholds& thresholds) {
  if (!is_hadamard_type(cert.series_class)) throw PreconditionError("boundary scan needs a Hadamard-type certificate");
  if (!(radius_factor >= 1.0)) throw PreconditionError("radius factor must be at least 1");
  if (angle_samples == 0) throw PreconditionError("boundary scan needs at least one direction");
  if (!(options.radius > 0.0)) throw PreconditionError("radius must be positive");
  if (cert.m_seq.empty()) throw PreconditionError("certificate lacks m_seq");
  if (options.require_accepted_certificate && !verify_certificate(series, cert, options.verify).accepted) {
    throw PreconditionError("certificate rejected");
  }

  std::vector<Complex> points;
  for (std::size_t k = 0; k < angle_samples; ++k) {
    points.push_back(std::polar(radius_factor * options.radius,
                                2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(angle_samples)));
  }

  BoundaryScanReport out;
  out.radius_factor = radius_factor;
  out.angle_samples = angle_samples;
  out.probe = build_probe("natural_boundary_scan", series, cert.m_seq, std::move(points), thresholds);

  bool everywhere = true;
  for (std::size_t i = 0; i < angle_samples; ++i) {
    bool grew = false;
    for (const auto& row : out.probe.values) {
      grew = grew || (row[i].resolved && row[i].log_magnitude() > thresholds.growth_log);
    }
    out.growth_at_angle.push_back(grew);
    everywhere = everywhere && grew;
  }
  out.probe.verdict = everywhere ? Verdict::divergence_evidence : Verdict::inconclusive;

  const BoundingFamily family = cert.bounds.value_or(BoundingFamily::zero());
  const auto& m = cert.m_seq;
  for (std::size_t v = 0; v + 1 < m.size(); ++v) {
    if (m[v] == 0 || m[v + 1] - m[v] < 2) continue;
    double measured = 0.0;
    double bound = 0.0;
    for (std::size_t j = m[v] + 1; j < m[v + 1]; ++j) {
      measured += std::abs(series[j]);
      bound += family(j);
    }
    bound /= static_cast<double>(m[v]) * static_cast<double>(m[v]);
    auto& g = out.gap_sums;
    if (!g.family_bounds.empty() && bound > g.family_bounds.back()) g.bounds_nonincreasing = false;
    if (measured > bound * (1.0 + 1e-12)) g.measured_within_bounds = false;
    g.anchors.push_back(m[v]);
    g.measured.push_back(measured);
    g.family_bounds.push_back(bound);
  }
  return out;
}

namespace {

constexpr double kUnitRoundoff = 0x1p-53;

struct PointEvaluation {
  Complex f_hat;
  std::vector<Complex> partial;  // s_n per requested section
  std::vector<Complex> g;        // g_n per requested section, without the (z - w1)(z - w2) factor
};

}  // namespace

SectorDiagnostic sector_diagnostic(const CoefficientSeries& series, const ExtensionEvaluator& extension, Complex z1,
                                   Complex z2, const ArcSpec& arc, std::span<const std::size_t> sections,
                                   std::size_t boundary_samples) {
  if (!extension) throw PreconditionError("sector diagnostic needs an extension evaluator");
  if (z1 == z2) throw PreconditionError("degenerate sector: z1 = z2");
  const double s = std::abs(z1);
  if (!(s > 1.0) || std::abs(std::abs(z2) - s) > 1e-9 * s) {
    throw PreconditionError("sector corners need |z1| = |z2| > 1");
  }
  if (boundary_samples < 2) throw PreconditionError("sector boundary needs at least 2 samples per side");
  if (sections.empty()) throw PreconditionError("sector diagnostic needs at least one section");

  SectorDiagnostic out;
  out.z1 = z1;
  out.z2 = z2;
  out.s = s;
  out.w1 = z1 / s;
  out.w2 = z2 / std::abs(z2);

  const auto arc_points = arc.points();
  out.a = std::numeric_limits<double>::infinity();
  for (const Complex& z : arc_points) out.a = std::min(out.a, std::abs((z - out.w1) * (z - out.w2)));
  if (!(out.a > 1e-12)) throw PreconditionError("a = 0: the arc touches w1 or w2");

  std::vector<Complex> boundary;
  const double theta1 = std::arg(z1);
  double span = std::arg(z2) - theta1;
  while (span <= 0.0) span += 2.0 * std::numbers::pi;
  for (std::size_t k = 0; k < boundary_samples; ++k) {
    const double t = static_cast<double>(k) / static_cast<double>(boundary_samples - 1);
    boundary.push_back(t * z1);
    boundary.push_back(t * z2);
    boundary.push_back(std::polar(s, theta1 + t * span));
  }

  const std::size_t N = series.size();
  std::vector<std::size_t> clamped;
  for (std::size_t n : sections) clamped.push_back(std::min(n, N - 1));
  std::vector<std::size_t> unique = clamped;
  std::sort(unique.begin(), unique.end());
  unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
  std::vector<std::size_t> slot;
  for (std::size_t n : clamped) {
    slot.push_back(static_cast<std::size_t>(std::lower_bound(unique.begin(), unique.end(), n) - unique.begin()));
  }

  double tail_scale = 0.0;
  for (std::size_t j = N / 2; j < N; ++j) tail_scale = std::max(tail_scale, std::abs(series[j]));

  auto evaluate_at = [&](std::span<const Complex> pts) {
    const auto matrix = evaluate_sections(series, unique, pts);
    std::vector<PointEvaluation> evals(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const Complex z = pts[i];
      const double r = std::abs(z);
      auto& e = evals[i];
      e.f_hat = extension(z);

      // Inside the unit disc (f_hat - s_n) / z^{n+1} cancels catastrophically
      // near the vertex; there the prefix tail sum_{j>n} a_j z^{j-n-1} is
      // used instead whenever its truncation estimate is the smaller error.
      std::vector<Complex> tail(N + 1);
      std::vector<double> head_abs(N);
      if (r < 1.0) {
        for (std::size_t j = N; j-- > 0;) tail[j] = (j + 1 < N ? series[j + 1] : Complex{}) + z * tail[j + 1];
        double acc = 0.0;
        double power = 1.0;
        for (std::size_t j = 0; j < N; ++j) {
          acc += std::abs(series[j]) * power;
          head_abs[j] = acc;
          power *= r;
        }
      }
      for (std::size_t q = 0; q < sections.size(); ++q) {
        const std::size_t n = sections[q];
        const std::size_t nc = clamped[q];
        const Complex partial = matrix.values[slot[q]][i].value();
        e.partial.push_back(partial);
        const double log_zn = static_cast<double>(n + 1) * std::log(r);
        bool use_tail = false;
        if (r < 1.0) {
          const double direct_err =
              r == 0.0 ? std::numeric_limits<double>::infinity()
                       : kUnitRoundoff * (std::abs(e.f_hat) + head_abs[nc]) * std::exp(-log_zn);
          const double tail_terms = n + 1 < N ? static_cast<double>(N - n - 1) : 0.0;
          const double tail_err = tail_scale * std::pow(r, tail_terms) / (1.0 - r);
          use_tail = tail_err < direct_err;
        }
        if (use_tail) {
          e.g.push_back(n + 1 < N ? tail[n] : Complex{});
        } else {
          e.g.push_back((e.f_hat - partial) * std::exp(-Complex{log_zn, static_cast<double>(n + 1) * std::arg(z)}));
        }
      }
    }
    return evals;
  };

  const auto on_arc = evaluate_at(arc_points);
  const auto on_boundary = evaluate_at(boundary);

  out.all_hold = true;
  for (std::size_t q = 0; q < sections.size(); ++q) {
    SectorRow row;
    row.n = sections[q];
    for (std::size_t i = 0; i < arc_points.size(); ++i) {
      const Complex z = arc_points[i];
      row.arc_error = std::max(row.arc_error, std::abs(on_arc[i].f_hat - on_arc[i].partial[q]));
      row.g_norm = std::max(row.g_norm, std::abs(on_arc[i].g[q] * (z - out.w1) * (z - out.w2)));
    }
    for (std::size_t i = 0; i < boundary.size(); ++i) {
      const Complex z = boundary[i];
      row.g_norm = std::max(row.g_norm, std::abs(on_boundary[i].g[q] * (z - out.w1) * (z - out.w2)));
    }
    row.scaled_g_norm = row.g_norm / out.a;
    row.holds = row.arc_error <= row.scaled_g_norm * (1.0 + 1e-12);
    out.all_hold = out.all_hold && row.holds;
    out.rows.push_back(row);
  }
  return out;
}

}  // namespace gapscan
