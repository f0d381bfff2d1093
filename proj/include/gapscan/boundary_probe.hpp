#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gapscan/gap_analysis.hpp"
#include "gapscan/sections.hpp"
#include "gapscan/series.hpp"

namespace gapscan {

enum class Spacing { uniform, chebyshev };

std::string_view to_string(Spacing spacing);

/// Closed arc {radius * e^{i theta} : angle_start <= theta <= angle_end}.
struct ArcSpec {
  double radius = 1.0;
  double angle_start = 0.0;
  double angle_end = 0.0;
  std::size_t sample_count = 64;
  Spacing spacing = Spacing::chebyshev;

  void validate() const;
  /// Sample points including both endpoints. Chebyshev spacing uses the
  /// Chebyshev-Lobatto nodes mapped onto the angle interval.
  std::vector<Complex> points() const;
};

enum class Verdict { converging, overconverging, divergence_evidence, inconclusive };

std::string_view to_string(Verdict verdict);

/// Thresholds behind every verdict; echoed into reports.
struct ProbeThresholds {
  /// Last Cauchy difference must fall below this times the largest section
  /// magnitude.
  double convergence = 1e-4;
  /// ln|s| above this at a sample counts as growth.
  double growth_log = 20.0;
  double conditioning = kDefaultConditioningTolerance;
};

/// Evidence gathered from partial sums; never a proof.
struct ProbeReport {
  std::string probe;
  std::vector<std::size_t> section_indices;
  std::vector<Complex> points;
  /// values[s][i] = s_{section_indices[s]}(points[i]).
  std::vector<std::vector<SectionValue>> values;
  /// cauchy_table[v] = sup_i |s_{v+1}(z_i) - s_v(z_i)|; +inf past the double range.
  std::vector<double> cauchy_table;
  /// false when either section of the pair is unresolved at some sample.
  std::vector<bool> cauchy_resolved;
  double max_section_magnitude = 0.0;  // over resolved values
  double max_log_magnitude = kZeroLogMagnitude;
  Verdict verdict = Verdict::inconclusive;
  ProbeThresholds thresholds;
  std::vector<std::string> notes;
};

/// Partial sums s_{m_v} of a lacunary or quasi-lacunary series on an arc.
/// converging iff the resolved Cauchy differences are eventually decreasing
/// and the last one is below thresholds.convergence * max|s|;
/// divergence_evidence when some section exceeds the growth threshold.
ProbeReport arc_convergence_probe(const CoefficientSeries& series, const GapCertificate& cert, const ArcSpec& arc,
                                  const ProbeThresholds& thresholds = {});

/// Exterior sample region for the overconvergence probe.
struct ExteriorRegion {
  double radius = 1.0;  // r, the radius of convergence
  double eta = 0.2;     // samples satisfy r < |z| <= (1 + eta) r
  std::size_t radial_samples = 4;
  std::size_t angular_samples = 32;
  /// When non-empty these replace the annulus grid (still filtered).
  std::vector<Complex> points;
  std::optional<Complex> excluded_point;
  double exclusion_radius = 0.1;

  std::vector<Complex> samples() const;
};

/// Sections s_{m_k} of an Ostrowski or quasi-Ostrowski series outside the
/// disc of convergence. overconverging iff the resolved Cauchy differences
/// decay as in the arc probe. Throws PreconditionError when no sample
/// survives the region filter.
ProbeReport overconvergence_probe(const CoefficientSeries& series, const GapCertificate& cert,
                                  const ExteriorRegion& region, const ProbeThresholds& thresholds = {});

struct ScanOptions {
  double radius = 1.0;
  bool require_accepted_certificate = true;
  VerifyOptions verify;
};

/// Gap-sum cross-check: for each observed gap (m_k, m_{k+1}) the measured
/// sum of |a_j| against (1/m_k^2) sum c_j from the bounding family.
struct GapSumCheck {
  std::vector<std::size_t> anchors;
  std::vector<double> measured;
  std::vector<double> family_bounds;
  bool measured_within_bounds = true;
  bool bounds_nonincreasing = true;
};

struct BoundaryScanReport {
  ProbeReport probe;
  double radius_factor = 1.0;
  std::size_t angle_samples = 0;
  /// Per angle: some resolved section exceeded the growth threshold.
  std::vector<bool> growth_at_angle;
  GapSumCheck gap_sums;
};

/// s_{m_k} on |z| = radius_factor * r over equally spaced directions.
/// divergence_evidence iff growth is seen in every direction; otherwise
/// inconclusive.
BoundaryScanReport natural_boundary_scan(const CoefficientSeries& series, const GapCertificate& cert,
                                         double radius_factor, std::size_t angle_samples,
                                         const ScanOptions& options = {},
                                         const ProbeThresholds& thresholds = {});

using ExtensionEvaluator = std::function<Complex(Complex)>;

struct SectorRow {
  std::size_t n = 0;
  double arc_error = 0.0;      // max over L of |f_hat - s_n|
  double g_norm = 0.0;         // max over S of |g_n|
  double scaled_g_norm = 0.0;  // g_norm / a
  bool holds = false;          // arc_error <= scaled_g_norm (relative slack 1e-12)
};

struct SectorDiagnostic {
  Complex z1;
  Complex z2;
  Complex w1;
  Complex w2;
  double s = 0.0;
  double a = 0.0;  // min over L of |(z - w1)(z - w2)|
  std::vector<SectorRow> rows;
  bool all_hold = false;
};

/// The sector S has its vertex at 0 and spans counterclockwise from arg z1
/// to arg z2 out to radius s = |z1| = |z2| > 1. For each n, compares
/// max_L |f_hat - s_n| with a^{-1} max_S |g_n|, where
/// g_n(z) = (f_hat(z) - s_n(z)) / z^{n+1} (z - w1)(z - w2). max_S is taken
/// over the boundary of S together with the arc samples. Sections beyond the
/// prefix use the whole prefix.
SectorDiagnostic sector_diagnostic(const CoefficientSeries& series, const ExtensionEvaluator& extension, Complex z1,
                                   Complex z2, const ArcSpec& arc, std::span<const std::size_t> sections,
                                   std::size_t boundary_samples = 64);

}  // namespace gapscan
