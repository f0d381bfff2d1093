#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gapscan/boundary_probe.hpp"
#include "gapscan/composition.hpp"
#include "gapscan/gap_analysis.hpp"
#include "gapscan/rational.hpp"
#include "gapscan/series.hpp"

namespace gapscan {

enum class GeneratorKind { rational, hadamard_gap, power_log, ostrowski_composed, perturbed };

std::string_view to_string(GeneratorKind kind);
std::optional<GeneratorKind> parse_generator_kind(std::string_view name);

/// Functions with a known closed form on the cut plane.
enum class ClosedForm { geometric, neg_log, dilog };

std::string_view to_string(ClosedForm form);
std::optional<ClosedForm> parse_closed_form(std::string_view name);
ExtensionEvaluator evaluator(ClosedForm form);

struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::hadamard_gap;
  std::size_t length = 256;  // ignored by perturbed, which keeps the base length

  // rational: ascending coefficients; an empty numerator means 1.
  std::vector<Complex> denominator;
  std::vector<Complex> numerator;

  // hadamard_gap: ones at base^v; delta = base - 1 - slack.
  std::size_t base = 2;
  double slack = 0.1;

  // power_log: a_n = 1 / n^power, power in {1, 2}.
  unsigned power = 1;

  // ostrowski_composed: sum_k q(w)^{growth^k} with q(w) = (w + w^2) / 2.
  std::size_t growth = 4;

  // perturbed: gap coefficients of the base replaced by
  // amplitude * c_j / m^2 * e^{i phi}, phi uniform from the seed.
  std::shared_ptr<const GeneratorSpec> base_spec;
  BoundingFamily family = BoundingFamily::power_law(1.0, 2.0);
  double amplitude = 0.5;
  std::uint64_t seed = 0;

  /// Throws PreconditionError on invalid parameters.
  void validate() const;
};

struct GroundTruth {
  double radius = std::numeric_limits<double>::infinity();
  std::vector<Pole> poles;  // rational only
  std::optional<GapCertificate> certificate;
  std::optional<ClosedForm> closed_form;
  std::optional<CompositionConfig> composition;  // the q of ostrowski_composed
};

struct GeneratedSeries {
  CoefficientSeries series;
  GroundTruth truth;
};

/// Deterministic for equal specs (including the seed).
GeneratedSeries generate(const GeneratorSpec& spec);

}  // namespace gapscan
