#include "gapscan/generators.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "gapscan/binomial.hpp"
#include "gapscan/errors.hpp"
#include "gapscan/special.hpp"

namespace gapscan {

namespace {

constexpr std::pair<GeneratorKind, std::string_view> kKinds[] = {
    {GeneratorKind::rational, "rational"},
    {GeneratorKind::hadamard_gap, "hadamard_gap"},
    {GeneratorKind::power_log, "power_log"},
    {GeneratorKind::ostrowski_composed, "ostrowski_composed"},
    {GeneratorKind::perturbed, "perturbed"},
};

constexpr std::pair<ClosedForm, std::string_view> kForms[] = {
    {ClosedForm::geometric, "geometric"},
    {ClosedForm::neg_log, "neg_log"},
    {ClosedForm::dilog, "dilog"},
};

std::string label_for(const GeneratorSpec& spec) {
  switch (spec.kind) {
    case GeneratorKind::rational:
      return "rational";
    case GeneratorKind::hadamard_gap:
      return "hadamard_gap b=" + std::to_string(spec.base);
    case GeneratorKind::power_log:
      return "power_log s=" + std::to_string(spec.power);
    case GeneratorKind::ostrowski_composed:
      return "ostrowski_composed g=" + std::to_string(spec.growth);
    case GeneratorKind::perturbed:
      return "perturbed " + label_for(*spec.base_spec);
  }
  return {};
}

GeneratedSeries make_rational(const GeneratorSpec& spec) {
  RationalFunction rf;
  rf.denominator = spec.denominator;
  rf.numerator = spec.numerator.empty() ? std::vector<Complex>{1.0} : spec.numerator;
  GroundTruth truth;
  if (rf.denominator_degree() > 0) {
    truth.poles = cluster_roots(polynomial_roots(rf.denominator));
    for (const Pole& p : truth.poles) truth.radius = std::min(truth.radius, std::abs(p.location));
  }
  rf.declared_poles = truth.poles;
  const CoefficientSeries expanded = expand(rf, spec.length);
  const auto a = expanded.coefficients();
  return {CoefficientSeries({a.begin(), a.end()}, label_for(spec)), std::move(truth)};
}

GeneratedSeries make_hadamard_gap(const GeneratorSpec& spec) {
  std::vector<Complex> a(spec.length);
  GapCertificate cert;
  cert.series_class = SeriesClass::hadamard;
  cert.delta = static_cast<double>(spec.base) - 1.0 - spec.slack;
  for (std::size_t m = 1; m < spec.length; m *= spec.base) {
    a[m] = 1.0;
    cert.m_seq.push_back(m);
  }
  GroundTruth truth;
  truth.radius = 1.0;
  truth.certificate = std::move(cert);
  return {CoefficientSeries(std::move(a), label_for(spec)), std::move(truth)};
}

GeneratedSeries make_power_log(const GeneratorSpec& spec) {
  const BoundingFamily family = BoundingFamily::power_law(1.0, static_cast<double>(spec.power));
  std::vector<Complex> a(spec.length);
  for (std::size_t n = 1; n < spec.length; ++n) a[n] = family(n);
  GapCertificate cert;
  cert.series_class = SeriesClass::quasi_lacunary;
  cert.bounds = family;
  cert.summability_exponent = 2.0;
  for (std::size_t v = 0; v * v < spec.length; ++v) cert.m_seq.push_back(v * v);
  GroundTruth truth;
  truth.radius = 1.0;
  truth.certificate = std::move(cert);
  truth.closed_form = spec.power == 1 ? ClosedForm::neg_log : ClosedForm::dilog;
  return {CoefficientSeries(std::move(a), label_for(spec)), std::move(truth)};
}

GeneratedSeries make_ostrowski_composed(const GeneratorSpec& spec) {
  const std::size_t N = spec.length;
  const std::size_t g = spec.growth;
  std::vector<Complex> b(N);
  // q(w)^r = w^r ((1 + w) / 2)^r contributes C(r, l) / 2^r at w^{r + l}.
  for (std::size_t r = 1; r < N; r *= g) {
    for (std::size_t l = 0; l <= r && r + l < N; ++l) {
      b[r + l] += halved_binomial(static_cast<unsigned>(r), static_cast<unsigned>(l));
    }
  }
  GapCertificate cert;
  cert.series_class = SeriesClass::ostrowski;
  cert.delta = (static_cast<double>(g) - 2.0) / 2.0 - 0.1;
  for (std::size_t r = 1; r * g < N; r *= g) {
    cert.m_seq.push_back(2 * r);
    cert.n_seq.push_back(g * r);
  }
  GroundTruth truth;
  truth.radius = 1.0;
  truth.certificate = std::move(cert);
  truth.composition = CompositionConfig{};
  return {CoefficientSeries(std::move(b), label_for(spec)), std::move(truth)};
}

SeriesClass quasi_of(SeriesClass c) {
  switch (c) {
    case SeriesClass::lacunary:
      return SeriesClass::quasi_lacunary;
    case SeriesClass::ostrowski:
      return SeriesClass::quasi_ostrowski;
    case SeriesClass::hadamard:
      return SeriesClass::quasi_hadamard;
    default:
      return c;
  }
}

GeneratedSeries make_perturbed(const GeneratorSpec& spec) {
  GeneratedSeries base = generate(*spec.base_spec);
  if (!base.truth.certificate) throw PreconditionError("perturbed base has no gap certificate");
  GapCertificate cert = *base.truth.certificate;
  if (is_quasi(cert.series_class)) throw PreconditionError("perturbed base is already a quasi series");

  const std::size_t N = base.series.size();
  std::vector<Complex> a(base.series.coefficients().begin(), base.series.coefficients().end());
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);

  const bool divide = !is_lacunary_type(cert.series_class);
  auto fill = [&](std::size_t m, std::size_t hi) {
    if (divide && m == 0) return;
    const double mm = divide ? static_cast<double>(m) * static_cast<double>(m) : 1.0;
    for (std::size_t j = m + 1; j < std::min(hi, N); ++j) {
      // Same rounding as the verifier's bound c_j / m^2.
      const double target = spec.amplitude * (spec.family(j) / mm);
      Complex z = std::polar(target, phase(rng));
      // Keep |a_j| <= target despite rounding in the polar form.
      while (std::abs(z) > target) z = {std::nextafter(z.real(), 0.0), std::nextafter(z.imag(), 0.0)};
      a[j] = z;
    }
  };
  const auto& m = cert.m_seq;
  if (is_ostrowski_type(cert.series_class)) {
    for (std::size_t k = 0; k < m.size(); ++k) fill(m[k], cert.n_seq[k]);
  } else {
    for (std::size_t v = 0; v < m.size(); ++v) fill(m[v], v + 1 < m.size() ? m[v + 1] : N);
  }

  cert.series_class = quasi_of(cert.series_class);
  cert.bounds = spec.family;
  base.truth.certificate = std::move(cert);
  return {CoefficientSeries(std::move(a), label_for(spec)), std::move(base.truth)};
}

}  // namespace

std::string_view to_string(GeneratorKind kind) {
  for (const auto& [k, name] : kKinds)
    if (k == kind) return name;
  return "unknown";
}

std::optional<GeneratorKind> parse_generator_kind(std::string_view name) {
  for (const auto& [k, n] : kKinds)
    if (n == name) return k;
  return std::nullopt;
}

std::string_view to_string(ClosedForm form) {
  for (const auto& [f, name] : kForms)
    if (f == form) return name;
  return "unknown";
}

std::optional<ClosedForm> parse_closed_form(std::string_view name) {
  for (const auto& [f, n] : kForms)
    if (n == name) return f;
  return std::nullopt;
}

ExtensionEvaluator evaluator(ClosedForm form) {
  switch (form) {
    case ClosedForm::geometric:
      return geometric;
    case ClosedForm::neg_log:
      return neg_log1m;
    case ClosedForm::dilog:
      return dilog;
  }
  return {};
}

void GeneratorSpec::validate() const {
  if (kind != GeneratorKind::perturbed && length == 0) throw PreconditionError("length must be positive");
  switch (kind) {
    case GeneratorKind::rational:
      if (denominator.empty() || denominator.front() == Complex{}) {
        throw PreconditionError("rational spec needs a denominator with nonzero constant term");
      }
      break;
    case GeneratorKind::hadamard_gap:
      if (base <= 1) throw PreconditionError("gap base must exceed 1");
      if (!(slack >= 0.0) || !(static_cast<double>(base) - 1.0 - slack > 0.0)) {
        throw PreconditionError("slack must leave delta = base - 1 - slack positive");
      }
      break;
    case GeneratorKind::power_log:
      if (power != 1 && power != 2) throw PreconditionError("power_log supports power 1 or 2");
      break;
    case GeneratorKind::ostrowski_composed:
      if (growth < 3) throw PreconditionError("composition growth must be at least 3");
      break;
    case GeneratorKind::perturbed:
      if (!base_spec) throw PreconditionError("perturbed spec needs a base spec");
      if (base_spec->kind == GeneratorKind::perturbed) throw PreconditionError("perturbed base cannot be perturbed");
      if (!(amplitude >= 0.0 && amplitude <= 1.0)) throw PreconditionError("amplitude must lie in [0, 1]");
      if (family.kind == BoundingKind::zero) throw PreconditionError("perturbation needs a nonzero bounding family");
      if (family.kind == BoundingKind::power_law && !(family.scale > 0.0 && family.exponent > 0.0)) {
        throw PreconditionError("power-law family needs positive scale and exponent");
      }
      base_spec->validate();
      break;
  }
}

GeneratedSeries generate(const GeneratorSpec& spec) {
  spec.validate();
  switch (spec.kind) {
    case GeneratorKind::rational:
      return make_rational(spec);
    case GeneratorKind::hadamard_gap:
      return make_hadamard_gap(spec);
    case GeneratorKind::power_log:
      return make_power_log(spec);
    case GeneratorKind::ostrowski_composed:
      return make_ostrowski_composed(spec);
    case GeneratorKind::perturbed:
      return make_perturbed(spec);
  }
  throw PreconditionError("unknown generator kind");
}

}  // namespace gapscan
