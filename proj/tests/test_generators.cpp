#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "gapscan/binomial.hpp"
#include "gapscan/errors.hpp"
#include "gapscan/generators.hpp"
#include "gapscan/rational.hpp"
#include "gapscan/special.hpp"

using namespace gapscan;

namespace {

GeneratorSpec spec_of(GeneratorKind kind, std::size_t length) {
  GeneratorSpec spec;
  spec.kind = kind;
  spec.length = length;
  return spec;
}

GeneratorSpec perturbed_of(const GeneratorSpec& base, double amplitude, std::uint64_t seed) {
  GeneratorSpec spec;
  spec.kind = GeneratorKind::perturbed;
  spec.base_spec = std::make_shared<const GeneratorSpec>(base);
  spec.amplitude = amplitude;
  spec.seed = seed;
  return spec;
}

}  // namespace

TEST(Generate, HadamardGapOnesAtPowers) {
  const auto g = generate(spec_of(GeneratorKind::hadamard_gap, 64));
  for (std::size_t n = 0; n < 64; ++n) {
    const bool power = n > 0 && (n & (n - 1)) == 0;
    EXPECT_EQ(g.series[n], Complex(power ? 1.0 : 0.0)) << n;
  }
  EXPECT_EQ(g.truth.certificate->m_seq, (std::vector<std::size_t>{1, 2, 4, 8, 16, 32}));
  EXPECT_DOUBLE_EQ(g.truth.certificate->delta, 0.9);
  EXPECT_EQ(g.truth.radius, 1.0);
  EXPECT_TRUE(verify_certificate(g.series, *g.truth.certificate).accepted);

  auto base3 = spec_of(GeneratorKind::hadamard_gap, 100);
  base3.base = 3;
  EXPECT_EQ(generate(base3).truth.certificate->m_seq, (std::vector<std::size_t>{1, 3, 9, 27, 81}));
}

TEST(Generate, OstrowskiComposedBlockSupport) {
  const auto g = generate(spec_of(GeneratorKind::ostrowski_composed, 512));
  for (std::size_t n = 0; n < 512; ++n) {
    bool in_block = false;
    for (std::size_t r = 1; r < 512; r *= 4) in_block = in_block || (n >= r && n <= 2 * r);
    EXPECT_EQ(g.series[n] != Complex{}, in_block) << n;
  }
  // The block of q^16 is C(16, l) / 2^16 at w^{16 + l}.
  EXPECT_EQ(g.series[20].real(), binomial(16, 4) / 65536.0);
  const auto& cert = *g.truth.certificate;
  EXPECT_EQ(cert.m_seq, (std::vector<std::size_t>{2, 8, 32, 128}));
  EXPECT_EQ(cert.n_seq, (std::vector<std::size_t>{4, 16, 64, 256}));
  for (std::size_t k = 0; k < cert.m_seq.size(); ++k) {
    EXPECT_GT(static_cast<double>(cert.n_seq[k] - cert.m_seq[k]), 0.9 * static_cast<double>(cert.m_seq[k]));
  }
  EXPECT_TRUE(verify_certificate(g.series, cert).accepted);
  ASSERT_TRUE(g.truth.composition.has_value());
  EXPECT_EQ(g.truth.composition->degree, 1u);
}

TEST(Generate, OstrowskiSeriesMatchesClosedForm) {
  const auto g = generate(spec_of(GeneratorKind::ostrowski_composed, 512));
  const Complex w{0.3, -0.4};
  Complex direct = 0.0;
  const Complex q = (w + w * w) / 2.0;
  for (int r = 1; r < 512; r *= 4) direct += std::pow(q, r);
  Complex series = 0.0;
  for (std::size_t n = 512; n-- > 0;) series = series * w + g.series[n];
  EXPECT_LT(std::abs(series - direct), 1e-14);
}

TEST(Generate, PowerLogAndClosedForms) {
  const auto g1 = generate(spec_of(GeneratorKind::power_log, 400));
  EXPECT_EQ(g1.series[0], Complex(0.0));
  EXPECT_DOUBLE_EQ(g1.series[7].real(), 1.0 / 7.0);
  EXPECT_EQ(g1.truth.closed_form, ClosedForm::neg_log);
  EXPECT_TRUE(verify_certificate(g1.series, *g1.truth.certificate).accepted);

  auto spec2 = spec_of(GeneratorKind::power_log, 400);
  spec2.power = 2;
  const auto g2 = generate(spec2);
  EXPECT_EQ(g2.truth.closed_form, ClosedForm::dilog);
  EXPECT_DOUBLE_EQ(g2.series[7].real(), 1.0 / 49.0);
}

TEST(Generate, RationalCarriesPoles) {
  auto spec = spec_of(GeneratorKind::rational, 600);
  spec.denominator = {1.0, 0.0, 0.0, -1.0};
  const auto g = generate(spec);
  EXPECT_EQ(g.series[3], Complex(1.0));
  EXPECT_EQ(g.series[4], Complex(0.0));
  EXPECT_EQ(g.truth.poles.size(), 3u);
  EXPECT_NEAR(g.truth.radius, 1.0, 1e-12);
  RationalFunction rf;
  rf.numerator = {1.0};
  rf.denominator = spec.denominator;
  EXPECT_EQ(poles_on_circle(rf).count, g.truth.poles.size());
}

TEST(Generate, PerturbedHadamard) {
  const auto base = spec_of(GeneratorKind::hadamard_gap, 64);
  const auto clean = generate(base);
  const auto g = generate(perturbed_of(base, 0.5, 1));
  const auto& cert = *g.truth.certificate;
  EXPECT_EQ(cert.series_class, SeriesClass::quasi_hadamard);
  EXPECT_TRUE(verify_certificate(g.series, cert).accepted);
  const auto& m = cert.m_seq;
  for (std::size_t v = 0; v < m.size(); ++v) {
    const std::size_t hi = v + 1 < m.size() ? m[v + 1] : 64;
    const double mv = static_cast<double>(m[v]);
    for (std::size_t j = m[v] + 1; j < hi; ++j) {
      const double expected = 0.5 / (mv * mv * static_cast<double>(j) * static_cast<double>(j));
      EXPECT_NEAR(std::abs(g.series[j]), expected, 1e-15 * expected) << j;
    }
    EXPECT_EQ(g.series[m[v]], clean.series[m[v]]);
  }
  EXPECT_EQ(g.series[0], Complex(0.0));
}

TEST(Generate, PerturbationOnlyTouchesGaps) {
  const auto base = spec_of(GeneratorKind::ostrowski_composed, 1024);
  const auto clean = generate(base);
  const auto g = generate(perturbed_of(base, 0.8, 9));
  const auto& cert = *g.truth.certificate;
  EXPECT_EQ(cert.series_class, SeriesClass::quasi_ostrowski);
  EXPECT_TRUE(verify_certificate(g.series, cert).accepted);
  for (std::size_t j = 0; j < 1024; ++j) {
    bool in_gap = false;
    double bound = 0.0;
    for (std::size_t k = 0; k < cert.m_seq.size(); ++k) {
      if (j > cert.m_seq[k] && j < cert.n_seq[k]) {
        in_gap = true;
        const double m = static_cast<double>(cert.m_seq[k]);
        bound = 0.8 * (*cert.bounds)(j) / (m * m);
      }
    }
    const double diff = std::abs(g.series[j] - clean.series[j]);
    if (in_gap) {
      EXPECT_LE(diff, bound * (1.0 + 1e-15)) << j;
    } else {
      EXPECT_EQ(diff, 0.0) << j;
    }
  }
}

TEST(Generate, DeterministicForEqualSeeds) {
  const auto base = spec_of(GeneratorKind::hadamard_gap, 256);
  const auto a = generate(perturbed_of(base, 0.5, 42));
  const auto b = generate(perturbed_of(base, 0.5, 42));
  const auto c = generate(perturbed_of(base, 0.5, 43));
  ASSERT_EQ(a.series.size(), b.series.size());
  bool differs = false;
  for (std::size_t n = 0; n < a.series.size(); ++n) {
    EXPECT_EQ(a.series[n], b.series[n]);
    differs = differs || a.series[n] != c.series[n];
  }
  EXPECT_TRUE(differs);
}

TEST(Generate, InvalidSpecs) {
  auto bad_base = spec_of(GeneratorKind::hadamard_gap, 64);
  bad_base.base = 1;
  EXPECT_THROW(generate(bad_base), PreconditionError);
  EXPECT_THROW(generate(perturbed_of(spec_of(GeneratorKind::hadamard_gap, 64), 1.5, 0)), PreconditionError);
  EXPECT_THROW(generate(perturbed_of(spec_of(GeneratorKind::power_log, 64), 0.5, 0)), PreconditionError);
  auto no_den = spec_of(GeneratorKind::rational, 10);
  EXPECT_THROW(generate(no_den), PreconditionError);
  auto slow = spec_of(GeneratorKind::ostrowski_composed, 64);
  slow.growth = 2;
  EXPECT_THROW(generate(slow), PreconditionError);
  GeneratorSpec orphan;
  orphan.kind = GeneratorKind::perturbed;
  EXPECT_THROW(generate(orphan), PreconditionError);
}

TEST(ClosedForms, DilogValues) {
  constexpr double kPi2 = std::numbers::pi * std::numbers::pi;
  EXPECT_NEAR(dilog(1.0).real(), kPi2 / 6.0, 1e-15);
  EXPECT_NEAR(dilog(-1.0).real(), -kPi2 / 12.0, 1e-14);
  const double l = std::log(2.0);
  EXPECT_NEAR(dilog(0.5).real(), kPi2 / 12.0 - l * l / 2.0, 1e-14);
  // Against the defining series inside the disc.
  for (Complex z : {Complex{0.3, 0.4}, Complex{-0.6, 0.2}, Complex{0.7, -0.6}, Complex{0.0, 0.9}}) {
    Complex sum = 0.0;
    Complex power = 1.0;
    for (int n = 1; n < 4000; ++n) {
      power *= z;
      sum += power / static_cast<double>(n * n);
    }
    EXPECT_LT(std::abs(dilog(z) - sum), 1e-13) << z;
  }
  // Imaginary part of Li2(e^{i t}) is the Clausen function; the real part is
  // pi^2/6 - t(2 pi - t)/4.
  for (double t : {0.5, 1.7, 3.0, 5.0}) {
    EXPECT_NEAR(dilog(std::polar(1.0, t)).real(), kPi2 / 6.0 - t * (2 * std::numbers::pi - t) / 4.0, 1e-13);
  }
  // Outside the disc: Li2(z) = -int_0^1 log(1 - s z) / s ds along the ray,
  // which never meets the cut for these z. Composite Simpson rule.
  for (Complex z : {Complex{1.5, 2.0}, Complex{-3.0, -0.5}}) {
    const int steps = 20000;
    const double h = 1.0 / steps;
    auto integrand = [&](double s) { return s == 0.0 ? z : -std::log(1.0 - s * z) / s; };
    Complex sum = integrand(0.0) + integrand(1.0);
    for (int i = 1; i < steps; ++i) sum += (i % 2 ? 4.0 : 2.0) * integrand(i * h);
    EXPECT_LT(std::abs(dilog(z) - sum * h / 3.0), 1e-12) << z;
  }
  EXPECT_EQ(neg_log1m(0.0), Complex(0.0));
  EXPECT_EQ(geometric(0.5), Complex(2.0));
}

TEST(Names, RoundTrip) {
  for (auto k : {GeneratorKind::rational, GeneratorKind::hadamard_gap, GeneratorKind::power_log,
                 GeneratorKind::ostrowski_composed, GeneratorKind::perturbed}) {
    EXPECT_EQ(parse_generator_kind(to_string(k)), k);
  }
  for (auto f : {ClosedForm::geometric, ClosedForm::neg_log, ClosedForm::dilog}) {
    EXPECT_EQ(parse_closed_form(to_string(f)), f);
  }
  EXPECT_FALSE(parse_generator_kind("fractal").has_value());
}
