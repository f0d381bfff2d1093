#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "gapscan/errors.hpp"
#include "gapscan/gap_analysis.hpp"
#include "gapscan/generators.hpp"

using namespace gapscan;

namespace {

CoefficientSeries powers_of_two(std::size_t length) {
  std::vector<Complex> a(length);
  for (std::size_t m = 1; m < length; m *= 2) a[m] = 1.0;
  return CoefficientSeries(std::move(a));
}

CoefficientSeries inverse_powers(std::size_t length, double s) {
  std::vector<Complex> a(length);
  for (std::size_t n = 1; n < length; ++n) a[n] = 1.0 / std::pow(static_cast<double>(n), s);
  return CoefficientSeries(std::move(a));
}

std::vector<std::size_t> binary_anchors(std::size_t length) {
  std::vector<std::size_t> m;
  for (std::size_t v = 1; v < length; v *= 2) m.push_back(v);
  return m;
}

GapCertificate hadamard_cert(std::vector<std::size_t> m, double delta) {
  GapCertificate cert;
  cert.series_class = SeriesClass::hadamard;
  cert.m_seq = std::move(m);
  cert.delta = delta;
  return cert;
}

}  // namespace

TEST(BoundingFamily, PowerLaw) {
  const auto c = BoundingFamily::power_law(2.0, 2.0);
  EXPECT_EQ(c(0), std::numeric_limits<double>::infinity());
  EXPECT_DOUBLE_EQ(c(4), 0.125);
  EXPECT_DOUBLE_EQ(*c.summability_threshold(), 0.5);
  EXPECT_TRUE(c.positive_decreasing(100));
  EXPECT_THROW(BoundingFamily::power_law(0.0, 2.0), PreconditionError);
  EXPECT_THROW(BoundingFamily::power_law(1.0, -1.0), PreconditionError);
}

TEST(BoundingFamily, ExplicitAndZero) {
  const auto c = BoundingFamily::explicit_list({1.0, 0.5, 0.6});
  EXPECT_EQ(c(1), 0.5);
  EXPECT_THROW(c(3), IndexError);
  EXPECT_FALSE(c.summability_threshold().has_value());
  EXPECT_FALSE(c.positive_decreasing(3));
  EXPECT_TRUE(c.positive_decreasing(2));
  EXPECT_THROW(BoundingFamily::explicit_list({1.0, 0.0}), PreconditionError);
  EXPECT_EQ(BoundingFamily::zero()(7), 0.0);
  EXPECT_TRUE(BoundingFamily::zero().is_zero());
}

TEST(SeriesClass, NamesRoundTrip) {
  for (auto c : {SeriesClass::lacunary, SeriesClass::ostrowski, SeriesClass::hadamard, SeriesClass::quasi_lacunary,
                 SeriesClass::quasi_ostrowski, SeriesClass::quasi_hadamard}) {
    EXPECT_EQ(parse_series_class(to_string(c)), c);
  }
  EXPECT_FALSE(parse_series_class("gappy").has_value());
}

TEST(VerifyCertificate, HadamardPowersOfTwo) {
  const auto verdict = verify_certificate(powers_of_two(64), hadamard_cert(binary_anchors(64), 0.9));
  EXPECT_TRUE(verdict.accepted);
  EXPECT_TRUE(verdict.failed_conditions.empty());
}

TEST(VerifyCertificate, HadamardRejections) {
  const auto s = powers_of_two(64);
  auto too_wide = verify_certificate(s, hadamard_cert(binary_anchors(64), 1.0));
  EXPECT_FALSE(too_wide.accepted);
  EXPECT_TRUE(too_wide.failed("proportional_gap"));

  auto missing = verify_certificate(s, hadamard_cert({1, 2, 4, 16, 32}, 0.9));
  EXPECT_FALSE(missing.accepted);
  EXPECT_TRUE(missing.failed("gap_zero"));

  auto zero_anchor = verify_certificate(s, hadamard_cert({1, 2, 4, 8, 16, 33}, 0.9));
  EXPECT_TRUE(zero_anchor.failed("anchor_nonzero"));

  auto unordered = verify_certificate(s, hadamard_cert({1, 4, 2}, 0.9));
  EXPECT_TRUE(unordered.failed("increasing"));
}

TEST(VerifyCertificate, QuasiLacunaryLogSeries) {
  GapCertificate cert;
  cert.series_class = SeriesClass::quasi_lacunary;
  for (std::size_t v = 0; v * v < 400; ++v) cert.m_seq.push_back(v * v);
  cert.bounds = BoundingFamily::power_law(1.0, 1.0);
  cert.summability_exponent = 2.0;
  const auto verdict = verify_certificate(inverse_powers(400, 1.0), cert);
  EXPECT_TRUE(verdict.accepted);
  EXPECT_TRUE(verdict.prefix_caveat);
  ASSERT_TRUE(verdict.anchor_sup.has_value());
  EXPECT_DOUBLE_EQ(*verdict.anchor_sup, 1.0);

  cert.bounds = BoundingFamily::power_law(1.0, 0.4);
  EXPECT_TRUE(verify_certificate(inverse_powers(400, 1.0), cert).failed("summable"));
  cert.bounds = BoundingFamily::power_law(1.0, 1.0);
  cert.summability_exponent = 1.0;
  EXPECT_TRUE(verify_certificate(inverse_powers(400, 1.0), cert).failed("summability_exponent"));
}

TEST(VerifyCertificate, LacunaryNeedsGrowingGaps) {
  std::vector<Complex> a(64);
  for (std::size_t m = 0; m < 64; m += 4) a[m] = 1.0;
  GapCertificate cert;
  cert.series_class = SeriesClass::lacunary;
  for (std::size_t m = 0; m < 64; m += 4) cert.m_seq.push_back(m);
  const auto verdict = verify_certificate(CoefficientSeries(a), cert);
  EXPECT_FALSE(verdict.accepted);
  EXPECT_TRUE(verdict.failed("gap_growth"));
  EXPECT_TRUE(verdict.prefix_caveat);
}

TEST(VerifyCertificate, CounterexampleFailsDivergence) {
  GapCertificate cert;
  cert.series_class = SeriesClass::quasi_hadamard;
  cert.m_seq = binary_anchors(1024);
  cert.delta = 0.9;
  cert.bounds = BoundingFamily::power_law(1.0, 2.0);
  const auto verdict = verify_certificate(inverse_powers(1024, 2.0), cert);
  EXPECT_FALSE(verdict.accepted);
  EXPECT_TRUE(verdict.failed("divergence"));
  // sum 4^{-v} over the anchors stays near 4/3, below the floor.
  for (const auto& f : verdict.failed_conditions) {
    if (f.condition == "divergence") EXPECT_LT(f.measured, 4.0 / 3.0);
  }
}

TEST(VerifyCertificate, QuasiHadamardAcceptsScaledFill) {
  GeneratorSpec base;
  base.kind = GeneratorKind::hadamard_gap;
  base.length = 256;
  GeneratorSpec spec;
  spec.kind = GeneratorKind::perturbed;
  spec.base_spec = std::make_shared<const GeneratorSpec>(base);
  spec.amplitude = 1.0;
  const auto g = generate(spec);
  const auto verdict = verify_certificate(g.series, *g.truth.certificate);
  EXPECT_TRUE(verdict.accepted) << (verdict.failed_conditions.empty() ? "" : verdict.failed_conditions[0].condition);
  EXPECT_TRUE(verdict.prefix_caveat);

  auto weak = *g.truth.certificate;
  weak.bounds = BoundingFamily::power_law(1.0, 0.9);
  EXPECT_TRUE(verify_certificate(g.series, weak).failed("summable"));
}

TEST(VerifyCertificate, OstrowskiComposed) {
  GeneratorSpec spec;
  spec.kind = GeneratorKind::ostrowski_composed;
  spec.length = 512;
  const auto g = generate(spec);
  auto cert = *g.truth.certificate;
  EXPECT_TRUE(verify_certificate(g.series, cert).accepted);

  cert.delta = 1.0;
  EXPECT_TRUE(verify_certificate(g.series, cert).failed("proportional_gap"));
  cert.delta = 0.9;
  cert.n_seq.pop_back();
  EXPECT_TRUE(verify_certificate(g.series, cert).failed("interleave"));
}

TEST(VerifyCertificate, Preconditions) {
  const auto s = powers_of_two(64);
  EXPECT_THROW(verify_certificate(s, hadamard_cert({1, 2, 64}, 0.9)), IndexError);
  GapCertificate quasi = hadamard_cert(binary_anchors(64), 0.9);
  quasi.series_class = SeriesClass::quasi_hadamard;
  EXPECT_THROW(verify_certificate(s, quasi), PreconditionError);
}

TEST(DetectGaps, PowersOfTwo) {
  const auto s = powers_of_two(64);
  // Under c_j = 1/j^2 the tie |a_1| = c_1 counts as small.
  const auto quasi = detect_gaps(s, BoundingFamily::power_law(1.0, 2.0));
  EXPECT_EQ(quasi.large_indices, (std::vector<std::size_t>{2, 4, 8, 16, 32}));
  const auto classical = detect_gaps(s, BoundingFamily::zero());
  EXPECT_EQ(classical.large_indices, (std::vector<std::size_t>{1, 2, 4, 8, 16, 32}));
  EXPECT_EQ(classical.m_seq, (std::vector<std::size_t>{2, 4, 8, 16}));
  EXPECT_EQ(classical.n_seq, (std::vector<std::size_t>{4, 8, 16, 32}));
  ASSERT_EQ(classical.gaps.size(), 4u);
  EXPECT_EQ(classical.gaps[0].first, 3u);
  EXPECT_EQ(classical.gaps[0].last, 3u);
}

TEST(DetectGaps, NoGapsAndTies) {
  const auto ones = detect_gaps(CoefficientSeries(std::vector<Complex>(64, 1.0)), BoundingFamily::power_law(1.0, 2.0));
  EXPECT_TRUE(ones.gaps.empty());
  const auto log_series = detect_gaps(inverse_powers(100, 1.0), BoundingFamily::power_law(1.0, 1.0));
  EXPECT_TRUE(log_series.large_indices.empty());
  EXPECT_TRUE(log_series.m_seq.empty());
  EXPECT_THROW(detect_gaps(powers_of_two(19), BoundingFamily::zero()), PreconditionError);
}

TEST(DetectGaps, RoundTripOnCleanGenerators) {
  const auto s = powers_of_two(256);
  const auto d = detect_gaps(s, BoundingFamily::zero());
  EXPECT_TRUE(verify_certificate(s, hadamard_cert(d.large_indices, 0.9)).accepted);

  GeneratorSpec spec;
  spec.kind = GeneratorKind::ostrowski_composed;
  spec.length = 1024;
  const auto g = generate(spec);
  const auto found = detect_gaps(g.series, BoundingFamily::zero());
  GapCertificate cert;
  cert.series_class = SeriesClass::ostrowski;
  cert.m_seq = found.m_seq;
  cert.n_seq = found.n_seq;
  cert.delta = 0.9;
  EXPECT_EQ(found.m_seq, g.truth.certificate->m_seq);
  EXPECT_EQ(found.n_seq, g.truth.certificate->n_seq);
  EXPECT_TRUE(verify_certificate(g.series, cert).accepted);
}

TEST(ClassHierarchy, HadamardReadsAsOstrowskiAndLacunary) {
  const auto s = powers_of_two(128);
  const auto cert = hadamard_cert(binary_anchors(128), 0.9);
  const auto ostrowski = hadamard_as_ostrowski(cert);
  EXPECT_EQ(ostrowski.series_class, SeriesClass::ostrowski);
  EXPECT_EQ(ostrowski.n_seq, (std::vector<std::size_t>{2, 4, 8, 16, 32, 64}));
  EXPECT_TRUE(verify_certificate(s, ostrowski).accepted);
  const auto lacunary = hadamard_as_lacunary(cert);
  EXPECT_EQ(lacunary.series_class, SeriesClass::lacunary);
  EXPECT_TRUE(verify_certificate(s, lacunary).accepted);
  EXPECT_THROW(hadamard_as_lacunary(ostrowski), PreconditionError);
}

TEST(Hierarchy, QuasiFillOnTheBoundIsNotQuasiOstrowski) {
  // Quasi-Hadamard gaps allow |a_j| = c_j / m^2; the quasi-Ostrowski bound is strict.
  GeneratorSpec base;
  base.kind = GeneratorKind::hadamard_gap;
  base.length = 1024;
  GeneratorSpec spec;
  spec.kind = GeneratorKind::perturbed;
  spec.base_spec = std::make_shared<const GeneratorSpec>(base);
  spec.amplitude = 1.0;
  const auto g = generate(spec);
  const auto& cert = *g.truth.certificate;
  EXPECT_TRUE(verify_certificate(g.series, cert).accepted);
  const auto as_ostrowski = verify_certificate(g.series, hadamard_as_ostrowski(cert));
  EXPECT_FALSE(as_ostrowski.accepted);
  EXPECT_TRUE(as_ostrowski.failed("gap_bound_strict"));
  EXPECT_TRUE(verify_certificate(g.series, hadamard_as_lacunary(cert)).accepted);

  spec.amplitude = 0.999;
  const auto inside = generate(spec);
  EXPECT_TRUE(verify_certificate(inside.series, hadamard_as_ostrowski(*inside.truth.certificate)).accepted);
}
