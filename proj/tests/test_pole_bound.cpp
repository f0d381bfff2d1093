#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "gapscan/errors.hpp"
#include "gapscan/pole_bound.hpp"
#include "gapscan/rational.hpp"

using namespace gapscan;

namespace {

CoefficientSeries cyclotomic(std::size_t k, std::size_t length) {
  std::vector<Complex> den(k + 1);
  den[0] = 1.0;
  den[k] = -1.0;
  RationalFunction rf;
  rf.numerator = {1.0};
  rf.denominator = den;
  return expand(rf, length);
}

// v_n recounted in the linear domain.
std::vector<std::size_t> naive_counts(const CoefficientSeries& s, double base) {
  std::vector<std::size_t> out;
  std::size_t v = 0;
  for (std::size_t n = 1; n <= s.size(); ++n) {
    if (std::abs(s[n - 1]) > std::pow(base, static_cast<double>(n - 1))) ++v;
    out.push_back(v);
  }
  return out;
}

}  // namespace

TEST(CountExceeding, CyclotomicBound) {
  PoleBoundConfig cfg;
  EXPECT_EQ(count_exceeding(cyclotomic(3, 600), cfg).bound, 3u);
  EXPECT_EQ(count_exceeding(cyclotomic(1, 600), cfg).bound, 1u);
}

TEST(CountExceeding, PerturbedCyclotomicBound) {
  auto base = cyclotomic(3, 600);
  std::vector<Complex> a(base.coefficients().begin(), base.coefficients().end());
  for (std::size_t n = 0; n < a.size(); ++n) a[n] += std::pow(3.0, -static_cast<double>(n));
  PoleBoundConfig cfg;
  cfg.rho1 = 3.0;
  cfg.epsilon = 0.1;
  const auto report = count_exceeding(CoefficientSeries(a), cfg);
  EXPECT_EQ(report.status, BoundStatus::ok);
  EXPECT_EQ(report.bound, 3u);
}

TEST(CountExceeding, AgreesWithLinearDomainCount) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> mag(0.0, 1.5);
  std::uniform_real_distribution<double> ph(0.0, 6.28);
  std::bernoulli_distribution zero(0.4);
  PoleBoundConfig cfg;
  cfg.epsilon = 0.2;
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<Complex> a(120);
    for (auto& x : a) x = zero(rng) ? Complex{} : std::polar(mag(rng), ph(rng));
    const CoefficientSeries s(a);
    const auto report = count_exceeding(s, cfg);
    EXPECT_EQ(report.v_counts, naive_counts(s, 0.8)) << trial;
  }
}

TEST(CountExceeding, ReportsNoAdmissibleCoefficients) {
  std::vector<Complex> a(50, 0.0);
  a[0] = 1.0;
  const auto report = count_exceeding(CoefficientSeries(a), PoleBoundConfig{});
  EXPECT_EQ(report.status, BoundStatus::no_admissible_coefficients);
  EXPECT_FALSE(report.bound.has_value());
}

TEST(CountExceeding, ThresholdDegeneracy) {
  // |a_j| = 0.5^j never exceeds (1/rho - eps)^j with 1/rho - eps = 0.9.
  std::vector<Complex> a(100);
  for (std::size_t j = 0; j < a.size(); ++j) a[j] = std::pow(0.5, static_cast<double>(j));
  PoleBoundConfig cfg;
  cfg.epsilon = 0.1;
  cfg.rho1 = 10.0;
  EXPECT_EQ(count_exceeding(CoefficientSeries(a), cfg).status, BoundStatus::no_admissible_coefficients);
}

TEST(PoleBoundConfig, Validation) {
  PoleBoundConfig cfg;
  cfg.rho1 = 1.1;  // 1/1.1 = 0.909 >= 1 - 0.1
  EXPECT_THROW(cfg.validate(), PreconditionError);
  cfg = {};
  cfg.epsilon = 0.6;
  EXPECT_THROW(cfg.validate(), PreconditionError);
  cfg = {};
  cfg.rho = 0.0;
  EXPECT_THROW(cfg.validate(), PreconditionError);
  cfg = {};
  cfg.tail_fraction = 1.0;
  EXPECT_THROW(cfg.validate(), PreconditionError);
  EXPECT_NO_THROW(PoleBoundConfig{}.validate());
  EXPECT_THROW(count_exceeding(cyclotomic(1, 9), PoleBoundConfig{}), PreconditionError);
}

TEST(CountNonzero, Examples) {
  EXPECT_EQ(count_nonzero(cyclotomic(3, 300)).bound, 3u);
  EXPECT_EQ(count_nonzero(CoefficientSeries(std::vector<Complex>(300, 1.0))).bound, 1u);
  EXPECT_EQ(count_nonzero(cyclotomic(2, 300)).bound, 2u);
  EXPECT_EQ(count_nonzero(cyclotomic(2, 300)).mode, ThresholdMode::classical_nonzero);
}

TEST(CountNonzero, ToleranceIgnoresTinyCoefficients) {
  auto base = cyclotomic(2, 300);
  std::vector<Complex> a(base.coefficients().begin(), base.coefficients().end());
  for (std::size_t n = 1; n < a.size(); n += 2) a[n] = 1e-14;
  EXPECT_EQ(count_nonzero(CoefficientSeries(a)).bound, 1u);
  EXPECT_EQ(count_nonzero(CoefficientSeries(a), 1e-12).bound, 2u);
}
