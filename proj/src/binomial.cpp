#include "gapscan/binomial.hpp"

#include <cmath>
#include <numbers>

namespace gapscan {

namespace {

std::uint64_t exact_binomial(unsigned r, unsigned l) {
  if (l > r - l) l = r - l;
  std::uint64_t acc = 1;
  // acc * (r - l + i) stays below 2^64 for r <= 30; each partial product is itself a binomial.
  for (unsigned i = 1; i <= l; ++i) acc = acc * (r - l + i) / i;
  return acc;
}

}  // namespace

double log_binomial(unsigned r, unsigned l) {
  if (r <= kExactBinomialLimit) return std::log(static_cast<double>(exact_binomial(r, l)));
  return std::lgamma(r + 1.0) - std::lgamma(l + 1.0) - std::lgamma(r - l + 1.0);
}

double binomial(unsigned r, unsigned l) {
  if (l > r) return 0.0;
  if (r <= kExactBinomialLimit) return static_cast<double>(exact_binomial(r, l));
  return std::round(std::exp(log_binomial(r, l)));
}

double halved_binomial(unsigned r, unsigned l) {
  if (l > r) return 0.0;
  if (r <= kExactBinomialLimit) return std::ldexp(static_cast<double>(exact_binomial(r, l)), -static_cast<int>(r));
  return std::exp(log_binomial(r, l) - r * std::numbers::ln2);
}

}  // namespace gapscan
