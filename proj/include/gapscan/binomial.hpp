#pragma once

#include <cstdint>

namespace gapscan {

/// Rows up to this r are computed in exact integer arithmetic.
inline constexpr unsigned kExactBinomialLimit = 30;

/// C(r, l) as a double; 0 when l > r. Exact for r <= kExactBinomialLimit,
/// log-Gamma domain above.
double binomial(unsigned r, unsigned l);

/// ln C(r, l); requires l <= r.
double log_binomial(unsigned r, unsigned l);

/// C(r, l) / 2^r without forming C(r, l), so it stays finite for large r
/// (the coefficients of ((1 + w) / 2)^r).
double halved_binomial(unsigned r, unsigned l);

}  // namespace gapscan
