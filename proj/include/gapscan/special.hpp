#pragma once

#include "gapscan/series.hpp"

namespace gapscan {

/// 1 / (1 - z).
Complex geometric(Complex z);
/// -ln(1 - z), principal branch (cut along [1, inf)).
Complex neg_log1m(Complex z);
/// Li_2(z) = sum_{n>=1} z^n / n^2, principal branch (cut along [1, inf)).
Complex dilog(Complex z);

}  // namespace gapscan
