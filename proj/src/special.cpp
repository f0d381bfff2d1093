#include "gapscan/special.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace gapscan {

namespace {

constexpr double kPi2Over6 = std::numbers::pi * std::numbers::pi / 6.0;

// B_{2k} / (2k+1)! for k = 1..15.
const std::array<double, 15>& bernoulli_terms() {
  static const std::array<double, 15> terms = [] {
    const std::array<double, 15> b = {1.0 / 6.0,
                                      -1.0 / 30.0,
                                      1.0 / 42.0,
                                      -1.0 / 30.0,
                                      5.0 / 66.0,
                                      -691.0 / 2730.0,
                                      7.0 / 6.0,
                                      -3617.0 / 510.0,
                                      43867.0 / 798.0,
                                      -174611.0 / 330.0,
                                      854513.0 / 138.0,
                                      -236364091.0 / 2730.0,
                                      8553103.0 / 6.0,
                                      -23749461029.0 / 870.0,
                                      8615841276005.0 / 14322.0};
    std::array<double, 15> out{};
    for (std::size_t k = 0; k < b.size(); ++k) out[k] = b[k] / std::tgamma(2.0 * static_cast<double>(k + 1) + 2.0);
    return out;
  }();
  return terms;
}

// Valid for |z| <= 1, Re z <= 1/2, where |u| stays well inside 2 pi.
Complex dilog_core(Complex z) {
  const Complex u = -std::log(1.0 - z);
  const Complex u2 = u * u;
  Complex sum = u - 0.25 * u2;
  Complex power = u;
  for (double c : bernoulli_terms()) {
    power *= u2;
    sum += c * power;
  }
  return sum;
}

}  // namespace

Complex geometric(Complex z) { return 1.0 / (1.0 - z); }

Complex neg_log1m(Complex z) { return -std::log(1.0 - z); }

Complex dilog(Complex z) {
  if (z == Complex{0.0, 0.0}) return {0.0, 0.0};
  if (z == Complex{1.0, 0.0}) return {kPi2Over6, 0.0};
  if (std::abs(z) > 1.0) {
    const Complex l = std::log(-z);
    return -kPi2Over6 - 0.5 * l * l - dilog(1.0 / z);
  }
  if (z.real() > 0.5) {
    return kPi2Over6 - std::log(z) * std::log(1.0 - z) - dilog_core(1.0 - z);
  }
  return dilog_core(z);
}

}  // namespace gapscan
