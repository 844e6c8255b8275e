// Apache License, Version 2.0, refer to LICENSE.txt

#include "graphcount/hypergeometric.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace graphcount {

namespace {

bool is_nonpositive_integer(double v) { return v <= 0.0 && v == std::floor(v); }

constexpr double kRelTol = 1e-14;
constexpr long kMaxTerms = 1000000;

double convergent_series(double a, double b, double c, double z) {
  double term = 1.0;
  double sum = 1.0;
  for (long k = 0; k < kMaxTerms; ++k) {
    const double ratio = (a + k) * (b + k) / ((c + k) * (k + 1)) * z;
    term *= ratio;
    sum += term;
    if (std::abs(ratio) < 1.0 && std::abs(term) < kRelTol * std::abs(sum)) return sum;
    if (!std::isfinite(sum)) break;
  }
  throw std::runtime_error("hyp2f1: series did not converge");
}

}  // namespace

double hyp2f1(double a, double b, double c, double z) {
  const bool a_term = is_nonpositive_integer(a);
  const bool b_term = is_nonpositive_integer(b);

  if (is_nonpositive_integer(c)) {
    if (!(a_term && b_term && std::min(a, b) >= c)) {
      throw std::domain_error("hyp2f1: c is a non-positive integer outside the terminating case");
    }
  }

  if (a_term || b_term) {
    long last = 0;
    if (a_term && b_term) {
      last = static_cast<long>(std::min(-a, -b));
    } else {
      last = static_cast<long>(a_term ? -a : -b);
    }
    double term = 1.0;
    double sum = 1.0;
    for (long k = 0; k < last; ++k) {
      term *= (a + k) * (b + k) / ((c + k) * (k + 1)) * z;
      sum += term;
    }
    return sum;
  }

  if (!(std::abs(z) < 1.0)) {
    throw std::domain_error("hyp2f1: series diverges for |z| >= 1");
  }
  if (z < 0.0) {
    // Pfaff: the transformed argument lies in (0, 1/2) and the series stops alternating.
    return std::pow(1.0 - z, -a) * convergent_series(a, c - b, c, z / (z - 1.0));
  }
  return convergent_series(a, b, c, z);
}

}  // namespace graphcount
