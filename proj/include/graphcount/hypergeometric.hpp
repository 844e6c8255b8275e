// Apache License, Version 2.0, refer to LICENSE.txt

#ifndef GRAPHCOUNT_HYPERGEOMETRIC_HPP
#define GRAPHCOUNT_HYPERGEOMETRIC_HPP

namespace graphcount {

/// Gauss hypergeometric series 2F1(a, b; c; z).
///
/// Two regimes are supported:
///  - terminating: a or b a non-positive integer; the sum stops at
///    k = min of those -a, -b. If c is also a non-positive integer both a and
///    b must be non-positive integers with min(a, b) >= c.
///  - convergent: c not a non-positive integer and |z| < 1; summed until the
///    relative term falls below 1e-14 (at most 10^6 terms).
///
/// Throws std::domain_error outside these regimes and std::runtime_error if
/// the series fails to converge.
double hyp2f1(double a, double b, double c, double z);

}  // namespace graphcount

#endif  // GRAPHCOUNT_HYPERGEOMETRIC_HPP
