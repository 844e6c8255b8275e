// Apache License, Version 2.0, refer to LICENSE.txt

#ifndef GRAPHCOUNT_BAYES_HPP
#define GRAPHCOUNT_BAYES_HPP

#include <Eigen/Core>

#include "graphcount/count_models.hpp"
#include "graphcount/priors.hpp"

namespace graphcount {

/// Observations N^(1..k), one row per observation, columns in graph vertex order.
using Observations = Eigen::MatrixXi;

/// (alpha + sum of rows, beta + k r). Throws std::invalid_argument on a
/// dimension mismatch or negative count.
DirParams posterior_update(const DirParams& prior, const Observations& data, double r);
/// As above; throws std::domain_error if a row is outside N_{G,r}.
IDirParams posterior_update(const IDirParams& prior, const Observations& data, int r);

/// ln C_G(n, r) + ln K_G(alpha, beta) - ln K_G(alpha + n, beta + r).
double dirnm_log_pmf(const DirParams& prior, double r, const CountVector& n);
/// ln c_G(n, r) + ln k_G(alpha, beta) - ln k_G(alpha + n, beta + r);
/// throws std::domain_error outside N_{G,r}.
double idirmult_log_pmf(const IDirParams& prior, int r, const CountVector& n);

/// sum_i ln C_G(n^(i), r) + ln K_G(alpha, beta) - ln K_G(alpha + sum n^(i), beta + k r).
double log_marginal_likelihood(const DirParams& prior, double r, const Observations& data);

}  // namespace graphcount

#endif  // GRAPHCOUNT_BAYES_HPP
