// Apache License, Version 2.0, refer to LICENSE.txt

#include "graphcount/bayes.hpp"

#include <stdexcept>

namespace graphcount {

namespace {

void check_data(const Observations& data, int size) {
  if (data.rows() > 0 && data.cols() != size) {
    throw std::invalid_argument("observation width does not match graph");
  }
  if ((data.array() < 0).any()) throw std::invalid_argument("counts must be non-negative");
}

Eigen::VectorXd column_totals(const Observations& data, int size) {
  if (data.rows() == 0) return Eigen::VectorXd::Zero(size);
  return data.colwise().sum().transpose().cast<double>();
}

}  // namespace

DirParams posterior_update(const DirParams& prior, const Observations& data, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("r must be positive");
  check_data(data, prior.graph().size());
  return DirParams(prior.graph(), prior.alpha() + column_totals(data, prior.graph().size()),
                   prior.beta() + static_cast<double>(data.rows()) * r);
}

IDirParams posterior_update(const IDirParams& prior, const Observations& data, int r) {
  if (r < 1) throw std::invalid_argument("r must be a positive integer");
  check_data(data, prior.graph().size());
  for (Eigen::Index row = 0; row < data.rows(); ++row) {
    if (!in_mult_support(prior.graph().structure(), data.row(row).transpose(), r)) {
      throw std::domain_error("observation outside N_{G,r}");
    }
  }
  return IDirParams(prior.graph(), prior.alpha() + column_totals(data, prior.graph().size()),
                    prior.beta() + static_cast<double>(data.rows()) * r);
}

double dirnm_log_pmf(const DirParams& prior, double r, const CountVector& n) {
  if (n.size() != prior.graph().size()) throw std::invalid_argument("count vector length does not match graph");
  const DecompStructure& s = prior.graph().structure();
  const Eigen::VectorXd post_alpha = prior.alpha() + n.cast<double>();
  return log_coeff_C(s, n, r) + prior.log_K() - log_K_cliques(s, post_alpha, prior.beta() + r);
}

double idirmult_log_pmf(const IDirParams& prior, int r, const CountVector& n) {
  if (n.size() != prior.graph().size()) throw std::invalid_argument("count vector length does not match graph");
  const DecompStructure& s = prior.graph().structure();
  const Eigen::VectorXd post_alpha = prior.alpha() + n.cast<double>();
  return log_coeff_c(s, n, r) + prior.log_k() - log_k_cliques(s, post_alpha, prior.beta() + r);
}

double log_marginal_likelihood(const DirParams& prior, double r, const Observations& data) {
  const int size = prior.graph().size();
  check_data(data, size);
  const DecompStructure& s = prior.graph().structure();
  double total = 0.0;
  for (Eigen::Index row = 0; row < data.rows(); ++row) {
    total += log_coeff_C(s, data.row(row).transpose(), r);
  }
  const Eigen::VectorXd post_alpha = prior.alpha() + column_totals(data, size);
  return total + prior.log_K() -
         log_K_cliques(s, post_alpha, prior.beta() + static_cast<double>(data.rows()) * r);
}

}  // namespace graphcount
