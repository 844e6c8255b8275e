// Apache License, Version 2.0, refer to LICENSE.txt

#ifndef GRAPHCOUNT_COUNT_MODELS_HPP
#define GRAPHCOUNT_COUNT_MODELS_HPP

#include <Eigen/Core>

#include <random>

#include "graphcount/graph.hpp"

namespace graphcount {

/// One observation n in N^V, indexed by graph vertex order.
using CountVector = Eigen::VectorXi;
using Rng = std::mt19937_64;

/// |n_A|.
int subset_total(const CountVector& n, VertexSet a);

/// ln (a)^{(k)} = ln Gamma(a + k) - ln Gamma(a).
double log_rising(double a, int k);
/// ln (a)_{(k)} for integer a >= k >= 0.
double log_falling(int a, int k);

/// Parameters (r, x) of the graph negative multinomial nm_G(r, x).
class NmParams {
 public:
  /// Throws std::invalid_argument unless r > 0 and x is in M_G.
  NmParams(DecomposableGraph graph, double r, Eigen::VectorXd x);

  const DecomposableGraph& graph() const { return graph_; }
  double r() const { return r_; }
  const Eigen::VectorXd& x() const { return x_; }
  /// ln Delta_G(x).
  double log_Delta() const { return log_Delta_; }

 private:
  DecomposableGraph graph_;
  double r_;
  Eigen::VectorXd x_;
  double log_Delta_;
};

/// Parameters (r, y) of the graph multinomial mult_G(r, y).
class MultParams {
 public:
  /// Throws std::invalid_argument unless r >= 1 and y > 0.
  MultParams(DecomposableGraph graph, int r, Eigen::VectorXd y);

  const DecomposableGraph& graph() const { return graph_; }
  int r() const { return r_; }
  const Eigen::VectorXd& y() const { return y_; }
  /// ln delta_G(y).
  double log_delta() const { return log_delta_; }

 private:
  DecomposableGraph graph_;
  int r_;
  Eigen::VectorXd y_;
  double log_delta_;
};

/// ln C_G(n, r) in clique/separator Pochhammer form.
double log_coeff_C(const DecompStructure& s, const CountVector& n, double r);
/// ln c_G(n, r); throws std::domain_error if n is outside N_{G,r}.
double log_coeff_c(const DecompStructure& s, const CountVector& n, int r);
/// max over maximal cliques of |n_C| <= r, all entries non-negative.
bool in_mult_support(const DecompStructure& s, const CountVector& n, int r);

double nm_log_pmf(const NmParams& p, const CountVector& n);
/// Throws std::domain_error if n is outside N_{G,r}.
double mult_log_pmf(const MultParams& p, const CountVector& n);

/// Classical negative multinomial nm(r, x) on a complete graph (|x| < 1).
double nm_classical_log_pmf(double r, const Eigen::VectorXd& x, const CountVector& n);
/// Classical multinomial mult(r, y) with p_i = y_i / (1 + |y|); -inf when |n| > r.
double mult_classical_log_pmf(int r, const Eigen::VectorXd& y, const CountVector& n);

/// PMF as the product of nm(r + |n_pa(i)|, u_i)(n_i) conditionals along `dag`.
double nm_log_pmf_dag(const NmParams& p, const MoralDag& dag, const CountVector& n);
/// PMF as the product of mult(r - |n_pa(i)|, w_i)(n_i) conditionals along `dag`.
double mult_log_pmf_dag(const MultParams& p, const MoralDag& dag, const CountVector& n);
/// PMF as prod_C nm(r, x^C)(n_C) / prod_S nm(r, x^S)(n_S)^nu_S.
double nm_log_pmf_cliques(const NmParams& p, const CountVector& n);
double mult_log_pmf_cliques(const MultParams& p, const CountVector& n);

/// Draws N ~ nm_G(r, x) parent-first along `dag` with Gamma-Poisson
/// negative binomial conditionals.
CountVector nm_sample(const NmParams& p, const MoralDag& dag, Rng& rng);
/// Draws N ~ mult_G(r, y) parent-first along `dag` with binomial conditionals.
CountVector mult_sample(const MultParams& p, const MoralDag& dag, Rng& rng);

enum class ParamDomain { x, y };

/// x^C (or y^C) for a clique C, ordered by vertex index within C.
/// Throws std::invalid_argument if C is not a clique.
Eigen::VectorXd clique_marginal_params(const UndirectedGraph& g, const Eigen::VectorXd& params,
                                       VertexSet clique, ParamDomain domain);

/// Log PMF of (N_i, N_j) = (ni, nj). Adjacent pairs use the clique marginal;
/// non-adjacent pairs use the 2F1 formula on reduced 1-2-3 chain parameters.
double bivariate_log_pmf(const NmParams& p, int i, int j, int ni, int nj);
/// As above; returns -inf outside the support.
double bivariate_log_pmf(const MultParams& p, int i, int j, int ni, int nj);

/// ln E exp(<theta, N>). Throws std::domain_error if x e^theta leaves M_G.
double log_mgf(const NmParams& p, const Eigen::VectorXd& theta);
double log_mgf(const MultParams& p, const Eigen::VectorXd& theta);

}  // namespace graphcount

#endif  // GRAPHCOUNT_COUNT_MODELS_HPP
