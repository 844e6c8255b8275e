// Apache License, Version 2.0, refer to LICENSE.txt

#ifndef GRAPHCOUNT_PRIORS_HPP
#define GRAPHCOUNT_PRIORS_HPP

#include <Eigen/Core>

#include "graphcount/count_models.hpp"
#include "graphcount/graph.hpp"

namespace graphcount {

/// ln K_G(alpha, beta) as the product over vertices of a moral DAG.
double log_K_per_vertex(const MoralDag& dag, const Eigen::VectorXd& alpha, double beta);
/// ln K_G(alpha, beta) in clique/separator form.
double log_K_cliques(const DecompStructure& s, const Eigen::VectorXd& alpha, double beta);
/// Both forms, cross-checked to 1e-10 (std::logic_error otherwise); returns the clique form.
/// Throws std::invalid_argument unless alpha > 0 and beta > 0.
double log_K(const DecompStructure& s, const MoralDag& dag, const Eigen::VectorXd& alpha, double beta);

double log_k_per_vertex(const MoralDag& dag, const Eigen::VectorXd& alpha, double beta);
double log_k_cliques(const DecompStructure& s, const Eigen::VectorXd& alpha, double beta);
/// Throws std::invalid_argument unless alpha > 0 and beta > max_C |alpha_C|.
double log_k(const DecompStructure& s, const MoralDag& dag, const Eigen::VectorXd& alpha, double beta);

/// max over maximal cliques of |alpha_C|.
double max_clique_weight(const DecompStructure& s, const Eigen::VectorXd& alpha);

/// Hyperparameters of Dir_G(alpha, beta) with the normalizing constant cached.
class DirParams {
 public:
  DirParams(DecomposableGraph graph, Eigen::VectorXd alpha, double beta);

  const DecomposableGraph& graph() const { return graph_; }
  const Eigen::VectorXd& alpha() const { return alpha_; }
  double beta() const { return beta_; }
  double log_K() const { return log_K_; }

 private:
  DecomposableGraph graph_;
  Eigen::VectorXd alpha_;
  double beta_;
  double log_K_;
};

/// Hyperparameters of IDir_G(alpha, beta); requires beta > max_C |alpha_C|.
class IDirParams {
 public:
  IDirParams(DecomposableGraph graph, Eigen::VectorXd alpha, double beta);

  const DecomposableGraph& graph() const { return graph_; }
  const Eigen::VectorXd& alpha() const { return alpha_; }
  double beta() const { return beta_; }
  double log_k() const { return log_k_; }

 private:
  DecomposableGraph graph_;
  Eigen::VectorXd alpha_;
  double beta_;
  double log_k_;
};

/// Log density of the Beta distribution of the first kind on (0, 1).
double beta1_log_pdf(double a, double b, double u);
/// Log density of the Beta distribution of the second kind on (0, inf).
double beta2_log_pdf(double a, double b, double w);
double sample_beta1(double a, double b, Rng& rng);
double sample_beta2(double a, double b, Rng& rng);

/// -inf outside M_G.
double dir_log_pdf(const DirParams& p, const Eigen::VectorXd& x);
/// -inf unless y > 0.
double idir_log_pdf(const IDirParams& p, const Eigen::VectorXd& y);

/// Independent U_i ~ Beta_I(alpha_i, beta + |alpha_pa(i)|) mapped through x_from_u.
Eigen::VectorXd dir_sample(const DirParams& p, const MoralDag& dag, Rng& rng);
/// Independent W_i ~ Beta_II(alpha_i, beta - |alpha_pa(i)| - alpha_i) mapped through y_from_w.
Eigen::VectorXd idir_sample(const IDirParams& p, const MoralDag& dag, Rng& rng);

/// x^C for a clique C; distributed as classical Dir(alpha_C, beta) under Dir_G.
Eigen::VectorXd dir_clique_project(const DirParams& p, const Eigen::VectorXd& x, VertexSet clique);
/// y^C for a clique C.
Eigen::VectorXd idir_clique_project(const IDirParams& p, const Eigen::VectorXd& y, VertexSet clique);

}  // namespace graphcount

#endif  // GRAPHCOUNT_PRIORS_HPP
