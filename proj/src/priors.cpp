// Apache License, Version 2.0, refer to LICENSE.txt

#include "graphcount/priors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "graphcount/clique_poly.hpp"

namespace graphcount {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kFormTol = 1e-10;

double weight(const Eigen::VectorXd& alpha, VertexSet a) {
  double total = 0.0;
  for (int v : members(a)) total += alpha[v];
  return total;
}

double sum_lgamma(const Eigen::VectorXd& alpha) {
  double total = 0.0;
  for (int i = 0; i < alpha.size(); ++i) total += std::lgamma(alpha[i]);
  return total;
}

void check_alpha(const Eigen::VectorXd& alpha, int size) {
  if (alpha.size() != size) throw std::invalid_argument("alpha length does not match graph");
  if (!(alpha.array() > 0.0).all()) throw std::invalid_argument("alpha must be strictly positive");
}

void cross_check(double a, double b, const char* what) {
  if (std::abs(a - b) > kFormTol * std::max(1.0, std::abs(a))) {
    throw std::logic_error(std::string(what) + ": per-vertex and clique forms disagree");
  }
}

}  // namespace

double log_K_per_vertex(const MoralDag& dag, const Eigen::VectorXd& alpha, double beta) {
  double total = 0.0;
  for (int i = 0; i < dag.size(); ++i) {
    const double pa = weight(alpha, dag.parents(i));
    total += std::lgamma(pa + alpha[i] + beta) - std::lgamma(pa + beta) - std::lgamma(alpha[i]);
  }
  return total;
}

double log_K_cliques(const DecompStructure& s, const Eigen::VectorXd& alpha, double beta) {
  double total = -s.components * std::lgamma(beta) - sum_lgamma(alpha);
  for (VertexSet c : s.maximal_cliques) total += std::lgamma(weight(alpha, c) + beta);
  for (const Separator& sep : s.separators) {
    total -= sep.multiplicity * std::lgamma(weight(alpha, sep.set) + beta);
  }
  return total;
}

double log_K(const DecompStructure& s, const MoralDag& dag, const Eigen::VectorXd& alpha, double beta) {
  check_alpha(alpha, dag.size());
  if (!(beta > 0.0)) throw std::invalid_argument("Dir_G requires beta > 0");
  const double cliques = log_K_cliques(s, alpha, beta);
  cross_check(cliques, log_K_per_vertex(dag, alpha, beta), "log_K");
  return cliques;
}

double log_k_per_vertex(const MoralDag& dag, const Eigen::VectorXd& alpha, double beta) {
  double total = 0.0;
  for (int i = 0; i < dag.size(); ++i) {
    const double pa = weight(alpha, dag.parents(i));
    total += std::lgamma(beta - pa) - std::lgamma(beta - pa - alpha[i]) - std::lgamma(alpha[i]);
  }
  return total;
}

double log_k_cliques(const DecompStructure& s, const Eigen::VectorXd& alpha, double beta) {
  double total = s.components * std::lgamma(beta) - sum_lgamma(alpha);
  for (VertexSet c : s.maximal_cliques) total -= std::lgamma(beta - weight(alpha, c));
  for (const Separator& sep : s.separators) {
    total += sep.multiplicity * std::lgamma(beta - weight(alpha, sep.set));
  }
  return total;
}

double max_clique_weight(const DecompStructure& s, const Eigen::VectorXd& alpha) {
  double best = 0.0;
  for (VertexSet c : s.maximal_cliques) best = std::max(best, weight(alpha, c));
  return best;
}

double log_k(const DecompStructure& s, const MoralDag& dag, const Eigen::VectorXd& alpha, double beta) {
  check_alpha(alpha, dag.size());
  if (!(beta > max_clique_weight(s, alpha))) {
    throw std::invalid_argument("IDir_G requires beta > max_C |alpha_C|");
  }
  const double cliques = log_k_cliques(s, alpha, beta);
  cross_check(cliques, log_k_per_vertex(dag, alpha, beta), "log_k");
  return cliques;
}

DirParams::DirParams(DecomposableGraph graph, Eigen::VectorXd alpha, double beta)
    : graph_(std::move(graph)), alpha_(std::move(alpha)), beta_(beta) {
  log_K_ = graphcount::log_K(graph_.structure(), graph_.canonical_dag(), alpha_, beta_);
}

IDirParams::IDirParams(DecomposableGraph graph, Eigen::VectorXd alpha, double beta)
    : graph_(std::move(graph)), alpha_(std::move(alpha)), beta_(beta) {
  log_k_ = graphcount::log_k(graph_.structure(), graph_.canonical_dag(), alpha_, beta_);
}

double beta1_log_pdf(double a, double b, double u) {
  if (!(u > 0.0 && u < 1.0)) return kNegInf;
  return std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + (a - 1.0) * std::log(u) +
         (b - 1.0) * std::log1p(-u);
}

double beta2_log_pdf(double a, double b, double w) {
  if (!(w > 0.0)) return kNegInf;
  return std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + (a - 1.0) * std::log(w) -
         (a + b) * std::log1p(w);
}

double sample_beta1(double a, double b, Rng& rng) {
  std::gamma_distribution<double> ga(a, 1.0);
  std::gamma_distribution<double> gb(b, 1.0);
  const double x = ga(rng);
  const double y = gb(rng);
  return x / (x + y);
}

double sample_beta2(double a, double b, Rng& rng) {
  std::gamma_distribution<double> ga(a, 1.0);
  std::gamma_distribution<double> gb(b, 1.0);
  const double x = ga(rng);
  return x / gb(rng);
}

double dir_log_pdf(const DirParams& p, const Eigen::VectorXd& x) {
  if (x.size() != p.graph().size()) throw std::invalid_argument("x length does not match graph");
  if (!in_M_G(p.graph(), x)) return kNegInf;
  const double delta = eval_Delta(p.graph().graph(), p.graph().graph().all(), x);
  return p.log_K() + (p.beta() - 1.0) * std::log(delta) +
         ((p.alpha().array() - 1.0) * x.array().log()).sum();
}

double idir_log_pdf(const IDirParams& p, const Eigen::VectorXd& y) {
  if (y.size() != p.graph().size()) throw std::invalid_argument("y length does not match graph");
  if (!(y.array() > 0.0).all()) return kNegInf;
  const double delta = eval_delta(p.graph().graph(), p.graph().graph().all(), y);
  return p.log_k() - p.beta() * std::log(delta) + ((p.alpha().array() - 1.0) * y.array().log()).sum();
}

Eigen::VectorXd dir_sample(const DirParams& p, const MoralDag& dag, Rng& rng) {
  Eigen::VectorXd u(p.graph().size());
  for (int i = 0; i < u.size(); ++i) {
    const double b = p.beta() + weight(p.alpha(), dag.parents(i));
    // Keep u strictly inside (0,1) where a gamma draw underflows.
    u[i] = std::clamp(sample_beta1(p.alpha()[i], b, rng), std::numeric_limits<double>::min(),
                      1.0 - std::numeric_limits<double>::epsilon());
  }
  return x_from_u(dag, u);
}

Eigen::VectorXd idir_sample(const IDirParams& p, const MoralDag& dag, Rng& rng) {
  Eigen::VectorXd w(p.graph().size());
  for (int i = 0; i < w.size(); ++i) {
    const double b = p.beta() - weight(p.alpha(), dag.parents(i)) - p.alpha()[i];
    w[i] = std::max(sample_beta2(p.alpha()[i], b, rng), std::numeric_limits<double>::min());
  }
  return y_from_w(dag, w);
}

Eigen::VectorXd dir_clique_project(const DirParams& p, const Eigen::VectorXd& x, VertexSet clique) {
  return clique_marginal_params(p.graph().graph(), x, clique, ParamDomain::x);
}

Eigen::VectorXd idir_clique_project(const IDirParams& p, const Eigen::VectorXd& y, VertexSet clique) {
  return clique_marginal_params(p.graph().graph(), y, clique, ParamDomain::y);
}

}  // namespace graphcount
