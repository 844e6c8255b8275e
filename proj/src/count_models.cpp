// Apache License, Version 2.0, refer to LICENSE.txt

#include "graphcount/count_models.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "graphcount/clique_poly.hpp"
#include "graphcount/hypergeometric.hpp"

namespace graphcount {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_counts(const CountVector& n, int size) {
  if (n.size() != size) throw std::invalid_argument("count vector length does not match graph");
  if ((n.array() < 0).any()) throw std::invalid_argument("counts must be non-negative");
}

double sum_log_factorials(const CountVector& n) {
  double total = 0.0;
  for (int i = 0; i < n.size(); ++i) total += std::lgamma(n[i] + 1.0);
  return total;
}

double dot_log(const CountVector& n, const Eigen::VectorXd& p) {
  double total = 0.0;
  for (int i = 0; i < n.size(); ++i) {
    if (n[i] != 0) total += n[i] * std::log(p[i]);
  }
  return total;
}

CountVector restrict_counts(const CountVector& n, VertexSet a) {
  std::vector<int> idx = members(a);
  CountVector out(static_cast<int>(idx.size()));
  for (std::size_t k = 0; k < idx.size(); ++k) out[static_cast<int>(k)] = n[idx[k]];
  return out;
}

}  // namespace

int subset_total(const CountVector& n, VertexSet a) {
  int total = 0;
  for (int v : members(a)) total += n[v];
  return total;
}

double log_rising(double a, int k) { return std::lgamma(a + k) - std::lgamma(a); }

double log_falling(int a, int k) { return std::lgamma(a + 1.0) - std::lgamma(a - k + 1.0); }

NmParams::NmParams(DecomposableGraph graph, double r, Eigen::VectorXd x)
    : graph_(std::move(graph)), r_(r), x_(std::move(x)) {
  if (!(r_ > 0.0)) throw std::invalid_argument("nm_G requires r > 0");
  if (x_.size() != graph_.size()) throw std::invalid_argument("x length does not match graph");
  if (!in_M_G(graph_, x_)) throw std::invalid_argument("x is not in M_G");
  log_Delta_ = std::log(eval_Delta(graph_.graph(), graph_.graph().all(), x_));
}

MultParams::MultParams(DecomposableGraph graph, int r, Eigen::VectorXd y)
    : graph_(std::move(graph)), r_(r), y_(std::move(y)) {
  if (r_ < 1) throw std::invalid_argument("mult_G requires a positive integer r");
  if (y_.size() != graph_.size()) throw std::invalid_argument("y length does not match graph");
  if (!(y_.array() > 0.0).all()) throw std::invalid_argument("y must be strictly positive");
  log_delta_ = std::log(eval_delta(graph_.graph(), graph_.graph().all(), y_));
}

double log_coeff_C(const DecompStructure& s, const CountVector& n, double r) {
  double total = 0.0;
  for (VertexSet c : s.maximal_cliques) total += log_rising(r, subset_total(n, c));
  for (const Separator& sep : s.separators) {
    total -= sep.multiplicity * log_rising(r, subset_total(n, sep.set));
  }
  return total - sum_log_factorials(n);
}

bool in_mult_support(const DecompStructure& s, const CountVector& n, int r) {
  if ((n.array() < 0).any()) return false;
  for (VertexSet c : s.maximal_cliques) {
    if (subset_total(n, c) > r) return false;
  }
  return true;
}

double log_coeff_c(const DecompStructure& s, const CountVector& n, int r) {
  if (!in_mult_support(s, n, r)) throw std::domain_error("count vector outside N_{G,r}");
  double total = 0.0;
  for (VertexSet c : s.maximal_cliques) total += log_falling(r, subset_total(n, c));
  for (const Separator& sep : s.separators) {
    total -= sep.multiplicity * log_falling(r, subset_total(n, sep.set));
  }
  return total - sum_log_factorials(n);
}

double nm_log_pmf(const NmParams& p, const CountVector& n) {
  check_counts(n, p.graph().size());
  return log_coeff_C(p.graph().structure(), n, p.r()) + dot_log(n, p.x()) + p.r() * p.log_Delta();
}

double mult_log_pmf(const MultParams& p, const CountVector& n) {
  check_counts(n, p.graph().size());
  return log_coeff_c(p.graph().structure(), n, p.r()) + dot_log(n, p.y()) - p.r() * p.log_delta();
}

double nm_classical_log_pmf(double r, const Eigen::VectorXd& x, const CountVector& n) {
  check_counts(n, static_cast<int>(x.size()));
  const int total = n.sum();
  return log_rising(r, total) - sum_log_factorials(n) + dot_log(n, x) + r * std::log1p(-x.sum());
}

double mult_classical_log_pmf(int r, const Eigen::VectorXd& y, const CountVector& n) {
  check_counts(n, static_cast<int>(y.size()));
  const int total = n.sum();
  if (total > r) return kNegInf;
  return log_falling(r, total) - sum_log_factorials(n) + dot_log(n, y) - r * std::log1p(y.sum());
}

double nm_log_pmf_dag(const NmParams& p, const MoralDag& dag, const CountVector& n) {
  check_counts(n, p.graph().size());
  Eigen::VectorXd u = u_coords(dag, p.x());
  double total = 0.0;
  for (int i = 0; i < n.size(); ++i) {
    const double shape = p.r() + subset_total(n, dag.parents(i));
    total += log_rising(shape, n[i]) - std::lgamma(n[i] + 1.0) + n[i] * std::log(u[i]) +
             shape * std::log1p(-u[i]);
  }
  return total;
}

double mult_log_pmf_dag(const MultParams& p, const MoralDag& dag, const CountVector& n) {
  check_counts(n, p.graph().size());
  Eigen::VectorXd w = w_coords(dag, p.y());
  double total = 0.0;
  for (int i = 0; i < n.size(); ++i) {
    const int trials = p.r() - subset_total(n, dag.parents(i));
    if (n[i] > trials) return kNegInf;
    total += log_falling(trials, n[i]) - std::lgamma(n[i] + 1.0) + n[i] * std::log(w[i]) -
             trials * std::log1p(w[i]);
  }
  return total;
}

double nm_log_pmf_cliques(const NmParams& p, const CountVector& n) {
  check_counts(n, p.graph().size());
  const UndirectedGraph& g = p.graph().graph();
  const DecompStructure& s = p.graph().structure();
  double total = 0.0;
  for (VertexSet c : s.maximal_cliques) {
    total += nm_classical_log_pmf(p.r(), clique_marginal_params(g, p.x(), c, ParamDomain::x),
                                  restrict_counts(n, c));
  }
  for (const Separator& sep : s.separators) {
    total -= sep.multiplicity *
             nm_classical_log_pmf(p.r(), clique_marginal_params(g, p.x(), sep.set, ParamDomain::x),
                                  restrict_counts(n, sep.set));
  }
  return total;
}

double mult_log_pmf_cliques(const MultParams& p, const CountVector& n) {
  check_counts(n, p.graph().size());
  const UndirectedGraph& g = p.graph().graph();
  const DecompStructure& s = p.graph().structure();
  if (!in_mult_support(s, n, p.r())) return kNegInf;
  double total = 0.0;
  for (VertexSet c : s.maximal_cliques) {
    total += mult_classical_log_pmf(p.r(), clique_marginal_params(g, p.y(), c, ParamDomain::y),
                                    restrict_counts(n, c));
  }
  for (const Separator& sep : s.separators) {
    total -= sep.multiplicity *
             mult_classical_log_pmf(p.r(), clique_marginal_params(g, p.y(), sep.set, ParamDomain::y),
                                    restrict_counts(n, sep.set));
  }
  return total;
}

CountVector nm_sample(const NmParams& p, const MoralDag& dag, Rng& rng) {
  Eigen::VectorXd u = u_coords(dag, p.x());
  CountVector n = CountVector::Zero(p.graph().size());
  for (int i : dag.topo_order()) {
    const double shape = p.r() + subset_total(n, dag.parents(i));
    std::gamma_distribution<double> gamma(shape, u[i] / (1.0 - u[i]));
    const double rate = gamma(rng);
    std::poisson_distribution<int> poisson(rate);
    n[i] = rate > 0.0 ? poisson(rng) : 0;
  }
  return n;
}

CountVector mult_sample(const MultParams& p, const MoralDag& dag, Rng& rng) {
  Eigen::VectorXd w = w_coords(dag, p.y());
  CountVector n = CountVector::Zero(p.graph().size());
  for (int i : dag.topo_order()) {
    const int trials = p.r() - subset_total(n, dag.parents(i));
    std::binomial_distribution<int> binomial(trials, w[i] / (1.0 + w[i]));
    n[i] = binomial(rng);
  }
  return n;
}

Eigen::VectorXd clique_marginal_params(const UndirectedGraph& g, const Eigen::VectorXd& params,
                                       VertexSet clique, ParamDomain domain) {
  if (!g.is_clique(clique) || !is_subset(clique, g.all())) {
    throw std::invalid_argument("clique_marginal_params: vertex set is not a clique");
  }
  const double sign = domain == ParamDomain::x ? 1.0 : -1.0;
  CliquePolynomial<double> poly(g, sign * params);
  const double rest = poly(g.all() & ~clique);
  std::vector<int> idx = members(clique);
  Eigen::VectorXd out(static_cast<int>(idx.size()));
  for (std::size_t k = 0; k < idx.size(); ++k) {
    const int i = idx[k];
    out[static_cast<int>(k)] = params[i] * poly(poly.anti_neighbors(i)) / rest;
  }
  return out;
}

namespace {

struct ReducedChain {
  double first;
  double middle;
  double last;
};

// Parameters of the 1-2-3 chain carrying the law of (N_i, N_j), read off the
// multi-affine dependence of Delta (sign = 1) or delta (sign = -1) on x_i, x_j.
// With a common neighbour set S these agree with the Delta_{V\S} expressions.
ReducedChain reduced_chain(const UndirectedGraph& g, const Eigen::VectorXd& params, double sign, int i, int j) {
  CliquePolynomial<double> poly(g, sign * params);
  const VertexSet v = g.all();
  const double d_ij = poly(v & ~(singleton(i) | singleton(j)));
  const double d_i = poly(v & ~singleton(i));
  const double d_j = poly(v & ~singleton(j));
  const double d_g = poly(v);
  // Delta(s x_i, t x_j) / Delta_{V\{i,j}} = 1 - b s - c t + d s t.
  const double b = 1.0 - d_j / d_ij;
  const double c = 1.0 - d_i / d_ij;
  const double d = (d_g - d_i - d_j + d_ij) / d_ij;
  return {sign * d / c, sign * (1.0 - d / (b * c)), sign * d / b};
}

double power_log(int k, double base) { return k == 0 ? 0.0 : k * std::log(base); }

void check_pair(const UndirectedGraph& g, int i, int j, int ni, int nj) {
  if (i == j) throw std::invalid_argument("bivariate marginal needs two distinct vertices");
  if (i < 0 || j < 0 || i >= g.size() || j >= g.size()) throw std::out_of_range("vertex index");
  if (ni < 0 || nj < 0) throw std::invalid_argument("counts must be non-negative");
}

}  // namespace

double bivariate_log_pmf(const NmParams& p, int i, int j, int ni, int nj) {
  const UndirectedGraph& g = p.graph().graph();
  check_pair(g, i, j, ni, nj);
  const double r = p.r();
  if (g.has_edge(i, j)) {
    const VertexSet c = singleton(i) | singleton(j);
    Eigen::VectorXd xc = clique_marginal_params(g, p.x(), c, ParamDomain::x);
    CountVector nc(2);
    nc << (i < j ? ni : nj), (i < j ? nj : ni);
    return nm_classical_log_pmf(r, xc, nc);
  }
  const ReducedChain t = reduced_chain(g, p.x(), 1.0, i, j);
  if (!(std::abs(t.middle) < 1.0)) throw std::domain_error("reduced 2F1 argument outside |z| < 1");
  const double delta = 1.0 - t.first - t.middle - t.last + t.first * t.last;
  return log_rising(r, ni) - std::lgamma(ni + 1.0) + log_rising(r, nj) - std::lgamma(nj + 1.0) +
         power_log(ni, t.first) + power_log(nj, t.last) + r * std::log(delta) +
         std::log(hyp2f1(ni + r, nj + r, r, t.middle));
}

double bivariate_log_pmf(const MultParams& p, int i, int j, int ni, int nj) {
  const UndirectedGraph& g = p.graph().graph();
  check_pair(g, i, j, ni, nj);
  const int r = p.r();
  if (ni > r || nj > r) return kNegInf;
  if (g.has_edge(i, j)) {
    const VertexSet c = singleton(i) | singleton(j);
    Eigen::VectorXd yc = clique_marginal_params(g, p.y(), c, ParamDomain::y);
    CountVector nc(2);
    nc << (i < j ? ni : nj), (i < j ? nj : ni);
    return mult_classical_log_pmf(r, yc, nc);
  }
  const ReducedChain t = reduced_chain(g, p.y(), -1.0, i, j);
  const double delta = 1.0 + t.first + t.middle + t.last + t.first * t.last;
  const double series = hyp2f1(ni - r, nj - r, -r, -t.middle);
  return log_falling(r, ni) - std::lgamma(ni + 1.0) + log_falling(r, nj) - std::lgamma(nj + 1.0) +
         power_log(ni, t.first) + power_log(nj, t.last) - r * std::log(delta) + std::log(series);
}

double log_mgf(const NmParams& p, const Eigen::VectorXd& theta) {
  if (theta.size() != p.graph().size()) throw std::invalid_argument("theta length does not match graph");
  Eigen::VectorXd shifted = p.x().array() * theta.array().exp();
  if (!in_M_G(p.graph(), shifted)) throw std::domain_error("x e^theta is outside M_G");
  const double log_shifted = std::log(eval_Delta(p.graph().graph(), p.graph().graph().all(), shifted));
  return p.r() * (p.log_Delta() - log_shifted);
}

double log_mgf(const MultParams& p, const Eigen::VectorXd& theta) {
  if (theta.size() != p.graph().size()) throw std::invalid_argument("theta length does not match graph");
  Eigen::VectorXd shifted = p.y().array() * theta.array().exp();
  const double log_shifted = std::log(eval_delta(p.graph().graph(), p.graph().graph().all(), shifted));
  return p.r() * (log_shifted - p.log_delta());
}

}  // namespace graphcount
