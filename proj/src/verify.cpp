// Apache License, Version 2.0, refer to LICENSE.txt

#include "graphcount/verify.hpp"

#include <boost/math/special_functions/beta.hpp>

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "graphcount/bayes.hpp"
#include "graphcount/clique_poly.hpp"
#include "graphcount/oracle.hpp"
#include "graphcount/priors.hpp"
#include "graphcount/structure_select.hpp"

namespace graphcount::verify {

namespace {

using oracle::Rational;

class Tally {
 public:
  explicit Tally(CheckResult& result) : result_(result) {}

  void at_most(const std::string& what, double value, double tolerance) { add(what, value, tolerance, true); }
  void at_least(const std::string& what, double value, double tolerance) { add(what, value, tolerance, false); }
  /// Count of failures that must be zero.
  void none(const std::string& what, long failures) { add(what, static_cast<double>(failures), 0.0, true); }

 private:
  void add(const std::string& what, double value, double tolerance, bool upper) {
    const bool ok = upper ? value <= tolerance : value >= tolerance;
    result_.measurements.push_back({what, value, tolerance, upper, ok});
    result_.passed = result_.passed && ok;
  }
  CheckResult& result_;
};

/// Running maximum; NaN poisons it to +inf.
struct MaxError {
  double value = 0.0;
  void add(double e) { value = std::isnan(e) ? std::numeric_limits<double>::infinity() : std::max(value, e); }
};

double rel_err(double a, double b) {
  const double scale = std::max({std::abs(a), std::abs(b), std::numeric_limits<double>::min()});
  return std::abs(a - b) / scale;
}

/// |p/q - 1| for log-probabilities p, q.
double log_ratio_err(double a, double b) {
  if (std::isinf(a) && std::isinf(b) && a < 0 && b < 0) return 0.0;
  return std::abs(std::expm1(a - b));
}

UndirectedGraph make_graph(int n, std::initializer_list<std::pair<int, int>> edges) {
  std::vector<std::pair<int, int>> list(edges);
  return UndirectedGraph::from_edges(n, list);
}

UndirectedGraph chain3() { return make_graph(3, {{1, 2}, {2, 3}}); }
UndirectedGraph star4() { return make_graph(4, {{1, 2}, {1, 3}, {1, 4}}); }
UndirectedGraph path4() { return make_graph(4, {{1, 2}, {2, 3}, {3, 4}}); }
UndirectedGraph diamond() { return make_graph(4, {{1, 2}, {1, 3}, {2, 3}, {2, 4}, {3, 4}}); }
UndirectedGraph bowtie() { return make_graph(5, {{1, 2}, {1, 3}, {2, 3}, {3, 4}, {3, 5}, {4, 5}}); }
UndirectedGraph tree5() { return make_graph(5, {{1, 2}, {2, 3}, {2, 4}, {4, 5}}); }

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

Eigen::VectorXd random_positive(int size, Rng& rng, double lo, double hi) {
  Eigen::VectorXd v(size);
  for (int i = 0; i < size; ++i) v[i] = uniform(rng, lo, hi);
  return v;
}

/// Positive x with sum exactly `total` (< 1, hence inside M_G).
Eigen::VectorXd random_simplex_x(int size, Rng& rng, double total) {
  Eigen::VectorXd v = random_positive(size, rng, 0.2, 1.0);
  return v * (total / v.sum());
}

double pi_monomial(const Eigen::VectorXd& x, VertexSet c) {
  double p = 1.0;
  for (int v : members(c)) p *= x[v];
  return p;
}

long prod_counts(const CountVector& n) {
  long p = 1;
  for (int i = 0; i < n.size(); ++i) p *= n[i];
  return p;
}

// ---------------------------------------------------------------------------
// 1. Clique-polynomial identities.

struct IdentityErrors {
  MaxError product_u;
  MaxError product_w;
  MaxError recursion;
  MaxError disconnected;
  MaxError delta_sign;
  MaxError complement_sum;
  long dags = 0;

  void merge(const IdentityErrors& o) {
    product_u.add(o.product_u.value);
    product_w.add(o.product_w.value);
    recursion.add(o.recursion.value);
    disconnected.add(o.disconnected.value);
    delta_sign.add(o.delta_sign.value);
    complement_sum.add(o.complement_sum.value);
    dags += o.dags;
  }
};

void identities_on_graph(const UndirectedGraph& g, Rng& rng, IdentityErrors& e) {
  const int size = g.size();
  const std::vector<MoralDag> dags = enumerate_moral_dags(g);
  e.dags += static_cast<long>(dags.size());
  const std::vector<VertexSet> cc = complement_cliques(g);
  const VertexSet all = g.all();
  for (int draw = 0; draw < 100; ++draw) {
    const Eigen::VectorXd x = random_x(dags.front(), rng, 0.02, 0.5);
    const Eigen::VectorXd y = random_positive(size, rng, 0.1, 2.0);
    CliquePolynomial<double> px(g, x);
    CliquePolynomial<double> py(g, -y);
    const double big_delta = px(all);
    const double small_delta = py(all);

    for (const MoralDag& dag : dags) {
      const Eigen::VectorXd u = u_coords(dag, x);
      const Eigen::VectorXd w = w_coords(dag, y);
      e.product_u.add(rel_err(big_delta, (1.0 - u.array()).prod()));
      e.product_w.add(rel_err(small_delta, (1.0 + w.array()).prod()));
    }
    for (int i = 0; i < size; ++i) {
      e.recursion.add(rel_err(big_delta, px(all & ~singleton(i)) - x[i] * px(px.anti_neighbors(i))));
    }
    for (int k = 0; k < 4; ++k) {
      const VertexSet a = static_cast<VertexSet>(std::uniform_int_distribution<unsigned>(1, all)(rng));
      VertexSet reach = a;
      for_each_member(a, [&](int v) { reach |= g.neighbors(v); });
      const VertexSet b = all & ~reach;
      if (b != 0) e.disconnected.add(rel_err(px(a | b), px(a) * px(b)));
    }
    double signed_sum = 0.0;
    double plain_sum = 0.0;
    for (VertexSet c : cc) {
      signed_sum += (set_size(c) % 2 ? -1.0 : 1.0) * pi_monomial(x, c);
      plain_sum += pi_monomial(y, c);
    }
    e.complement_sum.add(rel_err(big_delta, signed_sum));
    e.delta_sign.add(rel_err(small_delta, plain_sum));
  }
}

void identities(Tally& t) {
  std::vector<UndirectedGraph> graphs;
  for (int size = 1; size <= 6; ++size) {
    for (auto& g : all_decomposable_graphs(size)) graphs.push_back(std::move(g));
  }
  // Graphs are independent; each gets its own seeded stream so the result
  // does not depend on the thread count.
  const unsigned workers = std::max(1U, std::min(8U, std::thread::hardware_concurrency()));
  std::vector<IdentityErrors> partial(workers);
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = next++; i < graphs.size(); i = next++) {
        std::seed_seq seq{1001U, static_cast<unsigned>(i)};
        Rng rng(seq);
        identities_on_graph(graphs[i], rng, partial[w]);
      }
    });
  }
  for (auto& th : pool) th.join();
  IdentityErrors e;
  for (const auto& p : partial) e.merge(p);

  t.at_least("decomposable graphs |V|<=6 covered", static_cast<double>(graphs.size()), 1.0);
  t.at_least("moral DAGs covered", static_cast<double>(e.dags), 1.0);
  t.at_most("Delta = prod(1-u) over every moral DAG (max rel err)", e.product_u.value, 1e-12);
  t.at_most("delta = prod(1+w) over every moral DAG (max rel err)", e.product_w.value, 1e-12);
  t.at_most("vertex recursion at every vertex (max rel err)", e.recursion.value, 1e-12);
  t.at_most("disconnected factorization (max rel err)", e.disconnected.value, 1e-12);
  t.at_most("delta(y) = Delta(-y) vs complement-clique sum (max rel err)", e.delta_sign.value, 1e-12);
  t.at_most("recursion vs complement-clique sum (max rel err)", e.complement_sum.value, 1e-12);
}

// ---------------------------------------------------------------------------
// 2. Worked examples on the 1-2-3 chain.

double rising_product(double a, int k) {
  double p = 1.0;
  for (int j = 0; j < k; ++j) p *= a + j;
  return p;
}

double falling_product(int a, int k) {
  double p = 1.0;
  for (int j = 0; j < k; ++j) p *= a - j;
  return p;
}

double factorial(int k) { return rising_product(1.0, k); }

void worked_examples(Tally& t) {
  const UndirectedGraph g = chain3();
  const DecomposableGraph dg(g);
  const std::vector<int> peo1{2, 1, 0};
  const std::vector<int> peo2{0, 1, 2};
  const std::vector<int> peo3{0, 2, 1};
  const MoralDag g1 = build_moral_dag(g, peo1);  // 1 -> 2 -> 3
  const MoralDag g2 = build_moral_dag(g, peo2);  // 1 <- 2 <- 3
  const MoralDag g3 = build_moral_dag(g, peo3);  // 1 <- 2 -> 3
  long shape_errors = 0;
  shape_errors += !(g1.parents(1) == singleton(0) && g1.parents(2) == singleton(1) && g1.parents(0) == 0);
  shape_errors += !(g2.parents(0) == singleton(1) && g2.parents(1) == singleton(2) && g2.parents(2) == 0);
  shape_errors += !(g3.parents(0) == singleton(1) && g3.parents(2) == singleton(1) && g3.parents(1) == 0);
  t.none("three moral DAGs built with the expected orientations", shape_errors);
  t.none("chain has exactly three moral DAGs", std::abs(static_cast<long>(enumerate_moral_dags(g).size()) - 3));

  Rng rng(2002);
  std::vector<Eigen::VectorXd> xs{Eigen::Vector3d(0.1, 0.2, 0.3)};
  for (int k = 0; k < 200; ++k) xs.push_back(random_x(g2, rng, 0.01, 0.95));
  MaxError u_err;
  for (const Eigen::VectorXd& x : xs) {
    const double x1 = x[0];
    const double x2 = x[1];
    const double x3 = x[2];
    const Eigen::Vector3d e1(x1 * (1 - x3) / (1 - x2 - x3), x2 / (1 - x3), x3);
    const Eigen::Vector3d e2(x1, x2 / (1 - x1), x3 * (1 - x1) / (1 - x1 - x2));
    const Eigen::Vector3d e3(x1, x2 / ((1 - x1) * (1 - x3)), x3);
    const std::pair<const MoralDag*, Eigen::Vector3d> cases[] = {{&g1, e1}, {&g2, e2}, {&g3, e3}};
    for (const auto& [dag, expected] : cases) {
      const Eigen::VectorXd u = u_coords(*dag, x);
      for (int i = 0; i < 3; ++i) u_err.add(rel_err(u[i], expected[i]));
    }
  }
  t.at_most("u-coordinates of the three chain DAGs (max rel err)", u_err.value, 1e-12);

  MaxError nm_err;
  for (double r : {0.5, 1.0, 2.0, 3.7}) {
    for (std::size_t k = 0; k < 20; ++k) {
      const Eigen::VectorXd& x = xs[k];
      const NmParams p(dg, r, x);
      oracle::for_each_count(3, 8, [&](const CountVector& n) {
        const double closed = rising_product(r, n[0] + n[1]) * rising_product(r, n[1] + n[2]) /
                               (rising_product(r, n[1]) * factorial(n[0]) * factorial(n[1]) * factorial(n[2])) *
                               std::pow(x[0], n[0]) * std::pow(x[1], n[1]) * std::pow(x[2], n[2]) *
                               std::pow(1 - x[0] - x[1] - x[2] + x[0] * x[2], r);
        nm_err.add(rel_err(closed, std::exp(nm_log_pmf(p, n))));
      });
    }
  }
  t.at_most("closed-form chain nm_G PMF vs generic PMF (max rel err)", nm_err.value, 1e-12);

  MaxError mult_err;
  for (int r : {1, 2, 3, 5}) {
    for (int k = 0; k < 20; ++k) {
      const Eigen::VectorXd y = random_positive(3, rng, 0.1, 3.0);
      const MultParams p(dg, r, y);
      oracle::for_each_mult_support(dg.structure(), 3, r, [&](const CountVector& n) {
        const double closed =
            falling_product(r, n[0] + n[1]) * falling_product(r, n[1] + n[2]) /
            (falling_product(r, n[1]) * factorial(n[0]) * factorial(n[1]) * factorial(n[2])) *
            std::pow(y[0], n[0]) * std::pow(y[1], n[1]) * std::pow(y[2], n[2]) /
            std::pow(1 + y[0] + y[1] + y[2] + y[0] * y[2], r);
        mult_err.add(rel_err(closed, std::exp(mult_log_pmf(p, n))));
      });
    }
  }
  t.at_most("closed-form chain mult_G PMF vs generic PMF (max rel err)", mult_err.value, 1e-12);

  // Hand-derived values on the chain.
  const Eigen::Vector3d x(0.1, 0.2, 0.3);
  const Eigen::Vector3d ones = Eigen::Vector3d::Ones();
  const CountVector n111 = CountVector::Ones(3);
  CountVector n101(3);
  n101 << 1, 0, 1;
  MaxError hand;
  hand.add(rel_err(eval_Delta(g, g.all(), x), 0.43));
  hand.add(rel_err(log_coeff_C(dg.structure(), n111, 2.0), std::log(18.0)));
  hand.add(rel_err(std::exp(nm_log_pmf(NmParams(dg, 2.0, x), n111)), 0.0199692));
  hand.add(rel_err(eval_delta(g, g.all(), Eigen::VectorXd(ones)), 5.0));
  hand.add(rel_err(mult_log_pmf(MultParams(dg, 1, ones), n101), std::log(0.2)));
  hand.add(rel_err(log_K(dg.structure(), dg.canonical_dag(), ones, 1.0), std::log(4.0)));
  hand.add(rel_err(log_k(dg.structure(), dg.canonical_dag(), ones, 3.0), std::log(2.0)));
  t.at_most("hand-derived chain values (Delta, C_G, pmf, delta, K_G, k_G) (max rel err)", hand.value, 1e-12);
}

// ---------------------------------------------------------------------------
// 3. Normalization.

void normalization(Tally& t) {
  Rng rng(3003);
  MaxError mult_err;
  long mult_cases = 0;
  for (int size = 1; size <= 5; ++size) {
    for (const UndirectedGraph& g : all_decomposable_graphs(size)) {
      const DecomposableGraph dg(g);
      for (int r = 1; r <= 4; ++r) {
        const MultParams p(dg, r, random_positive(size, rng, 0.2, 2.0));
        mult_err.add(std::abs(oracle::brute_pmf_sum(p) - 1.0));
        ++mult_cases;
      }
    }
  }
  t.at_least("mult_G cases (all decomposable |V|<=5, r<=4)", static_cast<double>(mult_cases), 1.0);
  t.at_most("mult_G exact-support sum |sum - 1|", mult_err.value, 1e-10);

  double nm_min = 1.0;
  for (const UndirectedGraph& g : {chain3(), star4(), path4(), diamond(), bowtie(), tree5()}) {
    const DecomposableGraph dg(g);
    for (double r : {0.5, 1.0, 2.0, 3.0}) {
      const NmParams p(dg, r, random_simplex_x(g.size(), rng, 0.4));
      nm_min = std::min(nm_min, oracle::brute_pmf_sum(p, 25));
    }
  }
  t.at_least("nm_G truncated sum at |n|<=25, sum(x)=0.4 (min)", nm_min, 1.0 - 1e-4);

  MaxError idir_err;
  for (int size = 1; size <= 4; ++size) {
    for (const UndirectedGraph& g : all_decomposable_graphs(size)) {
      const DecomposableGraph dg(g);
      for (int r = 1; r <= 3; ++r) {
        const Eigen::VectorXd alpha = random_positive(size, rng, 0.5, 2.0);
        const double beta = max_clique_weight(dg.structure(), alpha) + uniform(rng, 0.5, 3.0);
        const IDirParams prior(dg, alpha, beta);
        double sum = 0.0;
        oracle::for_each_mult_support(dg.structure(), size, r,
                                      [&](const CountVector& n) { sum += std::exp(idirmult_log_pmf(prior, r, n)); });
        idir_err.add(std::abs(sum - 1.0));
      }
    }
  }
  t.at_most("IDir-mult predictive exact-support sum |sum - 1| (|V|<=4, r<=3)", idir_err.value, 1e-10);

  // The Dir-nm predictive has polynomial tails, so a concentrated prior
  // (large beta) is needed for the |n| <= 25 truncation to be meaningful.
  double dirnm_min = 1.0;
  for (const UndirectedGraph& g : {chain3(), star4(), path4(), diamond()}) {
    const DecomposableGraph dg(g);
    for (double r : {1.0, 2.0}) {
      const DirParams prior(dg, Eigen::VectorXd::Constant(g.size(), 0.5), 40.0);
      double sum = 0.0;
      oracle::for_each_count(g.size(), 25,
                             [&](const CountVector& n) { sum += std::exp(dirnm_log_pmf(prior, r, n)); });
      dirnm_min = std::min(dirnm_min, sum);
    }
  }
  t.at_least("Dir-nm predictive truncated sum at |n|<=25, alpha=0.5, beta=40 (min)", dirnm_min, 1.0 - 1e-4);
}

// ---------------------------------------------------------------------------
// 4. Factorization equivalences.

void factorization(Tally& t) {
  Rng rng(4004);
  MaxError nm_dag;
  MaxError nm_cliques;
  MaxError mult_dag;
  MaxError mult_cliques;
  long pairs = 0;
  for (int size = 1; size <= 5; ++size) {
    for (const UndirectedGraph& g : all_decomposable_graphs(size)) {
      const DecomposableGraph dg(g);
      const std::vector<MoralDag> dags = enumerate_moral_dags(g);
      pairs += static_cast<long>(dags.size());
      const NmParams nm(dg, uniform(rng, 0.5, 3.0), random_x(dg.canonical_dag(), rng, 0.05, 0.6));
      const MultParams mult(dg, 4, random_positive(size, rng, 0.2, 2.0));
      oracle::for_each_count(size, 5, [&](const CountVector& n) {
        const double base = nm_log_pmf(nm, n);
        nm_cliques.add(log_ratio_err(base, nm_log_pmf_cliques(nm, n)));
        for (const MoralDag& dag : dags) nm_dag.add(log_ratio_err(base, nm_log_pmf_dag(nm, dag, n)));
        if (!in_mult_support(dg.structure(), n, mult.r())) return;
        const double mbase = mult_log_pmf(mult, n);
        mult_cliques.add(log_ratio_err(mbase, mult_log_pmf_cliques(mult, n)));
        for (const MoralDag& dag : dags) mult_dag.add(log_ratio_err(mbase, mult_log_pmf_dag(mult, dag, n)));
      });
    }
  }
  t.at_least("(graph, moral DAG) pairs covered, |V|<=5", static_cast<double>(pairs), 1.0);
  t.at_most("nm_G: PMF vs DAG-conditional product (max rel err)", nm_dag.value, 1e-10);
  t.at_most("nm_G: PMF vs clique/separator ratio (max rel err)", nm_cliques.value, 1e-10);
  t.at_most("mult_G: PMF vs DAG-conditional product (max rel err)", mult_dag.value, 1e-10);
  t.at_most("mult_G: PMF vs clique/separator ratio (max rel err)", mult_cliques.value, 1e-10);
}

// ---------------------------------------------------------------------------
// 5. Marginals.

std::vector<VertexSet> nonempty_subsets(VertexSet c) {
  std::vector<VertexSet> out;
  for (VertexSet s = c; s != 0; s = (s - 1) & c) out.push_back(s);
  return out;
}

void marginals(Tally& t) {
  Rng rng(5005);
  MaxError nm_clique;
  MaxError mult_clique;
  MaxError nm_pair;
  MaxError mult_pair;
  double missing = 0.0;
  long pair_cases = 0;
  for (const UndirectedGraph& g : {chain3(), star4(), path4(), diamond(), bowtie(), tree5()}) {
    const DecomposableGraph dg(g);
    const int cutoff = g.size() <= 4 ? 32 : 26;
    const NmParams nm(dg, 1.5, random_simplex_x(g.size(), rng, 0.3));
    const MultParams mult(dg, 3, random_positive(g.size(), rng, 0.3, 1.5));
    missing = std::max(missing, 1.0 - oracle::brute_pmf_sum(nm, cutoff));

    std::set<VertexSet> cliques;
    for (VertexSet c : dg.structure().maximal_cliques) {
      for (VertexSet s : nonempty_subsets(c)) cliques.insert(s);
    }
    for (VertexSet c : cliques) {
      const Eigen::VectorXd xc = clique_marginal_params(g, nm.x(), c, ParamDomain::x);
      const Eigen::VectorXd yc = clique_marginal_params(g, mult.y(), c, ParamDomain::y);
      oracle::for_each_count(set_size(c), 3, [&](const CountVector& nc) {
        nm_clique.add(std::abs(oracle::brute_marginal(nm, c, nc, cutoff) -
                               std::exp(nm_classical_log_pmf(nm.r(), xc, nc))));
        if (nc.sum() <= mult.r()) {
          mult_clique.add(std::abs(oracle::brute_marginal(mult, c, nc) -
                                   std::exp(mult_classical_log_pmf(mult.r(), yc, nc))));
        }
      });
    }

    for (int i = 0; i < g.size(); ++i) {
      for (int j = i + 1; j < g.size(); ++j) {
        if (g.has_edge(i, j)) continue;
        ++pair_cases;
        const VertexSet ij = singleton(i) | singleton(j);
        for (int ni = 0; ni <= 3; ++ni) {
          for (int nj = 0; nj <= 3; ++nj) {
            CountVector nij(2);
            nij << ni, nj;
            nm_pair.add(std::abs(oracle::brute_marginal(nm, ij, nij, cutoff) -
                                 std::exp(bivariate_log_pmf(nm, i, j, ni, nj))));
            mult_pair.add(std::abs(oracle::brute_marginal(mult, ij, nij) -
                                   std::exp(bivariate_log_pmf(mult, i, j, ni, nj))));
          }
        }
      }
    }
  }
  t.at_most("nm_G truncation: missing mass of the brute-force sums", missing, 1e-9);
  t.at_most("nm_G clique marginal vs nm(r, x^C) (max abs err)", nm_clique.value, 1e-8);
  t.at_most("mult_G clique marginal vs mult(r, y^C) (max abs err)", mult_clique.value, 1e-8);
  t.at_least("non-adjacent pairs covered", static_cast<double>(pair_cases), 1.0);
  t.at_most("nm_G bivariate 2F1 formula vs direct summation (max abs err)", nm_pair.value, 1e-8);
  t.at_most("mult_G bivariate 2F1 formula vs direct summation (max abs err)", mult_pair.value, 1e-8);
}

// ---------------------------------------------------------------------------
// 6. Normalizing constants.

void normalizing_constants(Tally& t) {
  Rng rng(6006);
  MaxError dir_err;
  MaxError idir_err;
  for (int size = 1; size <= 5; ++size) {
    for (const UndirectedGraph& g : all_decomposable_graphs(size)) {
      const DecomposableGraph dg(g);
      const std::vector<MoralDag> dags = enumerate_moral_dags(g);
      for (int draw = 0; draw < 100; ++draw) {
        const Eigen::VectorXd alpha = random_positive(size, rng, 0.2, 3.0);
        const double beta = uniform(rng, 0.2, 4.0);
        const double ibeta = max_clique_weight(dg.structure(), alpha) + uniform(rng, 0.05, 3.0);
        const double k_cliques = log_K_cliques(dg.structure(), alpha, beta);
        const double kk_cliques = log_k_cliques(dg.structure(), alpha, ibeta);
        for (const MoralDag& dag : dags) {
          dir_err.add(std::abs(k_cliques - log_K_per_vertex(dag, alpha, beta)) / std::max(1.0, std::abs(k_cliques)));
          idir_err.add(std::abs(kk_cliques - log_k_per_vertex(dag, alpha, ibeta)) /
                       std::max(1.0, std::abs(kk_cliques)));
        }
      }
    }
  }
  t.at_most("ln K_G per-vertex (every moral DAG) vs clique form", dir_err.value, 1e-10);
  t.at_most("ln k_G per-vertex (every moral DAG) vs clique form", idir_err.value, 1e-10);

  long cases = 0;
  long k_bridge_failures = 0;
  long c_bridge_failures = 0;
  for (int size = 1; size <= 4; ++size) {
    for (const UndirectedGraph& g : all_decomposable_graphs(size)) {
      const DecomposableGraph dg(g);
      oracle::for_each_count(size, 6, [&](const CountVector& n) {
        if ((n.array() < 1).any()) return;
        for (long r = 1; r <= 3; ++r) {
          ++cases;
          const Rational pi = prod_counts(n);
          if (oracle::exact_K(dg.canonical_dag(), n, r) != oracle::exact_C(dg.structure(), n, r) * pi) {
            ++k_bridge_failures;
          }
          if (in_mult_support(dg.structure(), n, static_cast<int>(r)) &&
              oracle::exact_k(dg.canonical_dag(), n, r + 1) != oracle::exact_c(dg.structure(), n, r) * pi) {
            ++c_bridge_failures;
          }
        }
      });
    }
  }
  t.at_least("bridge cases (|V|<=4, |n|<=6, r<=3)", static_cast<double>(cases), 1.0);
  t.none("K_G(n,r) != C_G(n,r) prod n_i (exact rational)", k_bridge_failures);
  t.none("k_G(n,r+1) != c_G(n,r) prod n_i on N_{G,r} (exact rational)", c_bridge_failures);
}

// ---------------------------------------------------------------------------
// 7. Samplers.

template <typename Sampler, typename LogPmf>
double sampler_tv(int draws, Sampler sample, LogPmf log_pmf, const std::vector<CountVector>& support) {
  std::map<std::vector<int>, long> counts;
  for (int k = 0; k < draws; ++k) {
    const CountVector n = sample();
    counts[std::vector<int>(n.data(), n.data() + n.size())]++;
  }
  double tv = 0.0;
  double exact_in = 0.0;
  long empirical_in = 0;
  for (const CountVector& n : support) {
    const double exact = std::exp(log_pmf(n));
    auto it = counts.find(std::vector<int>(n.data(), n.data() + n.size()));
    const long c = it == counts.end() ? 0 : it->second;
    tv += std::abs(static_cast<double>(c) / draws - exact);
    exact_in += exact;
    empirical_in += c;
  }
  // Everything outside the enumerated support forms one extra cell.
  tv += std::abs((1.0 - exact_in) - static_cast<double>(draws - empirical_in) / draws);
  return 0.5 * tv;
}

std::vector<CountVector> truncated_support(int size, int cutoff) {
  std::vector<CountVector> out;
  oracle::for_each_count(size, cutoff, [&](const CountVector& n) { out.push_back(n); });
  return out;
}

std::vector<CountVector> mult_support(const DecompStructure& s, int size, int r) {
  std::vector<CountVector> out;
  oracle::for_each_mult_support(s, size, r, [&](const CountVector& n) { out.push_back(n); });
  return out;
}

void samplers(Tally& t) {
  Rng rng(7007);
  constexpr int kDraws = 100000;
  struct NmCase {
    const char* name;
    UndirectedGraph g;
    double r;
    Eigen::VectorXd x;
  };
  const NmCase nm_cases[] = {
      {"chain", chain3(), 1.0, Eigen::Vector3d(0.1, 0.1, 0.1)},
      {"star", star4(), 1.0, Eigen::Vector4d(0.1, 0.05, 0.05, 0.05)},
  };
  for (const auto& c : nm_cases) {
    const DecomposableGraph dg(c.g);
    const NmParams p(dg, c.r, c.x);
    const double tv = sampler_tv(
        kDraws, [&] { return nm_sample(p, dg.canonical_dag(), rng); },
        [&](const CountVector& n) { return nm_log_pmf(p, n); }, truncated_support(c.g.size(), 25));
    t.at_most(std::string("nm_G sampler TV, ") + c.name + " (|n|<=25 plus tail cell)", tv, 0.01);
  }
  struct MultCase {
    const char* name;
    UndirectedGraph g;
    int r;
    Eigen::VectorXd y;
  };
  const MultCase mult_cases[] = {
      {"chain", chain3(), 2, Eigen::Vector3d(0.3, 0.3, 0.3)},
      {"star", star4(), 2, Eigen::Vector4d(0.3, 0.2, 0.2, 0.2)},
  };
  for (const auto& c : mult_cases) {
    const DecomposableGraph dg(c.g);
    const MultParams p(dg, c.r, c.y);
    const double tv = sampler_tv(
        kDraws, [&] { return mult_sample(p, dg.canonical_dag(), rng); },
        [&](const CountVector& n) { return mult_log_pmf(p, n); }, mult_support(dg.structure(), c.g.size(), c.r));
    t.at_most(std::string("mult_G sampler TV, ") + c.name + " (exact support)", tv, 0.01);
  }

  // Dir_G on the chain: simplicial marginals and u-coordinates on every moral DAG.
  const UndirectedGraph g = chain3();
  const DecomposableGraph dg(g);
  const Eigen::Vector3d alpha(1.5, 2.0, 0.8);
  const double beta = 2.0;
  const DirParams prior(dg, alpha, beta);
  Rng dir_rng(7008);
  std::vector<Eigen::VectorXd> xs;
  xs.reserve(kDraws);
  for (int k = 0; k < kDraws; ++k) xs.push_back(dir_sample(prior, dg.canonical_dag(), dir_rng));
  double min_p = 1.0;
  for (int v : members(simplicial_vertices(g))) {
    std::vector<double> col;
    col.reserve(kDraws);
    for (const auto& x : xs) col.push_back(x[v]);
    double nb = 0.0;
    for (int w : members(g.neighbors(v))) nb += alpha[w];
    const double a = alpha[v];
    const double b = beta + nb;
    min_p = std::min(min_p, ks_pvalue(col, [&](double z) { return boost::math::ibeta(a, b, z); }));
  }
  t.at_least("Dir_G simplicial X_i ~ Beta_I(alpha_i, beta+|alpha_nb(i)|): min KS p-value", min_p, 0.01);
  double min_pu = 1.0;
  for (const MoralDag& dag : enumerate_moral_dags(g)) {
    std::vector<std::vector<double>> cols(3);
    for (const auto& x : xs) {
      const Eigen::VectorXd u = u_coords(dag, x);
      for (int i = 0; i < 3; ++i) cols[static_cast<std::size_t>(i)].push_back(u[i]);
    }
    for (int i = 0; i < 3; ++i) {
      double pa = 0.0;
      for (int v : members(dag.parents(i))) pa += alpha[v];
      const double a = alpha[i];
      const double b = beta + pa;
      min_pu = std::min(min_pu, ks_pvalue(cols[static_cast<std::size_t>(i)],
                                          [&](double z) { return boost::math::ibeta(a, b, z); }));
    }
  }
  t.at_least("Dir_G u-coordinates ~ Beta_I(alpha_i, beta+|alpha_pa(i)|), every DAG: min KS p-value", min_pu, 0.01);
}

// ---------------------------------------------------------------------------
// 8. Cartier-Foata.

void cartier_foata(Tally& t) {
  long cases = 0;
  long mismatches = 0;
  long c_not_one = 0;
  long support_mismatch = 0;
  for (int size = 1; size <= 4; ++size) {
    for (const UndirectedGraph& g : all_decomposable_graphs(size)) {
      const DecomposableGraph dg(g);
      oracle::for_each_count(size, 6, [&](const CountVector& n) {
        ++cases;
        const Rational coeff = oracle::exact_C(dg.structure(), n, 1);
        if (Rational(oracle::trace_class_count(g, n)) != coeff) ++mismatches;
      });
      std::set<VertexSet> support;
      oracle::for_each_mult_support(dg.structure(), size, 1, [&](const CountVector& n) {
        if (oracle::exact_c(dg.structure(), n, 1) != 1) ++c_not_one;
        VertexSet s = 0;
        for (int i = 0; i < size; ++i) {
          if (n[i] == 1) s |= singleton(i);
        }
        support.insert(s);
      });
      const std::vector<VertexSet> cc = complement_cliques(g);
      if (support != std::set<VertexSet>(cc.begin(), cc.end())) ++support_mismatch;
    }
  }
  t.at_least("(graph, n) cases, decomposable |V|<=4, |n|<=6", static_cast<double>(cases), 1.0);
  t.none("trace classes != C_G(n,1)", mismatches);
  t.none("c_G(n,1) != 1 on N_{G,1}", c_not_one);
  t.none("N_{G,1} != indicators of complement cliques", support_mismatch);
}

// ---------------------------------------------------------------------------
// 9. Conjugacy and mixtures.

void conjugacy(Tally& t) {
  Rng rng(9009);
  const UndirectedGraph g = chain3();
  const DecomposableGraph dg(g);
  const DirParams prior(dg, Eigen::Vector3d(1.0, 1.5, 2.0), 3.0);
  const double r = 2.0;
  std::vector<CountVector> ns;
  for (auto v : {std::array{0, 0, 0}, std::array{1, 0, 1}, std::array{1, 1, 1}, std::array{2, 0, 1}}) {
    CountVector n(3);
    n << v[0], v[1], v[2];
    ns.push_back(n);
  }
  constexpr int kDraws = 100000;
  std::vector<double> sum(ns.size(), 0.0);
  std::vector<double> sum_sq(ns.size(), 0.0);
  for (int k = 0; k < kDraws; ++k) {
    const Eigen::VectorXd x = dir_sample(prior, dg.canonical_dag(), rng);
    if (!in_M_G(dg, x)) continue;  // probability-zero boundary draws contribute 0
    const NmParams p(dg, r, x);
    for (std::size_t i = 0; i < ns.size(); ++i) {
      const double v = std::exp(nm_log_pmf(p, ns[i]));
      sum[i] += v;
      sum_sq[i] += v * v;
    }
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const double mean = sum[i] / kDraws;
    const double var = sum_sq[i] / kDraws - mean * mean;
    const double se = std::sqrt(var / kDraws);
    worst = std::max(worst, std::abs(mean - std::exp(dirnm_log_pmf(prior, r, ns[i]))) / se);
  }
  t.at_most("MC mixture of nm_G over Dir_G vs Dir-nm PMF (max |z|, standard errors)", worst, 3.0);

  Observations data(3, 3);
  data << 1, 0, 2, 0, 3, 1, 4, 1, 0;
  const DirParams post = posterior_update(prior, data, r);
  const Eigen::Vector3d expected_alpha(1.0 + 5, 1.5 + 4, 2.0 + 3);
  long dir_mismatch = (post.alpha() != Eigen::VectorXd(expected_alpha)) + (post.beta() != 3.0 + 3 * r);
  const DirParams seq =
      posterior_update(posterior_update(prior, data.topRows(1), r), data.bottomRows(2), r);
  dir_mismatch += (seq.alpha() != post.alpha()) + (seq.beta() != post.beta());
  t.none("Dir_G posterior != (alpha + sum n, beta + k r) or differs from sequential updates", dir_mismatch);

  const IDirParams iprior(dg, Eigen::Vector3d(0.5, 1.0, 0.5), 2.0);
  Observations mdata(2, 3);
  mdata << 1, 1, 0, 0, 1, 2;
  const IDirParams ipost = posterior_update(iprior, mdata, 3);
  long idir_mismatch = (ipost.alpha() != Eigen::VectorXd(Eigen::Vector3d(1.5, 3.0, 2.5))) + (ipost.beta() != 8.0);
  t.none("IDir_G posterior != (alpha + sum n, beta + k r)", idir_mismatch);

  // Chain rule over two observations.
  CountVector a(3);
  a << 1, 0, 2;
  CountVector b(3);
  b << 0, 3, 1;
  Observations two(2, 3);
  two.row(0) = a.transpose();
  two.row(1) = b.transpose();
  const DirParams after_a = posterior_update(prior, two.topRows(1), r);
  const double joint = log_marginal_likelihood(prior, r, two);
  const double chained = dirnm_log_pmf(prior, r, a) + dirnm_log_pmf(after_a, r, b);
  t.at_most("predictive chain rule over k=2 (abs log err)", std::abs(joint - chained), 1e-10);
}

// ---------------------------------------------------------------------------
// 10. Structure selection.

Observations sample_rows(const NmParams& p, int k, Rng& rng) {
  Observations data(k, p.graph().size());
  for (int row = 0; row < k; ++row) data.row(row) = nm_sample(p, p.graph().canonical_dag(), rng).transpose();
  return data;
}

void structure_selection(Tally& t) {
  const UndirectedGraph chain = chain3();
  const DecomposableGraph dg(chain);
  const Eigen::VectorXd alpha = Eigen::VectorXd::Ones(3);
  const double beta = 1.0;
  const int r = 3;
  Rng rng(10010);

  t.none("decomposable graphs on 3 vertices != 8",
         std::abs(static_cast<long>(all_decomposable_graphs(3).size()) - 8));

  ChainConfig config;
  config.burn_in = 10000;
  config.steps = 110000;
  config.alpha = alpha;
  config.beta = beta;
  config.r = r;

  const auto start = std::chrono::steady_clock::now();
  const NmParams truth(dg, r, Eigen::Vector3d(0.2, 0.3, 0.2));
  for (int k : {0, 50}) {
    const Observations data = k == 0 ? Observations(0, 3) : sample_rows(truth, k, rng);
    const auto exact = exact_posterior(data, alpha, beta, r, 3);
    config.seed = 424242 + static_cast<std::uint64_t>(k);
    const ChainResult mcmc = run_chains(data, chain.labels(), config);
    t.at_most("MCMC vs exact posterior TV, k=" + std::to_string(k) + ", 1e5 post-burn-in steps",
              total_variation(mcmc.table, exact), 0.02);
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  t.at_most("wall time of both MCMC comparisons (s)", seconds, 30.0);

  const NmParams planted(dg, r, Eigen::Vector3d(0.25, 0.3, 0.25));
  const Observations data = sample_rows(planted, 200, rng);
  const auto exact = exact_posterior(data, alpha, beta, r, 3);
  config.seed = 777;
  const ChainResult mcmc = run_chains(data, chain.labels(), config);
  const GraphKey key = graph_key(chain);
  t.none("planted chain is not the exact posterior mode (k=200, r=3)", exact.front().edges != key);
  t.none("planted chain is not ranked first by MCMC", mcmc.table.front().edges != key);
}

// ---------------------------------------------------------------------------

struct Entry {
  CheckInfo info;
  void (*run)(Tally&);
};

const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries{
      {{"identities", 1, "clique-polynomial identities on all decomposable graphs |V|<=6"}, identities},
      {{"worked_examples", 2, "1-2-3 chain u-coordinates and PMFs"}, worked_examples},
      {{"normalization", 3, "PMF and predictive normalization"}, normalization},
      {{"factorization", 4, "PMF = DAG product = clique/separator ratio"}, factorization},
      {{"marginals", 5, "clique and bivariate marginals vs direct summation"}, marginals},
      {{"normalizing_constants", 6, "K_G/k_G two forms and exact bridges"}, normalizing_constants},
      {{"samplers", 7, "sampler TV distances and KS tests"}, samplers},
      {{"cartier_foata", 8, "trace classes and r=1 multinomial support"}, cartier_foata},
      {{"conjugacy", 9, "Dir-nm mixture and posterior updating"}, conjugacy},
      {{"structure_selection", 10, "MCMC vs exact posterior on 3 vertices"}, structure_selection},
  };
  return entries;
}

}  // namespace

const std::vector<CheckInfo>& list_checks() {
  static const std::vector<CheckInfo> infos = [] {
    std::vector<CheckInfo> out;
    for (const auto& e : registry()) out.push_back(e.info);
    return out;
  }();
  return infos;
}

CheckResult run_check(const std::string& name) {
  for (const auto& e : registry()) {
    if (e.info.name != name) continue;
    CheckResult result;
    result.name = e.info.name;
    result.criterion = e.info.criterion;
    Tally tally(result);
    const auto start = std::chrono::steady_clock::now();
    try {
      e.run(tally);
    } catch (const std::exception& ex) {
      result.passed = false;
      result.error = ex.what();
    }
    result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
  }
  throw std::invalid_argument("unknown check: " + name);
}

std::vector<CheckResult> run_checks(const std::vector<std::string>& only) {
  std::vector<CheckResult> out;
  if (only.empty()) {
    for (const auto& e : registry()) out.push_back(run_check(e.info.name));
  } else {
    for (const auto& name : only) out.push_back(run_check(name));
  }
  return out;
}

std::string format_line(const CheckResult& result) {
  std::ostringstream out;
  out << (result.passed ? "PASS" : "FAIL") << "  [" << result.criterion << "] " << result.name << "  ("
      << result.seconds << " s)\n";
  for (const auto& m : result.measurements) {
    out << "    " << (m.passed ? "ok  " : "BAD ") << m.what << ": " << m.value << (m.upper ? " <= " : " >= ")
        << m.tolerance << "\n";
  }
  if (!result.error.empty()) out << "    error: " << result.error << "\n";
  return out.str();
}

std::string to_json(const std::vector<CheckResult>& results) {
  nlohmann::json doc = nlohmann::json::array();
  for (const auto& r : results) {
    nlohmann::json item;
    item["name"] = r.name;
    item["criterion"] = r.criterion;
    item["passed"] = r.passed;
    item["seconds"] = r.seconds;
    if (!r.error.empty()) item["error"] = r.error;
    item["measurements"] = nlohmann::json::array();
    for (const auto& m : r.measurements) {
      item["measurements"].push_back({{"what", m.what},
                                      {"value", m.value},
                                      {"tolerance", m.tolerance},
                                      {"bound", m.upper ? "upper" : "lower"},
                                      {"passed", m.passed}});
    }
    doc.push_back(item);
  }
  return doc.dump(2);
}

std::vector<UndirectedGraph> all_decomposable_graphs(int size) {
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < size; ++a) {
    for (int b = a + 1; b < size; ++b) pairs.emplace_back(a, b);
  }
  if (pairs.size() > 20) throw std::invalid_argument("graph enumeration limited to |V| <= 6");
  const UndirectedGraph empty = UndirectedGraph::with_vertices(size);
  std::vector<UndirectedGraph> out;
  for (std::uint32_t mask = 0; mask < (1U << pairs.size()); ++mask) {
    UndirectedGraph g = empty;
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      if ((mask >> p) & 1U) g.add_edge(pairs[p].first, pairs[p].second);
    }
    if (is_decomposable(g)) out.push_back(std::move(g));
  }
  return out;
}

Eigen::VectorXd random_x(const MoralDag& dag, Rng& rng, double lo, double hi) {
  return x_from_u(dag, random_positive(dag.size(), rng, lo, hi));
}

double ks_pvalue(std::vector<double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw std::invalid_argument("KS test needs samples");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max({d, (static_cast<double>(i) + 1.0) / n - f, f - static_cast<double>(i) / n});
  }
  const double sqrt_n = std::sqrt(n);
  const double lambda = (sqrt_n + 0.12 + 0.11 / sqrt_n) * d;
  if (lambda < 1e-3) return 1.0;
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = 2.0 * ((k % 2) ? 1.0 : -1.0) * std::exp(-2.0 * k * k * lambda * lambda);
    sum += term;
    if (std::abs(term) < 1e-12) break;
  }
  return std::clamp(sum, 0.0, 1.0);
}

}  // namespace graphcount::verify
