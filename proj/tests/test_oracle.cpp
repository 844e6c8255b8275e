// Apache License, Version 2.0, refer to LICENSE.txt

#include <doctest.h>

#include <cmath>
#include <set>

#include "graphcount/clique_poly.hpp"
#include "graphcount/oracle.hpp"
#include "support.hpp"

using namespace graphcount;
using doctest::Approx;
using testing::counts;

TEST_CASE("count enumeration") {
  int visited = 0;
  oracle::for_each_count(3, 2, [&](const CountVector& n) {
    CHECK(n.sum() <= 2);
    CHECK(n.minCoeff() >= 0);
    ++visited;
  });
  CHECK(visited == 10);

  // r = 1: the support is exactly the indicators of complement cliques.
  for (const UndirectedGraph& g : {testing::chain3(), testing::path4(), testing::diamond(), testing::star4()}) {
    const DecomposableGraph dg(g);
    std::set<VertexSet> support;
    oracle::for_each_mult_support(dg.structure(), g.size(), 1, [&](const CountVector& n) {
      CHECK(n.maxCoeff() <= 1);
      VertexSet s = 0;
      for (int v = 0; v < g.size(); ++v) {
        if (n[v] == 1) s |= singleton(v);
      }
      support.insert(s);
    });
    const auto cliques = complement_cliques(g);
    CHECK(support == std::set<VertexSet>(cliques.begin(), cliques.end()));
  }
}

TEST_CASE("trace normal forms") {
  const UndirectedGraph chain = testing::chain3();
  CHECK(oracle::trace_normal_form(chain, {2, 0, 1}) == std::vector<int>{0, 2, 1});
  CHECK(oracle::trace_normal_form(chain, {1, 2, 0}) == std::vector<int>{1, 0, 2});
  CHECK(oracle::trace_normal_form(chain, {0, 1, 2}) == std::vector<int>{0, 1, 2});
  CHECK(oracle::trace_normal_form(UndirectedGraph::with_vertices(3), {2, 1, 0, 2}) == std::vector<int>{0, 1, 2, 2});
  CHECK(oracle::trace_normal_form(testing::complete(3), {2, 1, 0}) == std::vector<int>{2, 1, 0});

  CHECK(oracle::trace_class_count(chain, counts({1, 1, 1})) == 4);
  CHECK(oracle::trace_class_count(chain, counts({0, 3, 0})) == 1);
  CHECK(oracle::trace_class_count(testing::complete(3), counts({2, 1, 1})) == 12);
  CHECK(oracle::trace_class_count(UndirectedGraph::with_vertices(3), counts({2, 1, 1})) == 1);
}

TEST_CASE("C_G(n, 1) counts commutation classes") {
  for (const UndirectedGraph& g : {testing::chain3(), testing::path4(), testing::star4(), testing::diamond()}) {
    const DecomposableGraph dg(g);
    oracle::for_each_count(g.size(), 6, [&](const CountVector& n) {
      CHECK(oracle::exact_C(dg.structure(), n, 1) == oracle::Rational(oracle::trace_class_count(g, n)));
    });
  }
}

TEST_CASE("series truncation and brute sums") {
  const DecomposableGraph chain(testing::chain3());
  const Eigen::Vector3d x(0.1, 0.15, 0.1);
  CHECK(oracle::series_truncation(chain, x, 1.5, 0) == 1.0);
  double previous = 0.0;
  for (int degree = 0; degree <= 15; ++degree) {
    const double s = oracle::series_truncation(chain, x, 1.5, degree);
    CHECK(s > previous);
    previous = s;
  }
  CHECK(std::abs(previous - std::pow(eval_Delta(chain.graph(), chain.graph().all(), x), -1.5)) < 1e-6);

  CHECK(oracle::brute_pmf_sum(NmParams(chain, 1.0, Eigen::Vector3d(0.1, 0.1, 0.1)), 20) >= 0.9999);
  CHECK(oracle::brute_pmf_sum(MultParams(chain, 3, Eigen::Vector3d(0.5, 1.0, 2.0))) == Approx(1.0).epsilon(1e-12));

  // Marginals over the whole set equal the joint PMF.
  const MultParams m(chain, 2, Eigen::Vector3d(0.5, 1.0, 2.0));
  CHECK(oracle::brute_marginal(m, chain.graph().all(), counts({1, 0, 1})) ==
        Approx(std::exp(mult_log_pmf(m, counts({1, 0, 1})))));
  double total = 0.0;
  for (int k = 0; k <= 2; ++k) total += oracle::brute_marginal(m, 0b001, counts({k}));
  CHECK(total == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("exact normalizing constants") {
  const DecomposableGraph k2(testing::complete(2));
  // Classical Dirichlet: Gamma(4) / (Gamma(1) Gamma(1) Gamma(2)) = 6.
  CHECK(oracle::exact_K(k2.canonical_dag(), counts({1, 1}), 2) == oracle::Rational(6));
  // Multinomial coefficients on the complete graph.
  CHECK(oracle::exact_c(k2.structure(), counts({1, 1}), 2) == oracle::Rational(2));
  CHECK(oracle::exact_c(k2.structure(), counts({2, 1}), 2) == oracle::Rational(0));
  CHECK(oracle::exact_C(k2.structure(), counts({1, 1}), 1) == oracle::Rational(2));
}
