// Apache License, Version 2.0, refer to LICENSE.txt

#include <doctest.h>

#include <cmath>

#include "graphcount/clique_poly.hpp"
#include "support.hpp"

using namespace graphcount;
using doctest::Approx;

namespace {

// Direct sum over complement cliques with (-1)^|C| prod x_C.
double Delta_by_cliques(const UndirectedGraph& g, const Eigen::VectorXd& x) {
  double total = 0.0;
  for (VertexSet c : complement_cliques(g)) {
    double term = set_size(c) % 2 == 0 ? 1.0 : -1.0;
    for (int v : members(c)) term *= x[v];
    total += term;
  }
  return total;
}

MoralDag dag_from_parents(std::vector<VertexSet> parents, std::vector<int> topo) {
  return MoralDag(std::move(parents), std::move(topo));
}

}  // namespace

TEST_CASE("Delta and delta on named graphs") {
  const UndirectedGraph chain = testing::chain3();
  const Eigen::Vector3d x(0.1, 0.2, 0.3);
  CHECK(eval_Delta(chain, chain.all(), x) == Approx(0.43).epsilon(1e-14));
  CHECK(eval_Delta(chain, 0, x) == 1.0);
  CHECK(eval_delta(chain, chain.all(), Eigen::Vector3d(1, 1, 1)) == Approx(5.0));

  const UndirectedGraph k4 = testing::complete(4);
  const Eigen::Vector4d xk(0.1, 0.15, 0.2, 0.05);
  CHECK(eval_Delta(k4, k4.all(), xk) == Approx(0.5));
  CHECK(eval_Delta(k4, 0b0101, xk) == Approx(1 - 0.1 - 0.2));
  CHECK(eval_delta(k4, k4.all(), xk) == Approx(1.5));

  const UndirectedGraph empty = UndirectedGraph::with_vertices(3);
  CHECK(eval_delta(empty, empty.all(), x) == Approx(1.1 * 1.2 * 1.3));
  CHECK(eval_Delta(empty, empty.all(), x) == Approx(0.9 * 0.8 * 0.7));
}

TEST_CASE("Delta recursion equals the complement-clique sum, |V| <= 6") {
  Rng rng(11);
  for (int n = 1; n <= 6; ++n) {
    for (const UndirectedGraph& g : testing::all_graphs(n)) {
      if (!is_decomposable(g)) continue;
      const Eigen::VectorXd x = testing::uniform_vector(n, rng, -0.5, 0.5);
      CHECK(eval_Delta(g, g.all(), x) == Approx(Delta_by_cliques(g, x)).epsilon(1e-12));
      CHECK(eval_delta(g, g.all(), x) == Approx(Delta_by_cliques(g, Eigen::VectorXd(-x))).epsilon(1e-12));
    }
  }
}

TEST_CASE("u-coordinates on the chain") {
  const Eigen::Vector3d x(0.1, 0.2, 0.3);
  // 1 -> 2 -> 3.
  const MoralDag forward = dag_from_parents({0, 0b001, 0b010}, {0, 1, 2});
  const Eigen::VectorXd u1 = u_coords(forward, x);
  CHECK(u1[2] == Approx(0.3));
  CHECK(u1[1] == Approx(0.2 / 0.7));
  CHECK(u1[0] == Approx(0.1 * 0.7 / 0.5));
  // 1 <- 2 -> 3.
  const MoralDag fork = dag_from_parents({0b010, 0, 0b010}, {1, 0, 2});
  const Eigen::VectorXd u3 = u_coords(fork, x);
  CHECK(u3[0] == Approx(0.1));
  CHECK(u3[1] == Approx(0.2 / (0.9 * 0.7)));
  CHECK(u3[2] == Approx(0.3));
  // Disconnected: u = x.
  const MoralDag none = dag_from_parents({0, 0, 0}, {0, 1, 2});
  CHECK(u_coords(none, x).isApprox(Eigen::VectorXd(x)));
}

TEST_CASE("x_from_u and y_from_w apply the product rules") {
  // 1 <- 2 <- 3: ch(2) = {1}, ch(3) = {2}.
  const MoralDag backward = dag_from_parents({0b010, 0b100, 0}, {2, 1, 0});
  const Eigen::VectorXd x = x_from_u(backward, Eigen::Vector3d(0.5, 0.5, 0.5));
  CHECK(x[0] == Approx(0.5));
  CHECK(x[1] == Approx(0.25));
  CHECK(x[2] == Approx(0.25));
  const Eigen::VectorXd y = y_from_w(backward, Eigen::Vector3d(1, 1, 1));
  CHECK(y[0] == Approx(1));
  CHECK(y[1] == Approx(2));
  CHECK(y[2] == Approx(2));
  CHECK_THROWS_AS(x_from_u(backward, Eigen::Vector3d(0.5, 1.0, 0.5)), std::domain_error);
  CHECK_THROWS_AS(w_coords(backward, Eigen::Vector3d(1, 0, 1)), std::domain_error);
}

TEST_CASE("coordinate identities on every moral DAG, |V| <= 5") {
  Rng rng(12);
  for (int n = 1; n <= 5; ++n) {
    for (const UndirectedGraph& g : testing::all_graphs(n)) {
      if (!is_decomposable(g)) continue;
      const DecomposableGraph dg(g);
      const Eigen::VectorXd u0 = testing::uniform_vector(n, rng, 0.05, 0.95);
      const Eigen::VectorXd x = x_from_u(dg.canonical_dag(), u0);
      const Eigen::VectorXd y = testing::uniform_vector(n, rng, 0.1, 3.0);
      const double Delta = eval_Delta(g, g.all(), x);
      const double delta = eval_delta(g, g.all(), y);
      CHECK(in_M_G(dg, x));
      CHECK(in_M_G_exhaustive(g, x));
      for (const MoralDag& dag : enumerate_moral_dags(g)) {
        const Eigen::VectorXd u = u_coords(dag, x);
        CHECK((1.0 - u.array()).prod() == Approx(Delta).epsilon(1e-12));
        CHECK((x_from_u(dag, u) - x).cwiseAbs().maxCoeff() < 1e-12);
        const Eigen::VectorXd w = w_coords(dag, y);
        CHECK((1.0 + w.array()).prod() == Approx(delta).epsilon(1e-12));
        CHECK((y_from_w(dag, w) - y).cwiseAbs().maxCoeff() < 1e-12);
      }
    }
  }
}

TEST_CASE("clique recursion, factorization and simplicial reduction") {
  Rng rng(13);
  for (int n = 2; n <= 5; ++n) {
    for (const UndirectedGraph& g : testing::all_graphs(n)) {
      if (!is_decomposable(g)) continue;
      const Eigen::VectorXd x = testing::uniform_vector(n, rng, 0.01, 0.2);
      CliquePolynomial<double> poly(g, x);
      const VertexSet v = g.all();
      // Clique recursion for every clique.
      for (VertexSet c = 1; c <= v; ++c) {
        if (!g.is_clique(c)) continue;
        double rhs = poly(v & ~c);
        for (int i : members(c)) rhs -= x[i] * poly(poly.anti_neighbors(i));
        CHECK(poly(v) == Approx(rhs).epsilon(1e-12));
      }
      // Disconnected factorization over components.
      double product = 1.0;
      for (VertexSet comp : component_sets(g)) product *= poly(comp);
      CHECK(poly(v) == Approx(product).epsilon(1e-12));
      // Simplicial reduction.
      for (int i0 : members(simplicial_vertices(g))) {
        Eigen::VectorXd reduced = x;
        for (int j : members(g.neighbors(i0))) reduced[j] = x[j] / (1.0 - x[i0]);
        const double tail = eval_Delta(g, v & ~singleton(i0), reduced);
        CHECK(poly(v) == Approx((1.0 - x[i0]) * tail).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("M_G membership") {
  const DecomposableGraph chain(testing::chain3());
  CHECK(in_M_G(chain, Eigen::Vector3d(0.3, 0.3, 0.3)));
  CHECK_FALSE(in_M_G(chain, Eigen::Vector3d(0.5, 0.3, 0.5)));
  CHECK(in_M_G(chain, Eigen::Vector3d(0.5, 0.2, 0.5)));
  CHECK_FALSE(in_M_G(chain, Eigen::Vector3d(1.0, 0.01, 0.01)));
  CHECK_FALSE(in_M_G(chain, Eigen::Vector3d(0.0, 0.1, 0.1)));
  CHECK_FALSE(in_M_G(testing::cycle4(), Eigen::Vector4d(0.1, 0.1, 0.1, 0.1)));

  // The u-recursion agrees with the exhaustive subset scan on random points.
  Rng rng(14);
  int inside = 0;
  for (const UndirectedGraph& g : {testing::chain3(), testing::star4(), testing::diamond(), testing::path4()}) {
    const DecomposableGraph dg(g);
    for (int k = 0; k < 2000; ++k) {
      const Eigen::VectorXd x = testing::uniform_vector(g.size(), rng, 0.0, 0.7);
      const bool fast = in_M_G(dg, x);
      CHECK(fast == in_M_G_exhaustive(g, x));
      inside += fast;
    }
  }
  CHECK(inside > 100);
}
