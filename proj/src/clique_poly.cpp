// Apache License, Version 2.0, refer to LICENSE.txt

#include "graphcount/clique_poly.hpp"

namespace graphcount {

bool in_M_G(const MoralDag& dag, const Eigen::Ref<const Eigen::VectorXd>& x) {
  if (x.size() != dag.size()) return false;
  if (!(x.array() > 0.0).all()) return false;
  auto u = try_u_coords(dag, x);
  if (!u) return false;
  return (u->array() > kBoundaryEps).all() && (u->array() < 1.0 - kBoundaryEps).all();
}

bool in_M_G(const DecomposableGraph& g, const Eigen::Ref<const Eigen::VectorXd>& x) {
  return in_M_G(g.canonical_dag(), x);
}

bool in_M_G(const UndirectedGraph& g, const Eigen::Ref<const Eigen::VectorXd>& x) {
  std::vector<int> order = maximum_cardinality_order(g);
  if (!is_perfect_elimination_order(g, order)) return false;
  return in_M_G(build_moral_dag(g, order), x);
}

bool in_M_G_exhaustive(const UndirectedGraph& g, const Eigen::Ref<const Eigen::VectorXd>& x) {
  if (g.size() > 20) throw std::invalid_argument("exhaustive M_G scan requires |V| <= 20");
  if (x.size() != g.size() || !(x.array() > 0.0).all()) return false;
  CliquePolynomial<double> poly(g, x);
  for (VertexSet a = 1; a <= g.all(); ++a) {
    if (!(poly(a) > 0.0)) return false;
    if (a == g.all()) break;
  }
  return true;
}

}  // namespace graphcount
