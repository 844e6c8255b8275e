// Apache License, Version 2.0, refer to LICENSE.txt

#ifndef GRAPHCOUNT_CLIQUE_POLY_HPP
#define GRAPHCOUNT_CLIQUE_POLY_HPP

#include <Eigen/Core>

#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "graphcount/graph.hpp"

namespace graphcount {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Evaluates the clique polynomial Delta_{G_A}(x_A) for arbitrary subsets A.
///
/// Uses the vertex-elimination recursion
///   Delta_A = Delta_{A \ {i}} - x_i * Delta_{nb_{G*}(i) & A},  i = lowest(A),
/// memoized on the subset bitmask. One evaluator per thread; it caches.
template <typename Scalar>
class CliquePolynomial {
 public:
  template <typename Derived>
  CliquePolynomial(const UndirectedGraph& g, const Eigen::MatrixBase<Derived>& x)
      : x_(x.template cast<Scalar>()) {
    if (x_.size() != g.size()) throw std::invalid_argument("parameter length does not match graph");
    anti_.reserve(g.size());
    for (int v = 0; v < g.size(); ++v) anti_.push_back(g.all() & ~g.neighbors(v) & ~singleton(v));
  }

  Scalar operator()(VertexSet a) {
    if (a == 0) return Scalar(1);
    if (auto it = memo_.find(a); it != memo_.end()) return it->second;
    const int i = lowest(a);
    Scalar value = (*this)(a & ~singleton(i)) - x_[i] * (*this)(anti_[i] & a);
    memo_.emplace(a, value);
    return value;
  }

  /// nb_{G*}(v).
  VertexSet anti_neighbors(int v) const { return anti_[v]; }
  const Vector<Scalar>& values() const { return x_; }

 private:
  std::vector<VertexSet> anti_;
  Vector<Scalar> x_;
  std::unordered_map<VertexSet, Scalar> memo_;
};

/// Delta_{G_A}(x_A); coordinates outside A are ignored.
template <typename Derived>
typename Derived::Scalar eval_Delta(const UndirectedGraph& g, VertexSet a,
                                    const Eigen::MatrixBase<Derived>& x) {
  CliquePolynomial<typename Derived::Scalar> poly(g, x);
  return poly(a);
}

/// delta_{G_A}(y_A) = Delta_{G_A}(-y_A).
template <typename Derived>
typename Derived::Scalar eval_delta(const UndirectedGraph& g, VertexSet a,
                                    const Eigen::MatrixBase<Derived>& y) {
  CliquePolynomial<typename Derived::Scalar> poly(g, -y);
  return poly(a);
}

/// u^G(x) by the recursion u_i = x_i / prod_{j in ch(i)} (1 - u_j), children
/// first. Returns empty if some u_i leaves the open unit interval.
template <typename Derived>
std::optional<Vector<typename Derived::Scalar>> try_u_coords(const MoralDag& dag,
                                                             const Eigen::MatrixBase<Derived>& x) {
  using Scalar = typename Derived::Scalar;
  if (x.size() != dag.size()) throw std::invalid_argument("parameter length does not match DAG");
  Vector<Scalar> u(x.size());
  const auto& topo = dag.topo_order();
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    const int i = *it;
    Scalar denom(1);
    for_each_member(dag.children(i), [&](int j) { denom *= Scalar(1) - u[j]; });
    u[i] = x[i] / denom;
    if (!(u[i] > Scalar(0) && u[i] < Scalar(1))) return std::nullopt;
  }
  return u;
}

/// Throws std::domain_error when x is outside M_G.
template <typename Derived>
Vector<typename Derived::Scalar> u_coords(const MoralDag& dag, const Eigen::MatrixBase<Derived>& x) {
  auto u = try_u_coords(dag, x);
  if (!u) throw std::domain_error("u-coordinates outside (0,1): x is not in M_G");
  return *u;
}

/// x_i = u_i * prod_{j in ch(i)} (1 - u_j).
template <typename Derived>
Vector<typename Derived::Scalar> x_from_u(const MoralDag& dag, const Eigen::MatrixBase<Derived>& u) {
  using Scalar = typename Derived::Scalar;
  if (u.size() != dag.size()) throw std::invalid_argument("coordinate length does not match DAG");
  Vector<Scalar> x(u.size());
  for (int i = 0; i < u.size(); ++i) {
    if (!(u[i] > Scalar(0) && u[i] < Scalar(1))) throw std::domain_error("u-coordinate outside (0,1)");
  }
  for (int i = 0; i < u.size(); ++i) {
    Scalar value = u[i];
    for_each_member(dag.children(i), [&](int j) { value *= Scalar(1) - u[j]; });
    x[i] = value;
  }
  return x;
}

/// w_i = y_i / prod_{j in ch(i)} (1 + w_j), children first.
template <typename Derived>
Vector<typename Derived::Scalar> w_coords(const MoralDag& dag, const Eigen::MatrixBase<Derived>& y) {
  using Scalar = typename Derived::Scalar;
  if (y.size() != dag.size()) throw std::invalid_argument("parameter length does not match DAG");
  if (!(y.array() > Scalar(0)).all()) throw std::domain_error("y must be strictly positive");
  Vector<Scalar> w(y.size());
  const auto& topo = dag.topo_order();
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    const int i = *it;
    Scalar denom(1);
    for_each_member(dag.children(i), [&](int j) { denom *= Scalar(1) + w[j]; });
    w[i] = y[i] / denom;
  }
  return w;
}

/// y_i = w_i * prod_{j in ch(i)} (1 + w_j).
template <typename Derived>
Vector<typename Derived::Scalar> y_from_w(const MoralDag& dag, const Eigen::MatrixBase<Derived>& w) {
  using Scalar = typename Derived::Scalar;
  if (w.size() != dag.size()) throw std::invalid_argument("coordinate length does not match DAG");
  if (!(w.array() > Scalar(0)).all()) throw std::domain_error("w must be strictly positive");
  Vector<Scalar> y(w.size());
  for (int i = 0; i < w.size(); ++i) {
    Scalar value = w[i];
    for_each_member(dag.children(i), [&](int j) { value *= Scalar(1) + w[j]; });
    y[i] = value;
  }
  return y;
}

/// Tolerance below which a u-coordinate is treated as sitting on the boundary.
inline constexpr double kBoundaryEps = 1e-13;

/// Membership x in M_G via the u-recursion on `dag` (any moral DAG of G).
bool in_M_G(const MoralDag& dag, const Eigen::Ref<const Eigen::VectorXd>& x);
bool in_M_G(const DecomposableGraph& g, const Eigen::Ref<const Eigen::VectorXd>& x);
/// Same test for a plain graph; false when g is not decomposable.
bool in_M_G(const UndirectedGraph& g, const Eigen::Ref<const Eigen::VectorXd>& x);
/// Reference check: Delta_A(x) > 0 for all 2^|V| subsets. |V| <= 20.
bool in_M_G_exhaustive(const UndirectedGraph& g, const Eigen::Ref<const Eigen::VectorXd>& x);

}  // namespace graphcount

#endif  // GRAPHCOUNT_CLIQUE_POLY_HPP
