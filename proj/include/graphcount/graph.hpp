// Apache License, Version 2.0, refer to LICENSE.txt

#ifndef GRAPHCOUNT_GRAPH_HPP
#define GRAPHCOUNT_GRAPH_HPP

#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace graphcount {

/// Subset of the vertex set as a bitmask over internal indices 0..|V|-1.
using VertexSet = std::uint32_t;

inline constexpr int kMaxVertices = 30;

inline constexpr VertexSet singleton(int v) { return VertexSet{1} << v; }
inline constexpr bool contains(VertexSet s, int v) { return (s >> v) & 1U; }
inline constexpr int set_size(VertexSet s) { return std::popcount(s); }
inline constexpr int lowest(VertexSet s) { return std::countr_zero(s); }
inline constexpr bool is_subset(VertexSet a, VertexSet b) { return (a & ~b) == 0; }

/// Vertex indices of `s` in increasing order.
std::vector<int> members(VertexSet s);

/// Calls f(v) for each member v of s in increasing order.
template <typename F>
inline void for_each_member(VertexSet s, F&& f) {
  for (; s != 0; s &= s - 1) f(lowest(s));
}

/// Finite simple undirected graph with labelled vertices.
///
/// Vertices are addressed by their position in the label table; the label
/// order is the "vertex order" used by every file format and by the
/// lowest-label tie-breaking rules.
class UndirectedGraph {
 public:
  UndirectedGraph() = default;
  explicit UndirectedGraph(std::vector<std::string> labels);

  /// Graph on vertices labelled "1".."n" with no edges.
  static UndirectedGraph with_vertices(int n);
  /// Graph on labels "1".."n" from 1-based edge pairs; handy for tests.
  static UndirectedGraph from_edges(int n, std::span<const std::pair<int, int>> edges_1based);

  int size() const { return static_cast<int>(labels_.size()); }
  VertexSet all() const { return size() == 32 ? ~VertexSet{0} : (VertexSet{1} << size()) - 1; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(int v) const { return labels_.at(v); }
  int index_of(const std::string& label) const;

  void add_edge(int a, int b);
  void remove_edge(int a, int b);
  void toggle_edge(int a, int b);
  bool has_edge(int a, int b) const { return contains(adj_.at(a), b); }

  /// nb_G(v).
  VertexSet neighbors(int v) const { return adj_.at(v); }
  int degree(int v) const { return set_size(adj_.at(v)); }
  int edge_count() const;
  std::vector<std::pair<int, int>> edges() const;

  bool is_clique(VertexSet s) const;
  UndirectedGraph complement() const;

  friend bool operator==(const UndirectedGraph&, const UndirectedGraph&) = default;

 private:
  std::vector<std::string> labels_;
  std::vector<VertexSet> adj_;
};

/// Graph induced on `subset`, keeping the relative vertex order.
UndirectedGraph induced_subgraph(const UndirectedGraph& g, VertexSet subset);
/// nb_G(label); throws std::invalid_argument on an unknown label.
VertexSet neighbors(const UndirectedGraph& g, const std::string& label);
VertexSet simplicial_vertices(const UndirectedGraph& g);
int connected_components(const UndirectedGraph& g);
/// Vertex sets of the connected components, ordered by lowest member.
std::vector<VertexSet> component_sets(const UndirectedGraph& g);

struct Separator {
  VertexSet set = 0;
  int multiplicity = 0;
  friend bool operator==(const Separator&, const Separator&) = default;
};

/// Perfect elimination order with the derived clique/separator decomposition.
struct DecompStructure {
  std::vector<int> peo;
  /// Maximal cliques in a perfect (running-intersection) ordering.
  std::vector<VertexSet> maximal_cliques;
  /// Distinct non-empty minimal separators with multiplicities nu_S.
  std::vector<Separator> separators;
  int components = 0;
};

/// Maximum cardinality search with lowest-index tie-breaking; returns the
/// reverse visit order, which is a perfect elimination order iff g is chordal.
std::vector<int> maximum_cardinality_order(const UndirectedGraph& g);
bool is_perfect_elimination_order(const UndirectedGraph& g, std::span<const int> order);

/// Decomposition derived from a given perfect elimination order.
/// Throws std::invalid_argument if `peo` is not one.
DecompStructure decompose(const UndirectedGraph& g, std::span<const int> peo);

/// Structure of g if it is decomposable (chordal), empty otherwise.
std::optional<DecompStructure> check_decomposable(const UndirectedGraph& g);
bool is_decomposable(const UndirectedGraph& g);

/// A moral DAG given by its parent sets.
class MoralDag {
 public:
  MoralDag() = default;
  MoralDag(std::vector<VertexSet> parents, std::vector<int> topo_order);

  int size() const { return static_cast<int>(parents_.size()); }
  VertexSet parents(int v) const { return parents_.at(v); }
  VertexSet children(int v) const { return children_.at(v); }
  VertexSet descendants(int v) const;
  VertexSet ancestors(int v) const;
  VertexSet non_descendants(int v) const;
  /// Every parent precedes its children.
  const std::vector<int>& topo_order() const { return topo_; }
  const std::vector<VertexSet>& parent_sets() const { return parents_; }

  friend bool operator==(const MoralDag& a, const MoralDag& b) { return a.parents_ == b.parents_; }

 private:
  std::vector<VertexSet> parents_;
  std::vector<VertexSet> children_;
  std::vector<int> topo_;
};

/// Orients v_j -> v_i for adjacent v_i, v_j with i < j in `peo`.
/// Throws std::invalid_argument if `peo` is not a perfect elimination order.
MoralDag build_moral_dag(const UndirectedGraph& g, std::span<const int> peo);

/// All moral DAGs with skeleton g, each once. Requires |V| <= 8.
std::vector<MoralDag> enumerate_moral_dags(const UndirectedGraph& g);

/// Every clique of the complement graph G*, including the empty set and singletons.
std::vector<VertexSet> complement_cliques(const UndirectedGraph& g);

/// Decomposable graph bundled with its decomposition and a canonical moral DAG
/// (the one built from the maximum cardinality search order).
class DecomposableGraph {
 public:
  /// Throws std::invalid_argument if g is not decomposable.
  explicit DecomposableGraph(UndirectedGraph g);

  const UndirectedGraph& graph() const { return graph_; }
  const DecompStructure& structure() const { return structure_; }
  const MoralDag& canonical_dag() const { return dag_; }
  int size() const { return graph_.size(); }

 private:
  UndirectedGraph graph_;
  DecompStructure structure_;
  MoralDag dag_;
};

}  // namespace graphcount

#endif  // GRAPHCOUNT_GRAPH_HPP
