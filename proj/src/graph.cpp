// Apache License, Version 2.0, refer to LICENSE.txt

#include "graphcount/graph.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace graphcount {

std::vector<int> members(VertexSet s) {
  std::vector<int> out;
  out.reserve(set_size(s));
  while (s != 0) {
    out.push_back(lowest(s));
    s &= s - 1;
  }
  return out;
}

UndirectedGraph::UndirectedGraph(std::vector<std::string> labels)
    : labels_(std::move(labels)), adj_(labels_.size(), 0) {
  if (labels_.size() > static_cast<std::size_t>(kMaxVertices)) {
    throw std::invalid_argument("graph has more than 30 vertices");
  }
  std::set<std::string> seen(labels_.begin(), labels_.end());
  if (seen.size() != labels_.size()) {
    throw std::invalid_argument("duplicate vertex label");
  }
}

UndirectedGraph UndirectedGraph::with_vertices(int n) {
  std::vector<std::string> labels;
  for (int i = 1; i <= n; ++i) labels.push_back(std::to_string(i));
  return UndirectedGraph(std::move(labels));
}

UndirectedGraph UndirectedGraph::from_edges(int n, std::span<const std::pair<int, int>> edges_1based) {
  UndirectedGraph g = with_vertices(n);
  for (auto [a, b] : edges_1based) g.add_edge(a - 1, b - 1);
  return g;
}

int UndirectedGraph::index_of(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw std::invalid_argument("unknown vertex label '" + label + "'");
  return static_cast<int>(it - labels_.begin());
}

void UndirectedGraph::add_edge(int a, int b) {
  if (a == b) throw std::invalid_argument("self-loops are not allowed");
  if (a < 0 || b < 0 || a >= size() || b >= size()) throw std::out_of_range("vertex index");
  adj_[a] |= singleton(b);
  adj_[b] |= singleton(a);
}

void UndirectedGraph::remove_edge(int a, int b) {
  if (a < 0 || b < 0 || a >= size() || b >= size()) throw std::out_of_range("vertex index");
  adj_[a] &= ~singleton(b);
  adj_[b] &= ~singleton(a);
}

void UndirectedGraph::toggle_edge(int a, int b) {
  if (has_edge(a, b)) {
    remove_edge(a, b);
  } else {
    add_edge(a, b);
  }
}

int UndirectedGraph::edge_count() const {
  int total = 0;
  for (VertexSet s : adj_) total += set_size(s);
  return total / 2;
}

std::vector<std::pair<int, int>> UndirectedGraph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < size(); ++a) {
    for (int b : members(adj_[a])) {
      if (a < b) out.emplace_back(a, b);
    }
  }
  return out;
}

bool UndirectedGraph::is_clique(VertexSet s) const {
  for (int v : members(s)) {
    if (!is_subset(s & ~singleton(v), adj_[v])) return false;
  }
  return true;
}

UndirectedGraph UndirectedGraph::complement() const {
  UndirectedGraph c(labels_);
  for (int v = 0; v < size(); ++v) c.adj_[v] = all() & ~adj_[v] & ~singleton(v);
  return c;
}

UndirectedGraph induced_subgraph(const UndirectedGraph& g, VertexSet subset) {
  std::vector<int> keep = members(subset & g.all());
  std::vector<std::string> labels;
  for (int v : keep) labels.push_back(g.label(v));
  UndirectedGraph h(std::move(labels));
  for (std::size_t i = 0; i < keep.size(); ++i) {
    for (std::size_t j = i + 1; j < keep.size(); ++j) {
      if (g.has_edge(keep[i], keep[j])) h.add_edge(static_cast<int>(i), static_cast<int>(j));
    }
  }
  return h;
}

VertexSet neighbors(const UndirectedGraph& g, const std::string& label) {
  return g.neighbors(g.index_of(label));
}

VertexSet simplicial_vertices(const UndirectedGraph& g) {
  VertexSet out = 0;
  for (int v = 0; v < g.size(); ++v) {
    if (g.is_clique(g.neighbors(v))) out |= singleton(v);
  }
  return out;
}

std::vector<VertexSet> component_sets(const UndirectedGraph& g) {
  std::vector<VertexSet> out;
  VertexSet remaining = g.all();
  while (remaining != 0) {
    VertexSet comp = singleton(lowest(remaining));
    VertexSet frontier = comp;
    while (frontier != 0) {
      VertexSet next = 0;
      for (int v : members(frontier)) next |= g.neighbors(v);
      frontier = next & ~comp;
      comp |= next;
    }
    out.push_back(comp);
    remaining &= ~comp;
  }
  return out;
}

int connected_components(const UndirectedGraph& g) {
  return static_cast<int>(component_sets(g).size());
}

std::vector<int> maximum_cardinality_order(const UndirectedGraph& g) {
  const int n = g.size();
  std::vector<int> weight(n, 0);
  std::vector<int> visit;
  visit.reserve(n);
  VertexSet unvisited = g.all();
  while (unvisited != 0) {
    int best = -1;
    for (int v : members(unvisited)) {
      if (best < 0 || weight[v] > weight[best]) best = v;
    }
    visit.push_back(best);
    unvisited &= ~singleton(best);
    for (int u : members(g.neighbors(best) & unvisited)) ++weight[u];
  }
  std::reverse(visit.begin(), visit.end());
  return visit;
}

namespace {

bool is_permutation_of_vertices(const UndirectedGraph& g, std::span<const int> order) {
  if (static_cast<int>(order.size()) != g.size()) return false;
  VertexSet seen = 0;
  for (int v : order) {
    if (v < 0 || v >= g.size() || contains(seen, v)) return false;
    seen |= singleton(v);
  }
  return true;
}

// Neighbours of each order[i] that come after it in `order`.
std::vector<VertexSet> later_neighbors(const UndirectedGraph& g, std::span<const int> order) {
  std::vector<VertexSet> later(order.size());
  VertexSet after = 0;
  for (std::size_t i = order.size(); i-- > 0;) {
    later[i] = g.neighbors(order[i]) & after;
    after |= singleton(order[i]);
  }
  return later;
}

}  // namespace

bool is_perfect_elimination_order(const UndirectedGraph& g, std::span<const int> order) {
  if (!is_permutation_of_vertices(g, order)) return false;
  for (VertexSet s : later_neighbors(g, order)) {
    if (!g.is_clique(s)) return false;
  }
  return true;
}

DecompStructure decompose(const UndirectedGraph& g, std::span<const int> peo) {
  if (!is_perfect_elimination_order(g, peo)) {
    throw std::invalid_argument("not a perfect elimination order");
  }
  DecompStructure out;
  out.peo.assign(peo.begin(), peo.end());
  out.components = connected_components(g);

  // Candidate cliques {v} + later(v); the maximal ones are exactly the
  // maximal cliques of g. Listed with the last-eliminated first.
  std::vector<VertexSet> later = later_neighbors(g, peo);
  std::vector<VertexSet> candidates;
  for (std::size_t i = peo.size(); i-- > 0;) candidates.push_back(later[i] | singleton(peo[i]));
  std::vector<VertexSet> cliques;
  for (VertexSet c : candidates) {
    bool maximal = std::none_of(candidates.begin(), candidates.end(),
                                [c](VertexSet d) { return d != c && is_subset(c, d); });
    if (maximal) cliques.push_back(c);
  }

  // Prim's maximum-weight spanning forest of the clique intersection graph
  // is a junction tree; its insertion order has the running intersection
  // property.
  const std::size_t k = cliques.size();
  std::vector<bool> placed(k, false);
  VertexSet covered = 0;
  for (std::size_t step = 0; step < k; ++step) {
    std::size_t best = k;
    int best_weight = -1;
    for (std::size_t c = 0; c < k; ++c) {
      if (placed[c]) continue;
      int w = set_size(cliques[c] & covered);
      if (w > best_weight) {
        best = c;
        best_weight = w;
      }
    }
    placed[best] = true;
    VertexSet sep = cliques[best] & covered;
    out.maximal_cliques.push_back(cliques[best]);
    covered |= cliques[best];
    if (sep == 0) continue;
    auto it = std::find_if(out.separators.begin(), out.separators.end(),
                           [sep](const Separator& s) { return s.set == sep; });
    if (it == out.separators.end()) {
      out.separators.push_back({sep, 1});
    } else {
      ++it->multiplicity;
    }
  }
  return out;
}

std::optional<DecompStructure> check_decomposable(const UndirectedGraph& g) {
  std::vector<int> order = maximum_cardinality_order(g);
  if (!is_perfect_elimination_order(g, order)) return std::nullopt;
  return decompose(g, order);
}

bool is_decomposable(const UndirectedGraph& g) {
  return is_perfect_elimination_order(g, maximum_cardinality_order(g));
}

MoralDag::MoralDag(std::vector<VertexSet> parents, std::vector<int> topo_order)
    : parents_(std::move(parents)), children_(parents_.size(), 0), topo_(std::move(topo_order)) {
  for (int v = 0; v < size(); ++v) {
    for (int p : members(parents_[v])) children_.at(p) |= singleton(v);
  }
  VertexSet done = 0;
  if (static_cast<int>(topo_.size()) != size()) throw std::invalid_argument("topological order size");
  for (int v : topo_) {
    if (!is_subset(parents_.at(v), done)) throw std::invalid_argument("not a topological order");
    done |= singleton(v);
  }
}

VertexSet MoralDag::descendants(int v) const {
  VertexSet out = 0;
  VertexSet frontier = children_.at(v);
  while (frontier != 0) {
    out |= frontier;
    VertexSet next = 0;
    for (int c : members(frontier)) next |= children_[c];
    frontier = next & ~out;
  }
  return out;
}

VertexSet MoralDag::ancestors(int v) const {
  VertexSet out = 0;
  VertexSet frontier = parents_.at(v);
  while (frontier != 0) {
    out |= frontier;
    VertexSet next = 0;
    for (int p : members(frontier)) next |= parents_[p];
    frontier = next & ~out;
  }
  return out;
}

VertexSet MoralDag::non_descendants(int v) const {
  VertexSet all = size() == 0 ? 0 : (VertexSet{1} << size()) - 1;
  return all & ~(descendants(v) | singleton(v));
}

MoralDag build_moral_dag(const UndirectedGraph& g, std::span<const int> peo) {
  if (!is_perfect_elimination_order(g, peo)) {
    throw std::invalid_argument("not a perfect elimination order");
  }
  std::vector<VertexSet> later = later_neighbors(g, peo);
  std::vector<VertexSet> parents(g.size(), 0);
  for (std::size_t i = 0; i < peo.size(); ++i) parents[peo[i]] = later[i];
  std::vector<int> topo(peo.rbegin(), peo.rend());
  return MoralDag(std::move(parents), std::move(topo));
}

std::vector<MoralDag> enumerate_moral_dags(const UndirectedGraph& g) {
  if (g.size() > 8) throw std::invalid_argument("enumerate_moral_dags requires |V| <= 8");
  std::vector<int> perm(g.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::set<std::vector<VertexSet>> seen;
  std::vector<MoralDag> out;
  do {
    if (!is_perfect_elimination_order(g, perm)) continue;
    MoralDag dag = build_moral_dag(g, perm);
    if (seen.insert(dag.parent_sets()).second) out.push_back(std::move(dag));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

namespace {

void extend_cliques(const UndirectedGraph& h, VertexSet current, VertexSet candidates,
                    std::vector<VertexSet>& out) {
  out.push_back(current);
  while (candidates != 0) {
    int v = lowest(candidates);
    candidates &= ~singleton(v);
    extend_cliques(h, current | singleton(v), candidates & h.neighbors(v), out);
  }
}

}  // namespace

std::vector<VertexSet> complement_cliques(const UndirectedGraph& g) {
  std::vector<VertexSet> out;
  extend_cliques(g.complement(), 0, g.all(), out);
  return out;
}

DecomposableGraph::DecomposableGraph(UndirectedGraph g) : graph_(std::move(g)) {
  auto s = check_decomposable(graph_);
  if (!s) throw std::invalid_argument("graph is not decomposable");
  structure_ = std::move(*s);
  dag_ = build_moral_dag(graph_, structure_.peo);
}

}  // namespace graphcount
