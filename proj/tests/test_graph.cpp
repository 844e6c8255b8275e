// Apache License, Version 2.0, refer to LICENSE.txt

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "graphcount/graph.hpp"
#include "support.hpp"

using namespace graphcount;
using testing::graph;

namespace {

// Chordless cycle of length >= 4 by brute force over vertex subsets: the
// induced subgraph is a cycle iff it is connected and 2-regular.
bool has_chordless_cycle(const UndirectedGraph& g) {
  for (VertexSet s = 1; s <= g.all(); ++s) {
    if (set_size(s) < 4) continue;
    bool regular = true;
    for (int v : members(s)) regular = regular && set_size(g.neighbors(v) & s) == 2;
    if (regular && connected_components(induced_subgraph(g, s)) == 1) return true;
  }
  return false;
}

std::vector<Separator> sorted_separators(std::vector<Separator> s) {
  std::sort(s.begin(), s.end(), [](const Separator& a, const Separator& b) {
    return std::pair(a.set, a.multiplicity) < std::pair(b.set, b.multiplicity);
  });
  return s;
}

void check_structure(const UndirectedGraph& g, const DecompStructure& s) {
  CHECK(is_perfect_elimination_order(g, s.peo));
  int total = 0;
  for (VertexSet c : s.maximal_cliques) {
    CHECK(g.is_clique(c));
    total += set_size(c);
  }
  for (const Separator& sep : s.separators) {
    CHECK(sep.set != 0);
    total -= sep.multiplicity * set_size(sep.set);
  }
  CHECK(total == g.size());
  CHECK(s.components == connected_components(g));
  // Running intersection: each C_k meets the union of its predecessors inside one of them.
  VertexSet seen = 0;
  for (std::size_t k = 0; k < s.maximal_cliques.size(); ++k) {
    const VertexSet meet = s.maximal_cliques[k] & seen;
    if (k > 0) {
      bool inside = false;
      for (std::size_t j = 0; j < k; ++j) inside = inside || is_subset(meet, s.maximal_cliques[j]);
      CHECK(inside);
    }
    seen |= s.maximal_cliques[k];
  }
  CHECK(seen == g.all());
}

bool acyclic(const MoralDag& dag) {
  std::vector<int> pos(static_cast<std::size_t>(dag.size()));
  for (std::size_t k = 0; k < dag.topo_order().size(); ++k) pos[static_cast<std::size_t>(dag.topo_order()[k])] = static_cast<int>(k);
  for (int v = 0; v < dag.size(); ++v) {
    for (int p : members(dag.parents(v))) {
      if (pos[static_cast<std::size_t>(p)] >= pos[static_cast<std::size_t>(v)]) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("decomposability of small named graphs") {
  CHECK_FALSE(check_decomposable(testing::cycle4()).has_value());
  CHECK_FALSE(is_decomposable(graph(5, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 1}})));

  const auto k4 = check_decomposable(testing::complete(4));
  REQUIRE(k4.has_value());
  CHECK(k4->maximal_cliques == std::vector<VertexSet>{0b1111});
  CHECK(k4->separators.empty());

  const auto chain = check_decomposable(testing::chain3());
  REQUIRE(chain.has_value());
  CHECK(std::set<VertexSet>(chain->maximal_cliques.begin(), chain->maximal_cliques.end()) ==
        std::set<VertexSet>{0b011, 0b110});
  REQUIRE(chain->separators.size() == 1);
  CHECK(chain->separators[0] == Separator{0b010, 1});
  const std::vector<int> peo{0, 2, 1};
  CHECK(is_perfect_elimination_order(testing::chain3(), peo));
}

TEST_CASE("star separators carry multiplicity") {
  const auto s = check_decomposable(testing::star4());
  REQUIRE(s.has_value());
  CHECK(s->maximal_cliques.size() == 3);
  REQUIRE(s->separators.size() == 1);
  CHECK(s->separators[0] == Separator{0b0001, 2});
}

TEST_CASE("disconnected graphs keep empty separators out") {
  const UndirectedGraph g = graph(5, {{1, 2}, {3, 4}});
  const auto s = check_decomposable(g);
  REQUIRE(s.has_value());
  CHECK(s->components == 3);
  CHECK(s->separators.empty());
  CHECK(s->maximal_cliques.size() == 3);
  check_structure(g, *s);
}

TEST_CASE("MCS recognition agrees with brute-force chordality for |V| <= 6") {
  for (int n = 1; n <= 6; ++n) {
    int chordal = 0;
    for (const UndirectedGraph& g : testing::all_graphs(n)) {
      const auto s = check_decomposable(g);
      CHECK(s.has_value() == !has_chordless_cycle(g));
      if (s) {
        ++chordal;
        check_structure(g, *s);
      }
    }
    // Labelled chordal graph counts: 1, 2, 8, 61, 822, 18154.
    const int expected[] = {0, 1, 2, 8, 61, 822, 18154};
    CHECK(chordal == expected[n]);
  }
}

TEST_CASE("separators do not depend on the perfect elimination order") {
  for (int n = 1; n <= 5; ++n) {
    for (const UndirectedGraph& g : testing::all_graphs(n)) {
      const auto base = check_decomposable(g);
      if (!base) continue;
      const auto expected = sorted_separators(base->separators);
      std::vector<int> perm(static_cast<std::size_t>(n));
      std::iota(perm.begin(), perm.end(), 0);
      do {
        if (!is_perfect_elimination_order(g, perm)) continue;
        const DecompStructure s = decompose(g, perm);
        check_structure(g, s);
        CHECK(sorted_separators(s.separators) == expected);
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
  }
}

TEST_CASE("build_moral_dag orientation rule") {
  const UndirectedGraph g = testing::chain3();
  const std::vector<int> peo123{0, 1, 2};
  const MoralDag d2 = build_moral_dag(g, peo123);
  CHECK(d2.parents(0) == singleton(1));
  CHECK(d2.parents(1) == singleton(2));
  CHECK(d2.parents(2) == 0);

  const std::vector<int> peo132{0, 2, 1};
  const MoralDag d3 = build_moral_dag(g, peo132);
  CHECK(d3.parents(0) == singleton(1));
  CHECK(d3.parents(2) == singleton(1));
  CHECK(d3.parents(1) == 0);
  CHECK(d3.children(1) == 0b101);

  const std::vector<int> single{0};
  CHECK(build_moral_dag(UndirectedGraph::with_vertices(1), single).parents(0) == 0);

  const std::vector<int> bad{1, 0, 2};
  CHECK_THROWS_AS(build_moral_dag(g, bad), std::invalid_argument);
}

TEST_CASE("moral DAG enumeration") {
  CHECK(enumerate_moral_dags(testing::chain3()).size() == 3);
  CHECK(enumerate_moral_dags(graph(2, {{1, 2}})).size() == 2);
  CHECK(enumerate_moral_dags(testing::complete(3)).size() == 6);
  CHECK(enumerate_moral_dags(testing::star4()).size() == 4);
  CHECK_THROWS(enumerate_moral_dags(UndirectedGraph::with_vertices(9)));

  for (int n = 1; n <= 5; ++n) {
    for (const UndirectedGraph& g : testing::all_graphs(n)) {
      if (!is_decomposable(g)) continue;
      const auto dags = enumerate_moral_dags(g);
      std::set<std::vector<VertexSet>> distinct;
      for (const MoralDag& dag : dags) {
        distinct.insert(dag.parent_sets());
        CHECK(acyclic(dag));
        for (int v = 0; v < n; ++v) {
          CHECK(g.is_clique(dag.parents(v)));
          CHECK((dag.parents(v) | dag.children(v)) == g.neighbors(v));
          CHECK((dag.descendants(v) & dag.ancestors(v)) == 0);
          CHECK((dag.non_descendants(v) | dag.descendants(v) | singleton(v)) == g.all());
        }
      }
      CHECK(distinct.size() == dags.size());
    }
  }
}

TEST_CASE("complement cliques") {
  auto sorted = [](std::vector<VertexSet> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  CHECK(sorted(complement_cliques(testing::complete(3))) == std::vector<VertexSet>{0, 1, 2, 4});
  CHECK(complement_cliques(UndirectedGraph::with_vertices(4)).size() == 16);
  CHECK(sorted(complement_cliques(testing::chain3())) == std::vector<VertexSet>{0, 1, 2, 4, 5});
}

TEST_CASE("graph utilities") {
  const UndirectedGraph g = testing::chain3();
  const UndirectedGraph sub = induced_subgraph(g, 0b101);
  CHECK(sub.size() == 2);
  CHECK(sub.edge_count() == 0);
  CHECK(sub.labels() == std::vector<std::string>{"1", "3"});
  CHECK(simplicial_vertices(g) == 0b101);
  CHECK(neighbors(g, "2") == 0b101);
  CHECK_THROWS_AS(neighbors(g, "7"), std::invalid_argument);
  CHECK(connected_components(graph(3, {{1, 2}})) == 2);

  UndirectedGraph h = g;
  h.toggle_edge(0, 2);
  CHECK(h.has_edge(2, 0));
  h.toggle_edge(0, 2);
  CHECK(h == g);
  CHECK_THROWS(h.add_edge(1, 1));
  CHECK(g.complement().edges() == std::vector<std::pair<int, int>>{{0, 2}});
  CHECK_THROWS_AS(DecomposableGraph(testing::cycle4()), std::invalid_argument);
}
