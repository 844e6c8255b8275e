// Apache License, Version 2.0, refer to LICENSE.txt

#ifndef GRAPHCOUNT_TESTS_SUPPORT_HPP
#define GRAPHCOUNT_TESTS_SUPPORT_HPP

#include <Eigen/Core>

#include <random>
#include <utility>
#include <vector>

#include "graphcount/count_models.hpp"
#include "graphcount/graph.hpp"

namespace testing {

using graphcount::UndirectedGraph;

inline UndirectedGraph graph(int n, std::vector<std::pair<int, int>> edges) {
  return UndirectedGraph::from_edges(n, edges);
}

inline UndirectedGraph chain3() { return graph(3, {{1, 2}, {2, 3}}); }
inline UndirectedGraph path4() { return graph(4, {{1, 2}, {2, 3}, {3, 4}}); }
inline UndirectedGraph star4() { return graph(4, {{1, 2}, {1, 3}, {1, 4}}); }
inline UndirectedGraph cycle4() { return graph(4, {{1, 2}, {2, 3}, {3, 4}, {4, 1}}); }
inline UndirectedGraph diamond() { return graph(4, {{1, 2}, {1, 3}, {2, 3}, {2, 4}, {3, 4}}); }
inline UndirectedGraph complete(int n) {
  std::vector<std::pair<int, int>> e;
  for (int a = 1; a <= n; ++a) {
    for (int b = a + 1; b <= n; ++b) e.emplace_back(a, b);
  }
  return graph(n, e);
}

/// Every labelled graph on n vertices, indexed by the edge-subset bitmask.
inline std::vector<UndirectedGraph> all_graphs(int n) {
  std::vector<std::pair<int, int>> pairs;
  for (int a = 1; a <= n; ++a) {
    for (int b = a + 1; b <= n; ++b) pairs.emplace_back(a, b);
  }
  std::vector<UndirectedGraph> out;
  for (unsigned mask = 0; mask < (1U << pairs.size()); ++mask) {
    std::vector<std::pair<int, int>> e;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      if ((mask >> k) & 1U) e.push_back(pairs[k]);
    }
    out.push_back(graph(n, e));
  }
  return out;
}

inline Eigen::VectorXd uniform_vector(int n, graphcount::Rng& rng, double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = d(rng);
  return v;
}

inline graphcount::CountVector counts(std::initializer_list<int> values) {
  graphcount::CountVector n(static_cast<int>(values.size()));
  int k = 0;
  for (int v : values) n[k++] = v;
  return n;
}

}  // namespace testing

#endif  // GRAPHCOUNT_TESTS_SUPPORT_HPP
