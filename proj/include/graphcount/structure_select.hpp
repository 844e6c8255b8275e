// Apache License, Version 2.0, refer to LICENSE.txt

#ifndef GRAPHCOUNT_STRUCTURE_SELECT_HPP
#define GRAPHCOUNT_STRUCTURE_SELECT_HPP

#include <Eigen/Core>

#include <cstdint>
#include <map>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "graphcount/bayes.hpp"
#include "graphcount/graph.hpp"

namespace graphcount {

/// Sorted edge list (pairs (a, b) with a < b); identical edge sets give equal keys.
using GraphKey = std::vector<std::pair<int, int>>;

GraphKey graph_key(const UndirectedGraph& g);
UndirectedGraph graph_from_key(const std::vector<std::string>& labels, const GraphKey& key);

/// Log marginal likelihood of decomposable graphs under the Dir_G / nm_G model.
///
/// The score splits as sum_C h(C) - sum_S nu_S h(S) plus graph-free terms,
/// where h(A) only depends on the data restricted to A. h is cached per
/// vertex subset, so neighbouring graphs share almost all of their work.
/// Not thread-safe; use one scorer per chain.
class GraphScorer {
 public:
  GraphScorer(Observations data, Eigen::VectorXd alpha, double beta, int r);

  int size() const { return static_cast<int>(alpha_.size()); }
  const Observations& data() const { return data_; }

  /// h(A) - h(empty set).
  double subset_term(VertexSet a);
  /// Full log marginal likelihood; equals log_marginal_likelihood().
  double log_score(const DecompStructure& s);
  /// log B_{G + ab, G} for decomposable G without edge {a, b} such that
  /// G + ab is decomposable as well.
  double add_edge_log_factor(const UndirectedGraph& g, int a, int b);

 private:
  Observations data_;
  Eigen::VectorXd alpha_;
  double beta_;
  int r_;
  double graph_free_;
  std::unordered_map<VertexSet, double> cache_;
};

/// log B_{g1,g2} by the naive difference of two marginal likelihoods.
/// Throws std::invalid_argument if either graph is not decomposable.
double log_bayes_factor_naive(const UndirectedGraph& g1, const UndirectedGraph& g2,
                              const Observations& data, const Eigen::VectorXd& alpha, double beta, int r);
/// log B_{g1,g2}; uses the one-edge shortcut when the graphs differ by a single edge.
double log_bayes_factor(const UndirectedGraph& g1, const UndirectedGraph& g2, const Observations& data,
                        const Eigen::VectorXd& alpha, double beta, int r);

struct ChainConfig {
  long steps = 0;
  long burn_in = 0;
  std::uint64_t seed = 0;
  Eigen::VectorXd alpha;
  double beta = 1.0;
  int r = 1;
  /// Empty graph when absent.
  std::optional<UndirectedGraph> initial_graph;
};

/// steps / 10.
long default_burn_in(long steps);

struct ChainTrace {
  std::map<GraphKey, long> visit_counts;
  long steps_taken = 0;
  long accepted = 0;
  long proposed_nondecomposable = 0;
  UndirectedGraph current;
};

/// Uniform vertex pair (a < b) among the C(|V|,2) candidates.
std::pair<int, int> propose_pair(int size, Rng& rng);
/// Current graph with one uniformly chosen pair toggled.
UndirectedGraph propose(const UndirectedGraph& g, Rng& rng);

/// min(1, B_{G', G}) for the toggle of {a, b}; 0 if G' is not decomposable.
double acceptance_probability(GraphScorer& scorer, const UndirectedGraph& g, int a, int b);

/// One Metropolis-Hastings step. The resulting state is counted once the
/// number of completed steps exceeds the burn-in.
void mh_step(ChainTrace& state, GraphScorer& scorer, const ChainConfig& config, Rng& rng);

struct PosteriorEntry {
  GraphKey edges;
  double probability = 0.0;
  double log_score = 0.0;
};

struct ChainResult {
  ChainTrace trace;
  /// Visit fractions, descending.
  std::vector<PosteriorEntry> table;
  int chains = 1;
};

/// Runs `chains` independent chains (seeded from (seed, chain index), run in
/// parallel) and merges their visit counts. Throws std::invalid_argument on
/// invalid configuration or data.
ChainResult run_chains(const Observations& data, const std::vector<std::string>& labels,
                       const ChainConfig& config, int chains = 1);

/// Exact posterior over all decomposable graphs on |V| <= 5 vertices with a
/// uniform graph prior, sorted by descending probability.
std::vector<PosteriorEntry> exact_posterior(const Observations& data, const Eigen::VectorXd& alpha,
                                            double beta, int r, int size);

/// Total variation distance between two posterior tables (missing keys count as 0).
double total_variation(const std::vector<PosteriorEntry>& a, const std::vector<PosteriorEntry>& b);

}  // namespace graphcount

#endif  // GRAPHCOUNT_STRUCTURE_SELECT_HPP
