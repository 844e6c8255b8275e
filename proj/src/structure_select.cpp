// Apache License, Version 2.0, refer to LICENSE.txt

#include "graphcount/structure_select.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <thread>

namespace graphcount {

GraphKey graph_key(const UndirectedGraph& g) { return g.edges(); }

UndirectedGraph graph_from_key(const std::vector<std::string>& labels, const GraphKey& key) {
  UndirectedGraph g(labels);
  for (auto [a, b] : key) g.add_edge(a, b);
  return g;
}

GraphScorer::GraphScorer(Observations data, Eigen::VectorXd alpha, double beta, int r)
    : data_(std::move(data)), alpha_(std::move(alpha)), beta_(beta), r_(r) {
  if (r_ < 1) throw std::invalid_argument("r must be a positive integer");
  if (!(beta_ > 0.0)) throw std::invalid_argument("beta must be positive");
  if (!(alpha_.array() > 0.0).all()) throw std::invalid_argument("alpha must be strictly positive");
  if (data_.rows() > 0 && data_.cols() != alpha_.size()) {
    throw std::invalid_argument("observation width does not match alpha");
  }
  if ((data_.array() < 0).any()) throw std::invalid_argument("counts must be non-negative");
  graph_free_ = 0.0;
  for (int i = 0; i < alpha_.size(); ++i) {
    const double total = data_.rows() > 0 ? data_.col(i).sum() : 0.0;
    graph_free_ += std::lgamma(alpha_[i] + total) - std::lgamma(alpha_[i]);
    for (Eigen::Index row = 0; row < data_.rows(); ++row) graph_free_ -= std::lgamma(data_(row, i) + 1.0);
  }
}

double GraphScorer::subset_term(VertexSet a) {
  if (a == 0) return 0.0;
  if (auto it = cache_.find(a); it != cache_.end()) return it->second;
  const std::vector<int> idx = members(a);
  const double k = static_cast<double>(data_.rows());
  double prior_weight = 0.0;
  for (int v : idx) prior_weight += alpha_[v];
  double count_total = 0.0;
  double value = 0.0;
  for (Eigen::Index row = 0; row < data_.rows(); ++row) {
    int n = 0;
    for (int v : idx) n += data_(row, v);
    count_total += n;
    value += std::lgamma(r_ + static_cast<double>(n)) - std::lgamma(static_cast<double>(r_));
  }
  const double post_beta = beta_ + k * r_;
  value += std::lgamma(prior_weight + beta_) - std::lgamma(prior_weight + count_total + post_beta);
  value -= std::lgamma(beta_) - std::lgamma(post_beta);
  cache_.emplace(a, value);
  return value;
}

double GraphScorer::log_score(const DecompStructure& s) {
  const double post_beta = beta_ + static_cast<double>(data_.rows()) * r_;
  const double empty = std::lgamma(beta_) - std::lgamma(post_beta);
  double total = graph_free_;
  long net = -s.components;
  for (VertexSet c : s.maximal_cliques) {
    total += subset_term(c);
    ++net;
  }
  for (const Separator& sep : s.separators) {
    total -= sep.multiplicity * subset_term(sep.set);
    net -= sep.multiplicity;
  }
  return total + static_cast<double>(net) * empty;
}

double GraphScorer::add_edge_log_factor(const UndirectedGraph& g, int a, int b) {
  const VertexSet s = g.neighbors(a) & g.neighbors(b);
  return subset_term(s | singleton(a) | singleton(b)) + subset_term(s) - subset_term(s | singleton(a)) -
         subset_term(s | singleton(b));
}

namespace {

void require_decomposable(const UndirectedGraph& g) {
  if (!is_decomposable(g)) throw std::invalid_argument("graph is not decomposable");
}

std::optional<std::pair<int, int>> single_difference(const UndirectedGraph& g1, const UndirectedGraph& g2) {
  std::optional<std::pair<int, int>> diff;
  for (int a = 0; a < g1.size(); ++a) {
    VertexSet d = (g1.neighbors(a) ^ g2.neighbors(a)) & ~((singleton(a) << 1) - 1);
    for (int b : members(d)) {
      if (diff) return std::nullopt;
      diff = std::pair{a, b};
    }
  }
  return diff;
}

}  // namespace

double log_bayes_factor_naive(const UndirectedGraph& g1, const UndirectedGraph& g2,
                              const Observations& data, const Eigen::VectorXd& alpha, double beta, int r) {
  const DirParams p1(DecomposableGraph(g1), alpha, beta);
  const DirParams p2(DecomposableGraph(g2), alpha, beta);
  return log_marginal_likelihood(p1, r, data) - log_marginal_likelihood(p2, r, data);
}

double log_bayes_factor(const UndirectedGraph& g1, const UndirectedGraph& g2, const Observations& data,
                        const Eigen::VectorXd& alpha, double beta, int r) {
  if (g1.size() != g2.size()) throw std::invalid_argument("graphs have different vertex sets");
  require_decomposable(g1);
  require_decomposable(g2);
  if (g1 == g2) return 0.0;
  auto diff = single_difference(g1, g2);
  if (!diff) return log_bayes_factor_naive(g1, g2, data, alpha, beta, r);
  GraphScorer scorer(data, alpha, beta, r);
  const auto [a, b] = *diff;
  return g1.has_edge(a, b) ? scorer.add_edge_log_factor(g2, a, b) : -scorer.add_edge_log_factor(g1, a, b);
}

long default_burn_in(long steps) { return steps / 10; }

std::pair<int, int> propose_pair(int size, Rng& rng) {
  if (size < 2) throw std::invalid_argument("need at least two vertices to propose an edge toggle");
  const long pairs = static_cast<long>(size) * (size - 1) / 2;
  long index = std::uniform_int_distribution<long>(0, pairs - 1)(rng);
  for (int a = 0;; ++a) {
    const long row = size - 1 - a;
    if (index < row) return {a, a + 1 + static_cast<int>(index)};
    index -= row;
  }
}

UndirectedGraph propose(const UndirectedGraph& g, Rng& rng) {
  auto [a, b] = propose_pair(g.size(), rng);
  UndirectedGraph next = g;
  next.toggle_edge(a, b);
  return next;
}

namespace {

std::optional<double> toggle_log_factor(GraphScorer& scorer, const UndirectedGraph& g, int a, int b) {
  UndirectedGraph next = g;
  next.toggle_edge(a, b);
  if (!is_decomposable(next)) return std::nullopt;
  return g.has_edge(a, b) ? -scorer.add_edge_log_factor(next, a, b) : scorer.add_edge_log_factor(g, a, b);
}

}  // namespace

double acceptance_probability(GraphScorer& scorer, const UndirectedGraph& g, int a, int b) {
  auto log_factor = toggle_log_factor(scorer, g, a, b);
  if (!log_factor) return 0.0;
  return std::min(1.0, std::exp(*log_factor));
}

void mh_step(ChainTrace& state, GraphScorer& scorer, const ChainConfig& config, Rng& rng) {
  if (state.current.size() >= 2) {
    auto [a, b] = propose_pair(state.current.size(), rng);
    auto log_factor = toggle_log_factor(scorer, state.current, a, b);
    if (!log_factor) {
      ++state.proposed_nondecomposable;
    } else {
      bool accept = *log_factor >= 0.0;
      if (!accept) accept = std::log(std::uniform_real_distribution<double>(0.0, 1.0)(rng)) < *log_factor;
      if (accept) {
        state.current.toggle_edge(a, b);
        ++state.accepted;
      }
    }
  }
  ++state.steps_taken;
  if (state.steps_taken > config.burn_in) ++state.visit_counts[graph_key(state.current)];
}

namespace {

void validate(const Observations& data, const std::vector<std::string>& labels, const ChainConfig& config,
              int chains) {
  if (config.steps <= 0) throw std::invalid_argument("steps must be positive");
  if (config.burn_in < 0 || config.burn_in >= config.steps) {
    throw std::invalid_argument("burn-in must lie in [0, steps)");
  }
  if (chains < 1) throw std::invalid_argument("need at least one chain");
  if (config.alpha.size() != static_cast<Eigen::Index>(labels.size())) {
    throw std::invalid_argument("alpha length does not match the vertex count");
  }
  if (data.rows() > 0 && data.cols() != static_cast<Eigen::Index>(labels.size())) {
    throw std::invalid_argument("observation width does not match the vertex count");
  }
  if (config.initial_graph) {
    if (config.initial_graph->labels() != labels) throw std::invalid_argument("initial graph labels differ");
    require_decomposable(*config.initial_graph);
  }
}

ChainTrace run_one(const Observations& data, const std::vector<std::string>& labels, const ChainConfig& config,
                   int chain_index) {
  std::seed_seq seq{static_cast<std::uint32_t>(config.seed), static_cast<std::uint32_t>(config.seed >> 32),
                    static_cast<std::uint32_t>(chain_index)};
  Rng rng(seq);
  GraphScorer scorer(data, config.alpha, config.beta, config.r);
  ChainTrace trace;
  trace.current = config.initial_graph ? *config.initial_graph : UndirectedGraph(labels);
  for (long step = 0; step < config.steps; ++step) mh_step(trace, scorer, config, rng);
  return trace;
}

}  // namespace

ChainResult run_chains(const Observations& data, const std::vector<std::string>& labels,
                       const ChainConfig& config, int chains) {
  validate(data, labels, config, chains);
  std::vector<ChainTrace> traces(static_cast<std::size_t>(chains));
  std::vector<std::thread> workers;
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(chains));
  for (int c = 0; c < chains; ++c) {
    workers.emplace_back([&, c] {
      try {
        traces[static_cast<std::size_t>(c)] = run_one(data, labels, config, c);
      } catch (...) {
        errors[static_cast<std::size_t>(c)] = std::current_exception();
      }
    });
  }
  for (auto& w : workers) w.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  ChainResult result;
  result.chains = chains;
  result.trace = std::move(traces.front());
  for (std::size_t c = 1; c < traces.size(); ++c) {
    for (const auto& [key, count] : traces[c].visit_counts) result.trace.visit_counts[key] += count;
    result.trace.steps_taken += traces[c].steps_taken;
    result.trace.accepted += traces[c].accepted;
    result.trace.proposed_nondecomposable += traces[c].proposed_nondecomposable;
  }

  GraphScorer scorer(data, config.alpha, config.beta, config.r);
  long total = 0;
  for (const auto& [key, count] : result.trace.visit_counts) total += count;
  for (const auto& [key, count] : result.trace.visit_counts) {
    const UndirectedGraph g = graph_from_key(labels, key);
    const double score = scorer.log_score(*check_decomposable(g));
    result.table.push_back({key, static_cast<double>(count) / static_cast<double>(total), score});
  }
  std::stable_sort(result.table.begin(), result.table.end(),
                   [](const PosteriorEntry& a, const PosteriorEntry& b) { return a.probability > b.probability; });
  return result;
}

std::vector<PosteriorEntry> exact_posterior(const Observations& data, const Eigen::VectorXd& alpha,
                                            double beta, int r, int size) {
  if (size < 1 || size > 5) throw std::invalid_argument("exact posterior requires 1 <= |V| <= 5");
  if (alpha.size() != size) throw std::invalid_argument("alpha length does not match the vertex count");
  GraphScorer scorer(data, alpha, beta, r);
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < size; ++a) {
    for (int b = a + 1; b < size; ++b) pairs.emplace_back(a, b);
  }
  const UndirectedGraph empty = UndirectedGraph::with_vertices(size);
  std::vector<PosteriorEntry> table;
  double best = -std::numeric_limits<double>::infinity();
  for (std::uint32_t mask = 0; mask < (1U << pairs.size()); ++mask) {
    UndirectedGraph g = empty;
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      if ((mask >> p) & 1U) g.add_edge(pairs[p].first, pairs[p].second);
    }
    auto s = check_decomposable(g);
    if (!s) continue;
    const double score = scorer.log_score(*s);
    best = std::max(best, score);
    table.push_back({graph_key(g), 0.0, score});
  }
  double norm = 0.0;
  for (const auto& e : table) norm += std::exp(e.log_score - best);
  for (auto& e : table) e.probability = std::exp(e.log_score - best) / norm;
  std::stable_sort(table.begin(), table.end(),
                   [](const PosteriorEntry& a, const PosteriorEntry& b) { return a.probability > b.probability; });
  return table;
}

double total_variation(const std::vector<PosteriorEntry>& a, const std::vector<PosteriorEntry>& b) {
  std::map<GraphKey, double> diff;
  for (const auto& e : a) diff[e.edges] += e.probability;
  for (const auto& e : b) diff[e.edges] -= e.probability;
  double total = 0.0;
  for (const auto& [key, d] : diff) total += std::abs(d);
  return 0.5 * total;
}

}  // namespace graphcount
