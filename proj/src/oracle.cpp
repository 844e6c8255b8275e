// Apache License, Version 2.0, refer to LICENSE.txt

#include "graphcount/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace graphcount::oracle {

namespace {

using boost::multiprecision::cpp_int;

void count_rec(CountVector& n, int pos, int remaining, const std::function<void(const CountVector&)>& f) {
  if (pos == n.size()) {
    f(n);
    return;
  }
  for (int v = 0; v <= remaining; ++v) {
    n[pos] = v;
    count_rec(n, pos + 1, remaining - v, f);
  }
  n[pos] = 0;
}

cpp_int factorial(long k) {
  cpp_int out = 1;
  for (long j = 2; j <= k; ++j) out *= j;
  return out;
}

cpp_int rising(long a, long k) {
  cpp_int out = 1;
  for (long j = 0; j < k; ++j) out *= a + j;
  return out;
}

cpp_int falling(long a, long k) {
  cpp_int out = 1;
  for (long j = 0; j < k; ++j) out *= a - j;
  return out;
}

long total(const CountVector& n, VertexSet a) {
  long t = 0;
  for (int v : members(a)) t += n[v];
  return t;
}

// Places the fixed entries n_a on A and the free entries on the rest.
CountVector merge(VertexSet a, const CountVector& n_a, VertexSet rest, const CountVector& n_rest, int size) {
  CountVector n(size);
  int k = 0;
  for (int v : members(a)) n[v] = n_a[k++];
  k = 0;
  for (int v : members(rest)) n[v] = n_rest[k++];
  return n;
}

}  // namespace

void for_each_count(int dim, int max_total, const std::function<void(const CountVector&)>& f) {
  CountVector n = CountVector::Zero(dim);
  if (dim == 0) {
    f(n);
    return;
  }
  count_rec(n, 0, max_total, f);
}

void for_each_mult_support(const DecompStructure& s, int dim, int r,
                           const std::function<void(const CountVector&)>& f) {
  // Every vertex lies in some maximal clique, so the support sits in the box [0, r]^dim.
  CountVector n = CountVector::Zero(dim);
  while (true) {
    if (in_mult_support(s, n, r)) f(n);
    int pos = 0;
    while (pos < dim && n[pos] == r) n[pos++] = 0;
    if (pos == dim) return;
    ++n[pos];
  }
}

std::vector<int> trace_normal_form(const UndirectedGraph& g, const std::vector<int>& word) {
  std::vector<int> rest = word;
  std::vector<int> out;
  out.reserve(word.size());
  while (!rest.empty()) {
    // A letter can move to the front iff it commutes with every earlier letter.
    std::size_t pick = rest.size();
    for (std::size_t p = 0; p < rest.size(); ++p) {
      const int letter = rest[p];
      bool free = true;
      for (std::size_t q = 0; q < p && free; ++q) {
        const int other = rest[q];
        if (other == letter || g.has_edge(other, letter)) free = false;
      }
      if (free && (pick == rest.size() || letter < rest[pick])) pick = p;
    }
    out.push_back(rest[pick]);
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  return out;
}

std::uint64_t trace_class_count(const UndirectedGraph& g, const CountVector& n) {
  if (n.size() != g.size()) throw std::invalid_argument("count vector length does not match graph");
  if ((n.array() < 0).any()) throw std::invalid_argument("counts must be non-negative");
  if (n.sum() > 10) throw std::invalid_argument("trace enumeration requires |n| <= 10");
  std::vector<int> word;
  for (int i = 0; i < n.size(); ++i) word.insert(word.end(), static_cast<std::size_t>(n[i]), i);
  std::set<std::vector<int>> classes;
  do {
    classes.insert(trace_normal_form(g, word));
  } while (std::next_permutation(word.begin(), word.end()));
  return classes.size();
}

double brute_pmf_sum(const NmParams& p, int cutoff) {
  double sum = 0.0;
  for_each_count(p.graph().size(), cutoff, [&](const CountVector& n) { sum += std::exp(nm_log_pmf(p, n)); });
  return sum;
}

double brute_pmf_sum(const MultParams& p) {
  double sum = 0.0;
  for_each_mult_support(p.graph().structure(), p.graph().size(), p.r(),
                        [&](const CountVector& n) { sum += std::exp(mult_log_pmf(p, n)); });
  return sum;
}

double brute_marginal(const NmParams& p, VertexSet a, const CountVector& n_a, int cutoff) {
  const int size = p.graph().size();
  const VertexSet rest = p.graph().graph().all() & ~a;
  const int left = cutoff - n_a.sum();
  if (left < 0) return 0.0;
  double sum = 0.0;
  for_each_count(set_size(rest), left, [&](const CountVector& n_rest) {
    sum += std::exp(nm_log_pmf(p, merge(a, n_a, rest, n_rest, size)));
  });
  return sum;
}

double brute_marginal(const MultParams& p, VertexSet a, const CountVector& n_a) {
  const int size = p.graph().size();
  const VertexSet rest = p.graph().graph().all() & ~a;
  const DecompStructure& s = p.graph().structure();
  double sum = 0.0;
  for_each_count(set_size(rest), set_size(rest) * p.r(), [&](const CountVector& n_rest) {
    CountVector n = merge(a, n_a, rest, n_rest, size);
    if (in_mult_support(s, n, p.r())) sum += std::exp(mult_log_pmf(p, n));
  });
  return sum;
}

double series_truncation(const DecomposableGraph& g, const Eigen::VectorXd& x, double r, int degree) {
  if (degree < 0 || degree > 20) throw std::invalid_argument("series degree must lie in [0, 20]");
  double sum = 0.0;
  for_each_count(g.size(), degree, [&](const CountVector& n) {
    double term = std::exp(log_coeff_C(g.structure(), n, r));
    for (int i = 0; i < n.size(); ++i) term *= std::pow(x[i], n[i]);
    sum += term;
  });
  return sum;
}

Rational exact_C(const DecompStructure& s, const CountVector& n, long r) {
  Rational value = 1;
  for (VertexSet c : s.maximal_cliques) value *= rising(r, total(n, c));
  for (const Separator& sep : s.separators) {
    for (int k = 0; k < sep.multiplicity; ++k) value /= rising(r, total(n, sep.set));
  }
  for (int i = 0; i < n.size(); ++i) value /= factorial(n[i]);
  return value;
}

Rational exact_c(const DecompStructure& s, const CountVector& n, long r) {
  for (VertexSet c : s.maximal_cliques) {
    if (total(n, c) > r) return 0;
  }
  Rational value = 1;
  for (VertexSet c : s.maximal_cliques) value *= falling(r, total(n, c));
  for (const Separator& sep : s.separators) {
    for (int k = 0; k < sep.multiplicity; ++k) value /= falling(r, total(n, sep.set));
  }
  for (int i = 0; i < n.size(); ++i) value /= factorial(n[i]);
  return value;
}

Rational exact_K(const MoralDag& dag, const CountVector& alpha, long beta) {
  if ((alpha.array() < 1).any() || beta < 1) throw std::invalid_argument("integer hyperparameters must be >= 1");
  Rational value = 1;
  for (int i = 0; i < dag.size(); ++i) {
    const long pa = total(alpha, dag.parents(i));
    value *= Rational(factorial(pa + alpha[i] + beta - 1), factorial(pa + beta - 1) * factorial(alpha[i] - 1));
  }
  return value;
}

Rational exact_k(const MoralDag& dag, const CountVector& alpha, long beta) {
  if ((alpha.array() < 1).any()) throw std::invalid_argument("integer hyperparameters must be >= 1");
  Rational value = 1;
  for (int i = 0; i < dag.size(); ++i) {
    const long pa = total(alpha, dag.parents(i));
    const long rest = beta - pa - alpha[i];
    if (rest < 1) throw std::invalid_argument("k_G requires beta > |alpha_C| on every clique");
    value *= Rational(factorial(beta - pa - 1), factorial(rest - 1) * factorial(alpha[i] - 1));
  }
  return value;
}

}  // namespace graphcount::oracle
