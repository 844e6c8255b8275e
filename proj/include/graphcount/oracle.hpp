// Apache License, Version 2.0, refer to LICENSE.txt

#ifndef GRAPHCOUNT_ORACLE_HPP
#define GRAPHCOUNT_ORACLE_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <functional>
#include <vector>

#include "graphcount/count_models.hpp"
#include "graphcount/graph.hpp"

// Brute-force reference computations used by the tests and by `verify`.
namespace graphcount::oracle {

using Rational = boost::multiprecision::cpp_rational;

/// Calls f(n) for every n in N^dim with |n| <= max_total.
void for_each_count(int dim, int max_total, const std::function<void(const CountVector&)>& f);
/// Calls f(n) for every n in N_{G,r}.
void for_each_mult_support(const DecompStructure& s, int dim, int r,
                           const std::function<void(const CountVector&)>& f);

/// Lexicographically least word in the commutation class of `word`; letters
/// commute iff they are distinct and non-adjacent in g.
std::vector<int> trace_normal_form(const UndirectedGraph& g, const std::vector<int>& word);
/// Number of commutation classes of words with letter counts n. |n| <= 10.
std::uint64_t trace_class_count(const UndirectedGraph& g, const CountVector& n);

/// Sum of exp(log pmf) over |n| <= cutoff.
double brute_pmf_sum(const NmParams& p, int cutoff);
/// Sum over the whole finite support.
double brute_pmf_sum(const MultParams& p);
/// P(N_A = n_A) by summing the joint PMF over completions with |n| <= cutoff;
/// `n_a` is ordered by vertex index within A.
double brute_marginal(const NmParams& p, VertexSet a, const CountVector& n_a, int cutoff);
double brute_marginal(const MultParams& p, VertexSet a, const CountVector& n_a);

/// sum over |n| <= degree of C_G(n, r) x^n; tends to Delta_G(x)^{-r}.
double series_truncation(const DecomposableGraph& g, const Eigen::VectorXd& x, double r, int degree);

/// C_G(n, r) exactly, from Pochhammer products over cliques and separators.
Rational exact_C(const DecompStructure& s, const CountVector& n, long r);
/// c_G(n, r) exactly; zero outside N_{G,r}.
Rational exact_c(const DecompStructure& s, const CountVector& n, long r);
/// K_G(alpha, beta) exactly for integer hyperparameters, per-vertex form along `dag`.
Rational exact_K(const MoralDag& dag, const CountVector& alpha, long beta);
/// k_G(alpha, beta) exactly for integer hyperparameters (beta > max_C |alpha_C|), per-vertex form.
Rational exact_k(const MoralDag& dag, const CountVector& alpha, long beta);

}  // namespace graphcount::oracle

#endif  // GRAPHCOUNT_ORACLE_HPP
