// Apache License, Version 2.0, refer to LICENSE.txt

#include <doctest.h>

#include <cmath>

#include "graphcount/bayes.hpp"
#include "graphcount/oracle.hpp"
#include "graphcount/structure_select.hpp"
#include "support.hpp"

using namespace graphcount;
using doctest::Approx;
using testing::counts;

namespace {

Observations rows(std::initializer_list<std::initializer_list<int>> values) {
  Observations out(static_cast<int>(values.size()), static_cast<int>(values.begin()->size()));
  int i = 0;
  for (const auto& row : values) {
    int j = 0;
    for (int v : row) out(i, j++) = v;
    ++i;
  }
  return out;
}

}  // namespace

TEST_CASE("posterior updates") {
  const DecomposableGraph chain(testing::chain3());
  const DirParams prior(chain, Eigen::Vector3d(1.0, 0.5, 2.0), 1.5);

  const DirParams same = posterior_update(prior, Observations(0, 3), 2.0);
  CHECK(same.alpha() == prior.alpha());
  CHECK(same.beta() == prior.beta());

  const DirParams one = posterior_update(prior, rows({{1, 0, 3}}), 2.0);
  CHECK(one.alpha().isApprox(Eigen::Vector3d(2.0, 0.5, 5.0)));
  CHECK(one.beta() == Approx(3.5));

  const Observations two = rows({{1, 0, 3}, {0, 2, 1}});
  const DirParams both = posterior_update(prior, two, 2.0);
  const DirParams seq = posterior_update(one, rows({{0, 2, 1}}), 2.0);
  CHECK(both.alpha().isApprox(seq.alpha()));
  CHECK(both.beta() == Approx(seq.beta()));
  CHECK(both.log_K() == Approx(seq.log_K()));

  const IDirParams iprior(chain, Eigen::Vector3d(1, 1, 1), 3.0);
  const IDirParams ipost = posterior_update(iprior, rows({{1, 0, 1}, {0, 1, 0}}), 1);
  CHECK(ipost.alpha().isApprox(Eigen::Vector3d(2, 2, 2)));
  CHECK(ipost.beta() == Approx(5.0));
  CHECK_THROWS_AS(posterior_update(iprior, rows({{1, 1, 0}}), 1), std::domain_error);
  CHECK_THROWS_AS(posterior_update(prior, rows({{1, 1}}), 1.0), std::invalid_argument);
  CHECK_THROWS_AS(posterior_update(prior, rows({{1, -1, 0}}), 1.0), std::invalid_argument);
}

TEST_CASE("Dir_G negative multinomial predictive") {
  const DecomposableGraph chain(testing::chain3());
  const DirParams prior(chain, Eigen::Vector3d(1.0, 0.5, 2.0), 1.5);
  const double r = 2.0;
  CHECK(dirnm_log_pmf(prior, r, counts({0, 0, 0})) ==
        Approx(prior.log_K() - log_K_cliques(chain.structure(), prior.alpha(), prior.beta() + r)));

  // Complete graph: the classical Dirichlet negative multinomial.
  const DecomposableGraph k3(testing::complete(3));
  const Eigen::Vector3d a(1.0, 0.5, 2.0);
  const double beta = 1.5;
  const DirParams classical(k3, a, beta);
  const CountVector n = counts({2, 0, 1});
  double expected = std::lgamma(r + 3) - std::lgamma(r) - std::lgamma(3) - std::lgamma(1) - std::lgamma(2) +
                    std::lgamma(a.sum() + beta) + std::lgamma(beta + r) - std::lgamma(beta) -
                    std::lgamma(a.sum() + 3 + beta + r);
  for (int i = 0; i < 3; ++i) expected += std::lgamma(a[i] + n[i]) - std::lgamma(a[i]);
  CHECK(dirnm_log_pmf(classical, r, n) == Approx(expected));

  // Mixture consistency: E_X[nm_G(r, X)(n)] over X ~ Dir_G.
  Rng rng(41);
  const DirParams mix_prior(chain, Eigen::Vector3d(2.0, 1.5, 2.5), 6.0);
  const CountVector target = counts({1, 0, 1});
  constexpr int draws = 100000;
  double sum = 0.0, sum2 = 0.0;
  for (int k = 0; k < draws; ++k) {
    const Eigen::VectorXd x = dir_sample(mix_prior, chain.canonical_dag(), rng);
    const double v = std::exp(nm_log_pmf(NmParams(chain, r, x), target));
    sum += v;
    sum2 += v * v;
  }
  const double mean = sum / draws;
  const double se = std::sqrt((sum2 / draws - mean * mean) / draws);
  CHECK(std::abs(mean - std::exp(dirnm_log_pmf(mix_prior, r, target))) <= 3 * se);
}

TEST_CASE("IDir_G multinomial predictive") {
  const DecomposableGraph chain(testing::chain3());
  const IDirParams prior(chain, Eigen::Vector3d(1.0, 0.5, 2.0), 4.0);
  CHECK(idirmult_log_pmf(prior, 2, counts({0, 0, 0})) ==
        Approx(prior.log_k() - log_k_cliques(chain.structure(), prior.alpha(), 6.0)));
  CHECK_THROWS_AS(idirmult_log_pmf(prior, 1, counts({1, 1, 0})), std::domain_error);

  Rng rng(42);
  for (int size = 1; size <= 4; ++size) {
    for (const UndirectedGraph& g : testing::all_graphs(size)) {
      if (!is_decomposable(g)) continue;
      const DecomposableGraph dg(g);
      const Eigen::VectorXd alpha = testing::uniform_vector(size, rng, 0.3, 2.0);
      const IDirParams p(dg, alpha, max_clique_weight(dg.structure(), alpha) + 0.5);
      for (int r = 1; r <= 3; ++r) {
        double total = 0.0;
        oracle::for_each_mult_support(dg.structure(), size, r,
                                      [&](const CountVector& n) { total += std::exp(idirmult_log_pmf(p, r, n)); });
        CHECK(total == Approx(1.0).epsilon(1e-8));
      }
    }
  }

  const IDirParams mix_prior(chain, Eigen::Vector3d(1.5, 1.0, 2.0), 5.0);
  const CountVector target = counts({1, 1, 0});
  constexpr int draws = 100000;
  double sum = 0.0, sum2 = 0.0;
  for (int k = 0; k < draws; ++k) {
    const Eigen::VectorXd y = idir_sample(mix_prior, chain.canonical_dag(), rng);
    const double v = std::exp(mult_log_pmf(MultParams(chain, 2, y), target));
    sum += v;
    sum2 += v * v;
  }
  const double mean = sum / draws;
  const double se = std::sqrt((sum2 / draws - mean * mean) / draws);
  CHECK(std::abs(mean - std::exp(idirmult_log_pmf(mix_prior, 2, target))) <= 3 * se);
}

TEST_CASE("marginal likelihood") {
  const DecomposableGraph chain(testing::chain3());
  const DirParams prior(chain, Eigen::Vector3d(1.0, 0.5, 2.0), 1.5);
  const double r = 3.0;
  CHECK(log_marginal_likelihood(prior, r, Observations(0, 3)) == Approx(0.0));
  CHECK(log_marginal_likelihood(prior, r, rows({{2, 1, 0}})) == Approx(dirnm_log_pmf(prior, r, counts({2, 1, 0}))));

  // Chain rule: p(n1, n2) = p(n1) p(n2 | n1).
  const Observations data = rows({{2, 1, 0}, {0, 3, 1}});
  const DirParams updated = posterior_update(prior, rows({{2, 1, 0}}), r);
  CHECK(log_marginal_likelihood(prior, r, data) ==
        Approx(dirnm_log_pmf(prior, r, counts({2, 1, 0})) + dirnm_log_pmf(updated, r, counts({0, 3, 1})))
            .epsilon(1e-10));

  // Differences between graphs are log Bayes factors.
  const UndirectedGraph full = testing::complete(3);
  const DirParams prior_full(DecomposableGraph(full), prior.alpha(), prior.beta());
  CHECK(log_marginal_likelihood(prior_full, r, data) - log_marginal_likelihood(prior, r, data) ==
        Approx(log_bayes_factor(full, chain.graph(), data, prior.alpha(), prior.beta(), 3)).epsilon(1e-10));
}

TEST_CASE("predictive satisfies the global Markov property") {
  // Path 1-2-3-4: {1} and {3,4} are separated by {2}. Conditional independence
  // is the cross-ratio identity p(a,c,b) p(a',c,b') = p(a,c,b') p(a',c,b).
  const DecomposableGraph path(testing::path4());
  const DirParams prior(path, Eigen::Vector4d(1.0, 1.5, 0.7, 2.0), 1.2);
  const double r = 1.5;
  auto p = [&](int a, int c, int b3, int b4) { return dirnm_log_pmf(prior, r, counts({a, c, b3, b4})); };
  double worst = 0.0;
  for (int c = 0; c <= 3; ++c) {
    for (int a = 0; a <= 2; ++a) {
      for (int a2 = 0; a2 <= 2; ++a2) {
        oracle::for_each_count(2, 3, [&](const CountVector& b) {
          oracle::for_each_count(2, 3, [&](const CountVector& b2) {
            const double lhs = p(a, c, b[0], b[1]) + p(a2, c, b2[0], b2[1]);
            const double rhs = p(a, c, b2[0], b2[1]) + p(a2, c, b[0], b[1]);
            worst = std::max(worst, std::abs(lhs - rhs));
          });
        });
      }
    }
  }
  CHECK(worst < 1e-10);
  // Adjacent vertices 2 and 3 are not separated by {1, 4}.
  const double across = p(0, 0, 0, 0) + p(0, 2, 2, 0) - p(0, 0, 2, 0) - p(0, 2, 0, 0);
  CHECK(std::abs(across) > 1e-3);
}
