// Apache License, Version 2.0, refer to LICENSE.txt

#ifndef GRAPHCOUNT_VERIFY_HPP
#define GRAPHCOUNT_VERIFY_HPP

#include <Eigen/Core>

#include <functional>
#include <string>
#include <vector>

#include "graphcount/count_models.hpp"
#include "graphcount/graph.hpp"

// The built-in verification suite: identities, exact values and statistical
// checks on small graphs, each with a stated tolerance.
namespace graphcount::verify {

struct Measurement {
  std::string what;
  double value = 0.0;
  double tolerance = 0.0;
  /// true: pass iff value <= tolerance; false: pass iff value >= tolerance.
  bool upper = true;
  bool passed = false;
};

struct CheckResult {
  std::string name;
  int criterion = 0;
  bool passed = true;
  std::vector<Measurement> measurements;
  std::string error;
  double seconds = 0.0;
};

struct CheckInfo {
  std::string name;
  int criterion;
  std::string summary;
};

const std::vector<CheckInfo>& list_checks();
/// Throws std::invalid_argument for an unknown name.
CheckResult run_check(const std::string& name);
/// All checks when `only` is empty.
std::vector<CheckResult> run_checks(const std::vector<std::string>& only);

std::string format_line(const CheckResult& result);
std::string to_json(const std::vector<CheckResult>& results);

/// Every decomposable graph on vertices "1".."size" (all labelled edge sets).
std::vector<UndirectedGraph> all_decomposable_graphs(int size);
/// x = x_from_u(u) with u_i ~ U(lo, hi); always in M_G.
Eigen::VectorXd random_x(const MoralDag& dag, Rng& rng, double lo, double hi);
/// Asymptotic Kolmogorov-Smirnov p-value of `samples` against a continuous CDF.
double ks_pvalue(std::vector<double> samples, const std::function<double(double)>& cdf);

}  // namespace graphcount::verify

#endif  // GRAPHCOUNT_VERIFY_HPP
