// Apache License, Version 2.0, refer to LICENSE.txt

// graphcount: sampling, PMF evaluation, posterior fitting, graph structure
// selection and the verification suite from the command line.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "graphcount/bayes.hpp"
#include "graphcount/count_models.hpp"
#include "graphcount/io.hpp"
#include "graphcount/priors.hpp"
#include "graphcount/structure_select.hpp"
#include "graphcount/verify.hpp"

namespace gc = graphcount;
using nlohmann::json;

namespace {

enum ExitCode { kOk = 0, kCheckFailed = 1, kInvalid = 2, kIoError = 3, kBadR = 4 };

// Error carrying its exit code.
struct Failure {
  int code;
  std::string message;
};

struct Options {
  std::string model = "nm";
  std::string graph_path;
  std::string data_path;
  std::string output_path;
  std::string initial_graph_path;
  double r = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> alpha{1.0};
  double beta = 1.0;
  std::optional<std::uint64_t> seed;
  long n = 0;
  long steps = 0;
  std::optional<long> burn_in;
  int chains = 1;
  bool exact = false;
  std::vector<std::string> only;
  bool json = false;
  bool list = false;
};

std::uint64_t resolve_seed(const Options& o) {
  if (o.seed) return *o.seed;
  if (const char* env = std::getenv("GRAPHCOUNT_SEED")) {
    try {
      std::size_t used = 0;
      const unsigned long long value = std::stoull(env, &used);
      if (used == std::string(env).size()) return value;
    } catch (const std::exception&) {
    }
    throw Failure{kInvalid, "GRAPHCOUNT_SEED is not an unsigned integer"};
  }
  return 0;
}

void emit(const Options& o, const std::string& text) {
  if (o.output_path.empty()) {
    std::cout << text;
    return;
  }
  gc::io::write_file(o.output_path, text);
}

gc::DecomposableGraph load_decomposable(const std::string& path) {
  gc::UndirectedGraph g = gc::io::read_graph(path);
  if (!gc::is_decomposable(g)) throw Failure{kInvalid, "graph " + path + " is not decomposable"};
  return gc::DecomposableGraph(std::move(g));
}

Eigen::VectorXd to_vector(const std::vector<double>& v, int size, const std::string& what) {
  if (static_cast<int>(v.size()) != size) {
    throw Failure{kInvalid, what + " needs " + std::to_string(size) + " values (one per vertex)"};
  }
  return Eigen::Map<const Eigen::VectorXd>(v.data(), size);
}

Eigen::VectorXd alpha_vector(const Options& o, int size) {
  if (o.alpha.size() == 1) return Eigen::VectorXd::Constant(size, o.alpha.front());
  return to_vector(o.alpha, size, "--alpha");
}

int integer_r(double r, int code) {
  if (!(r >= 1.0) || r != std::floor(r) || r > 1e9) throw Failure{code, "r must be a positive integer"};
  return static_cast<int>(r);
}

void require_r(const Options& o, int code) {
  if (std::isnan(o.r)) throw Failure{kInvalid, "--r is required"};
  if (!(o.r > 0.0)) throw Failure{code, "r must be positive"};
}

gc::Observations load_data(const Options& o, const std::vector<std::string>& labels) {
  return gc::io::align_columns(gc::io::read_csv(o.data_path), labels);
}

std::string format_double(double v) {
  std::ostringstream out;
  out << std::setprecision(17) << v;
  return out.str();
}

int cmd_sample(const Options& o) {
  const gc::DecomposableGraph g = load_decomposable(o.graph_path);
  require_r(o, kInvalid);
  if (o.n < 0) throw Failure{kInvalid, "--n must be non-negative"};
  gc::Rng rng(resolve_seed(o));
  gc::Observations rows(o.n, g.size());
  if (o.model == "nm") {
    const gc::NmParams p(g, o.r, to_vector(o.x, g.size(), "--x"));
    for (long i = 0; i < o.n; ++i) rows.row(i) = gc::nm_sample(p, g.canonical_dag(), rng).transpose();
  } else {
    const gc::MultParams p(g, integer_r(o.r, kInvalid), to_vector(o.y, g.size(), "--y"));
    for (long i = 0; i < o.n; ++i) rows.row(i) = gc::mult_sample(p, g.canonical_dag(), rng).transpose();
  }
  std::ostringstream out;
  gc::io::write_csv(out, g.graph().labels(), rows);
  emit(o, out.str());
  return kOk;
}

int cmd_logpmf(const Options& o) {
  const gc::DecomposableGraph g = load_decomposable(o.graph_path);
  require_r(o, kInvalid);
  const gc::Observations data = load_data(o, g.graph().labels());
  std::ostringstream out;
  out << "log_pmf\n";
  if (o.model == "nm") {
    const gc::NmParams p(g, o.r, to_vector(o.x, g.size(), "--x"));
    for (Eigen::Index i = 0; i < data.rows(); ++i) {
      out << format_double(gc::nm_log_pmf(p, data.row(i).transpose())) << "\n";
    }
  } else {
    const gc::MultParams p(g, integer_r(o.r, kInvalid), to_vector(o.y, g.size(), "--y"));
    for (Eigen::Index i = 0; i < data.rows(); ++i) {
      const gc::CountVector n = data.row(i).transpose();
      const double v = gc::in_mult_support(g.structure(), n, p.r()) ? gc::mult_log_pmf(p, n)
                                                                      : -std::numeric_limits<double>::infinity();
      out << format_double(v) << "\n";
    }
  }
  emit(o, out.str());
  return kOk;
}

json vector_json(const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

int cmd_fit(const Options& o) {
  const gc::DecomposableGraph g = load_decomposable(o.graph_path);
  require_r(o, kInvalid);
  const gc::Observations data = load_data(o, g.graph().labels());
  const Eigen::VectorXd alpha = alpha_vector(o, g.size());
  json report;
  report["model"] = o.model;
  report["vertices"] = g.graph().labels();
  report["observations"] = data.rows();
  report["r"] = o.r;
  if (o.model == "nm") {
    const gc::DirParams prior(g, alpha, o.beta);
    const gc::DirParams post = gc::posterior_update(prior, data, o.r);
    report["prior"] = {{"family", "Dir_G"}, {"alpha", vector_json(prior.alpha())}, {"beta", prior.beta()}};
    report["posterior"] = {{"family", "Dir_G"}, {"alpha", vector_json(post.alpha())}, {"beta", post.beta()}};
    report["log_marginal_likelihood"] = gc::log_marginal_likelihood(prior, o.r, data);
  } else {
    const int r = integer_r(o.r, kInvalid);
    const gc::IDirParams prior(g, alpha, o.beta);
    const gc::IDirParams post = gc::posterior_update(prior, data, r);
    report["prior"] = {{"family", "IDir_G"}, {"alpha", vector_json(prior.alpha())}, {"beta", prior.beta()}};
    report["posterior"] = {{"family", "IDir_G"}, {"alpha", vector_json(post.alpha())}, {"beta", post.beta()}};
  }
  emit(o, report.dump(2) + "\n");
  return kOk;
}

json edges_json(const std::vector<std::string>& labels, const gc::GraphKey& key) {
  json edges = json::array();
  for (auto [a, b] : key) edges.push_back({labels[static_cast<std::size_t>(a)], labels[static_cast<std::size_t>(b)]});
  return edges;
}

int cmd_select(const Options& o) {
  if (std::isnan(o.r)) throw Failure{kInvalid, "--r is required"};
  const int r = integer_r(o.r, kBadR);
  const gc::io::CountTable table = gc::io::read_csv(o.data_path);
  const int size = static_cast<int>(table.labels.size());
  if (size > gc::kMaxVertices) throw Failure{kInvalid, "too many vertices"};
  const Eigen::VectorXd alpha = alpha_vector(o, size);
  if (!(alpha.array() > 0.0).all() || !(o.beta > 0.0)) throw Failure{kInvalid, "alpha and beta must be positive"};

  json report;
  json meta;
  meta["vertices"] = table.labels;
  meta["observations"] = table.rows.rows();
  meta["r"] = r;
  meta["alpha"] = vector_json(alpha);
  meta["beta"] = o.beta;
  json graphs = json::array();
  if (o.exact) {
    meta["method"] = "exact";
    const auto post = gc::exact_posterior(table.rows, alpha, o.beta, r, size);
    for (const auto& e : post) {
      graphs.push_back({{"edges", edges_json(table.labels, e.edges)},
                        {"probability", e.probability},
                        {"log_score", e.log_score}});
    }
  } else {
    if (o.steps <= 0) throw Failure{kInvalid, "--steps must be positive"};
    gc::ChainConfig config;
    config.steps = o.steps;
    config.burn_in = o.burn_in ? *o.burn_in : gc::default_burn_in(o.steps);
    config.seed = resolve_seed(o);
    config.alpha = alpha;
    config.beta = o.beta;
    config.r = r;
    if (!o.initial_graph_path.empty()) {
      gc::UndirectedGraph g0 = gc::io::read_graph(o.initial_graph_path);
      if (g0.labels() != table.labels) throw Failure{kInvalid, "initial graph labels must match the CSV header"};
      config.initial_graph = std::move(g0);
    }
    const gc::ChainResult result = gc::run_chains(table.rows, table.labels, config, o.chains);
    const double proposals = static_cast<double>(result.trace.steps_taken);
    meta["method"] = "mcmc";
    meta["seed"] = config.seed;
    meta["steps"] = config.steps;
    meta["burn_in"] = config.burn_in;
    meta["chains"] = result.chains;
    meta["acceptance_rate"] = proposals > 0 ? result.trace.accepted / proposals : 0.0;
    meta["nondecomposable_rate"] = proposals > 0 ? result.trace.proposed_nondecomposable / proposals : 0.0;
    for (const auto& e : result.table) {
      graphs.push_back({{"edges", edges_json(table.labels, e.edges)},
                        {"visit_fraction", e.probability},
                        {"log_score", e.log_score}});
    }
  }
  report["metadata"] = meta;
  report["graphs"] = graphs;
  emit(o, report.dump(2) + "\n");
  return kOk;
}

int cmd_verify(const Options& o) {
  if (o.list) {
    for (const auto& c : gc::verify::list_checks()) {
      std::cout << c.name << "\t[" << c.criterion << "]\t" << c.summary << "\n";
    }
    return kOk;
  }
  for (const auto& name : o.only) {
    bool known = false;
    for (const auto& c : gc::verify::list_checks()) known = known || c.name == name;
    if (!known) throw Failure{kInvalid, "unknown check: " + name};
  }
  std::vector<gc::verify::CheckResult> results;
  bool all_passed = true;
  const std::vector<std::string> names = [&] {
    if (!o.only.empty()) return o.only;
    std::vector<std::string> out;
    for (const auto& c : gc::verify::list_checks()) out.push_back(c.name);
    return out;
  }();
  for (const auto& name : names) {
    results.push_back(gc::verify::run_check(name));
    all_passed = all_passed && results.back().passed;
    if (!o.json) std::cout << gc::verify::format_line(results.back()) << std::flush;
  }
  if (o.json) emit(o, gc::verify::to_json(results) + "\n");
  return all_passed ? kOk : kCheckFailed;
}

void add_model_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--model", o.model, "nm (graph negative multinomial) or mult (graph multinomial)")
      ->check(CLI::IsMember({"nm", "mult"}));
  cmd->add_option("--graph", o.graph_path, "graph JSON file")->required();
  cmd->add_option("--r", o.r, "shape r (> 0 for nm, positive integer for mult)")->required();
  cmd->add_option("--x", o.x, "nm parameters, comma separated in vertex order")->delimiter(',');
  cmd->add_option("--y", o.y, "mult parameters, comma separated in vertex order")->delimiter(',');
}

void add_prior_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--alpha", o.alpha, "prior alpha: a scalar or one value per vertex (default 1)")->delimiter(',');
  cmd->add_option("--beta", o.beta, "prior beta (default 1)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graph negative multinomial / multinomial models on decomposable graphs"};
  app.require_subcommand(1);
  Options o;

  auto* sample = app.add_subcommand("sample", "draw count vectors and write them as CSV");
  add_model_options(sample, o);
  sample->add_option("--n", o.n, "number of draws")->required();
  sample->add_option("--seed", o.seed, "RNG seed (falls back to GRAPHCOUNT_SEED, then 0)");
  sample->add_option("-o,--output", o.output_path, "output file (default stdout)");

  auto* logpmf = app.add_subcommand("logpmf", "log PMF of each CSV row");
  add_model_options(logpmf, o);
  logpmf->add_option("--data", o.data_path, "CSV with a header of vertex labels")->required();
  logpmf->add_option("-o,--output", o.output_path, "output file (default stdout)");

  auto* fit = app.add_subcommand("fit", "conjugate posterior and marginal likelihood");
  fit->add_option("--model", o.model, "nm (Dir_G prior) or mult (IDir_G prior)")->check(CLI::IsMember({"nm", "mult"}));
  fit->add_option("--graph", o.graph_path, "graph JSON file")->required();
  fit->add_option("--data", o.data_path, "CSV with a header of vertex labels")->required();
  fit->add_option("--r", o.r, "shape r")->required();
  add_prior_options(fit, o);
  fit->add_option("-o,--output", o.output_path, "output file (default stdout)");

  auto* select = app.add_subcommand("select", "posterior over decomposable graphs (Metropolis-Hastings or exact)");
  select->add_option("--data", o.data_path, "CSV with a header of vertex labels")->required();
  select->add_option("--r", o.r, "known shape r (positive integer)")->required();
  add_prior_options(select, o);
  select->add_option("--steps", o.steps, "chain length per chain");
  select->add_option("--burn-in", o.burn_in, "discarded initial steps (default steps/10)");
  select->add_option("--seed", o.seed, "RNG seed (falls back to GRAPHCOUNT_SEED, then 0)");
  select->add_option("--chains", o.chains, "independent chains, merged by visit counts")->check(CLI::PositiveNumber);
  select->add_option("--initial-graph", o.initial_graph_path, "decomposable starting graph (default empty)");
  select->add_flag("--exact", o.exact, "enumerate all decomposable graphs (|V| <= 5)");
  select->add_option("-o,--output", o.output_path, "output file (default stdout)");

  auto* verify = app.add_subcommand("verify", "run the built-in verification suite");
  verify->add_option("--only", o.only, "run only the named checks")->delimiter(',');
  verify->add_flag("--json", o.json, "machine-readable results");
  verify->add_flag("--list", o.list, "list the available checks");
  verify->add_option("-o,--output", o.output_path, "output file for --json (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalid;
  }

  try {
    if (*sample) return cmd_sample(o);
    if (*logpmf) return cmd_logpmf(o);
    if (*fit) return cmd_fit(o);
    if (*select) return cmd_select(o);
    if (*verify) return cmd_verify(o);
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.code;
  } catch (const gc::io::FileError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  }
  return kInvalid;
}
