// Command-line front end: graph generation, induced sampling, degree
// estimation, Monte Carlo risk comparison, table reproduction and the
// executable proposition checks.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "degest/config.hpp"
#include "degest/csv.hpp"
#include "degest/estimators.hpp"
#include "degest/experiments.hpp"
#include "degest/graph.hpp"
#include "degest/prior.hpp"
#include "degest/risk.hpp"
#include "degest/rng.hpp"
#include "degest/sampler.hpp"
#include "degest/types.hpp"

namespace {

using namespace degest;

std::ofstream open_output(const std::string& path) {
  if (path.empty()) throw ConfigError("--output is required");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file: " + path);
  return out;
}

// ---------------------------------------------------------------------------
// sample file format: CSV records  meta,p,<p> / meta,parent_n,<N> /
// node,<index>,<parent_id> / edge,<i>,<j>
// ---------------------------------------------------------------------------

void save_sample_csv(const SampleResult& s, int parent_n, std::ostream& out) {
  out << "record,a,b\n";
  out << "meta,p," << fmt_num(s.p) << "\n";
  out << "meta,parent_n," << parent_n << "\n";
  out << "meta,n," << s.n() << "\n";
  for (int i = 0; i < s.n(); ++i)
    out << "node," << i << "," << s.parent_ids[static_cast<std::size_t>(i)] << "\n";
  for (int i = 0; i < s.n(); ++i)
    for (int j : s.subgraph.neighbors(i))
      if (j > i) out << "edge," << i << "," << j << "\n";
}

struct LoadedSample {
  SampleResult sample;
  int parent_n = 0;
};

LoadedSample load_sample_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open sample file: " + path);
  LoadedSample loaded;
  std::vector<int> parents;
  std::vector<std::pair<int, int>> edges;
  double p = -1.0;
  int n = -1;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line == "record,a,b") continue;
    std::istringstream row(line);
    std::string rec, a, b;
    if (!std::getline(row, rec, ',') || !std::getline(row, a, ',') || !std::getline(row, b))
      throw ConfigError("sample file line " + std::to_string(line_no) + ": malformed row");
    try {
      if (rec == "meta") {
        if (a == "p") p = std::stod(b);
        else if (a == "parent_n") loaded.parent_n = std::stoi(b);
        else if (a == "n") n = std::stoi(b);
        else throw ConfigError("sample file line " + std::to_string(line_no) + ": unknown meta " + a);
      } else if (rec == "node") {
        const int idx = std::stoi(a);
        if (idx != static_cast<int>(parents.size()))
          throw ConfigError("sample file line " + std::to_string(line_no) + ": node rows out of order");
        parents.push_back(std::stoi(b));
      } else if (rec == "edge") {
        edges.emplace_back(std::stoi(a), std::stoi(b));
      } else {
        throw ConfigError("sample file line " + std::to_string(line_no) + ": unknown record " + rec);
      }
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception&) {
      throw ConfigError("sample file line " + std::to_string(line_no) + ": malformed value");
    }
  }
  if (p < 0 || n < 0 || static_cast<int>(parents.size()) != n)
    throw ConfigError("sample file: incomplete metadata");
  loaded.sample.p = p;
  loaded.sample.parent_ids = std::move(parents);
  loaded.sample.subgraph = Graph::from_edges(n, edges);
  return loaded;
}

// ---------------------------------------------------------------------------
// shared model/graph plumbing
// ---------------------------------------------------------------------------

struct GraphSource {
  Graph graph;
  std::string graph_id;
  std::string model;
  double pe_or_s = 0.0;
  double m = std::numeric_limits<double>::quiet_NaN();
};

GraphSource resolve_graph(const std::string& graph_path, const std::string& model, int n,
                          double pe, double s, double m, std::uint64_t seed,
                          std::uint64_t label_seed) {
  GraphSource src;
  if (!graph_path.empty()) {
    src.graph = load_edge_list_file(graph_path);
    src.graph_id = graph_path;
    src.model = "edgelist";
    src.pe_or_s = src.graph.sparsity();
    return src;
  }
  std::ostringstream id;
  if (model == "er") {
    src.graph = generate_er(n, pe, seed);
    id << "er(N=" << n << ",pe=" << pe << ",seed=" << label_seed << ")";
    src.model = "er";
    src.pe_or_s = pe;
  } else if (model == "powerlaw") {
    PowerLawGraph plg = generate_power_law(n, m, s, seed);
    src.graph = std::move(plg.graph);
    id << "powerlaw(N=" << n << ",s=" << s << ",m=" << m << ",seed=" << label_seed << ")";
    src.model = "powerlaw";
    src.pe_or_s = s;
    src.m = m;
  } else {
    throw ConfigError("model must be er or powerlaw (or pass --graph)");
  }
  src.graph_id = id.str();
  return src;
}

// ---------------------------------------------------------------------------
// subcommand implementations
// ---------------------------------------------------------------------------

struct Options {
  // globals
  std::uint64_t seed = kDefaultSeed;
  std::string config_path;
  std::string output;
  int replicates = 50;
  int threads = 1;

  // model / input
  std::string model = "er";
  int n = 1000;
  double pe = 0.1;
  double s = 0.01;
  double m = 2.0;
  std::string graph_path;
  std::string sample_path;

  // estimation
  double p = 0.1;
  std::string estimators = "mme";

  // reproduce
  std::string table = "er";

  // check-props
  std::string props = "1,2,3,4,5";
  double lambda = 100.0;
  double alpha0 = 0.0;
  int node = 0;
  double epsilon = 1e-3;
  int d0_max = 100;
  std::string prior_spec = "kind=poisson lambda=5";
  std::string dmatrix = "true";
};

int cmd_generate(const Options& opt) {
  const GraphSource src =
      resolve_graph("", opt.model, opt.n, opt.pe, opt.s, opt.m, opt.seed, opt.seed);
  auto out = open_output(opt.output);
  save_edge_list(src.graph, out);
  std::cout << "N=" << src.graph.num_nodes() << " E=" << src.graph.num_edges()
            << " sparsity=" << fmt_num(src.graph.sparsity()) << "\n";
  return 0;
}

int cmd_sample(const Options& opt) {
  if (opt.graph_path.empty()) throw ConfigError("sample: --graph is required");
  const Graph g = load_edge_list_file(opt.graph_path);
  const SampleResult s = induced_subgraph_sample(g, opt.p, opt.seed);
  auto out = open_output(opt.output);
  save_sample_csv(s, g.num_nodes(), out);
  std::cout << "n=" << s.n() << " E=" << s.subgraph.num_edges() << "\n";
  return 0;
}

int cmd_estimate(const Options& opt) {
  // Estimator configuration problems must surface before any sampling work.
  const std::vector<EstimatorSpec> specs = parse_estimator_list(opt.estimators);

  SampleResult sample;
  int parent_n = 0;
  if (!opt.sample_path.empty()) {
    LoadedSample loaded = load_sample_csv(opt.sample_path);
    sample = std::move(loaded.sample);
    parent_n = loaded.parent_n;
  } else {
    if (opt.graph_path.empty()) throw ConfigError("estimate: need --graph or --sample");
    const Graph g = load_edge_list_file(opt.graph_path);
    sample = induced_subgraph_sample(g, opt.p, opt.seed);
    parent_n = g.num_nodes();
  }

  std::vector<EstimateVector> results;
  results.reserve(specs.size());
  for (const auto& spec : specs) {
    results.push_back(run_estimator(spec, sample, parent_n, nullptr));
    if (results.back().used_fallback)
      std::cerr << "warning: " << spec.tag
                << ": singular multivariate system, univariate fallback used\n";
  }

  const VecXi d_star = observed_degrees(sample);
  auto out = open_output(opt.output);
  out << "sampled_index,parent_id,d_star";
  for (const auto& r : results) out << "," << csv_field(r.tag);
  out << "\n";
  for (int i = 0; i < sample.n(); ++i) {
    out << i << "," << sample.parent_ids[static_cast<std::size_t>(i)] << "," << d_star[i];
    for (const auto& r : results) out << "," << fmt_num(r.values[i]);
    out << "\n";
  }
  std::cout << "n=" << sample.n() << " estimators=" << results.size() << "\n";
  return 0;
}

int cmd_risk(const Options& opt, bool restricted) {
  const std::vector<EstimatorSpec> specs = parse_estimator_list(opt.estimators);
  const GraphSource src = resolve_graph(opt.graph_path, opt.model, opt.n, opt.pe, opt.s, opt.m,
                                        hash_key(opt.seed, rng_stream::cell, 1), opt.seed);

  RiskReport report;
  if (restricted) {
    const Graph* parent = &src.graph;
    const double alpha0 = opt.alpha0;
    const DMatrixChoice choice =
        opt.dmatrix == "sampled" ? DMatrixChoice::SampledDStar : DMatrixChoice::TrueD0;
    SamplePredicate pred = [parent, alpha0, choice](const SampleResult& s) {
      if (s.n() == 0) return false;
      const VecXi true_deg = degree_vector(*parent, s.parent_ids);
      const ClassMembership cm = check_prop2_class(s, alpha0, true_deg, choice, parent);
      return cm.in_g1 && cm.in_g2;
    };
    report = restricted_monte_carlo_risk(src.graph, opt.p, specs, opt.replicates, opt.seed,
                                         pred, opt.threads);
  } else {
    report = monte_carlo_l2_risk(src.graph, opt.p, specs, opt.replicates, opt.seed, opt.threads);
  }
  report.graph_id = src.graph_id;
  report.model = src.model;
  report.pe_or_s = src.pe_or_s;
  report.m_exponent = src.m;

  auto out = open_output(opt.output);
  write_risk_report_csv(report, out);
  for (const auto& er : report.per_estimator)
    std::cout << er.tag << " mean_l2=" << fmt_num(er.mean) << "\n";
  if (restricted) std::cout << "accepted_fraction=" << fmt_num(report.accepted_fraction) << "\n";
  return 0;
}

int cmd_reproduce(const Options& opt) {
  std::vector<TableCellResult> cells;
  if (opt.table == "er") {
    ErTableOptions topt;
    topt.n = opt.n;
    topt.replicates = opt.replicates;
    topt.seed = opt.seed;
    topt.threads = opt.threads;
    cells = run_er_table(topt);
  } else if (opt.table == "sf") {
    SfTableOptions topt;
    topt.n = opt.n;
    topt.replicates = opt.replicates;
    topt.seed = opt.seed;
    topt.threads = opt.threads;
    cells = run_sf_table(topt);
  } else {
    throw ConfigError("reproduce: --table must be er or sf");
  }

  auto out = open_output(opt.output);
  write_table_csv(cells, opt.table, out);

  for (const auto& cell : cells) {
    std::cout << (opt.table == "er" ? "pe=" : "s=") << fmt_num(cell.pe_or_s);
    if (!std::isnan(cell.m)) std::cout << " m=" << fmt_num(cell.m);
    std::cout << " p=" << fmt_num(cell.p) << " :";
    for (const auto& [tag, mean] : cell.means) {
      std::cout << " " << tag << "=" << fmt_num(mean);
      if (tag == cell.min_tag) std::cout << "*";
    }
    std::cout << "\n";
  }
  return 0;
}

// one generic row schema for the proposition report
void prop_row(std::ostream& out, int prop, const std::string& setting,
              const std::string& quantity, const std::string& value) {
  out << prop << "," << csv_field(setting) << "," << csv_field(quantity) << ","
      << csv_field(value) << "\n";
}

int cmd_check_props(const Options& opt) {
  std::set<int> props;
  {
    std::istringstream in(opt.props);
    std::string tok;
    while (std::getline(in, tok, ',')) {
      if (tok.empty()) continue;
      try {
        props.insert(std::stoi(tok));
      } catch (const std::exception&) {
        throw ConfigError("check-props: bad --props entry \"" + tok + "\"");
      }
    }
  }
  if (props.empty()) throw ConfigError("check-props: no propositions selected");

  auto out = open_output(opt.output);
  out << "prop,setting,quantity,value\n";

  if (props.count(1)) {
    // Exhaustive enumeration sweep; the condition is d0 > (1-p)/p.
    int violations = 0, checked = 0;
    for (int d0 = 1; d0 <= opt.d0_max; ++d0) {
      for (int i = 1; i <= 19; ++i) {
        const double p = i / 20.0;
        const Prop1Result r = check_prop1(d0, p);
        if (!r.condition_holds) continue;
        ++checked;
        if (!(r.risk_urm < r.risk_mme)) {
          ++violations;
          prop_row(out, 1, "d0=" + std::to_string(d0) + ",p=" + fmt_num(p), "violation", "1");
        }
      }
    }
    prop_row(out, 1, "sweep", "cells_checked", std::to_string(checked));
    prop_row(out, 1, "sweep", "violations", std::to_string(violations));
    std::cout << "prop1: " << checked << " cells, " << violations << " violations\n";
  }

  if (props.count(2)) {
    GraphSource src;
    if (!opt.graph_path.empty()) {
      src = resolve_graph(opt.graph_path, "", 0, 0, 0, 0, 0, 0);
    } else {
      // Demo default: the fully sampled triangle.
      src.graph = generate_er(3, 1.0, opt.seed);
      src.graph_id = "K3";
    }
    const SampleResult s = induced_subgraph_sample(src.graph, opt.p, opt.seed);
    const std::string setting = src.graph_id + ",p=" + fmt_num(opt.p) +
                                ",alpha0=" + fmt_num(opt.alpha0);
    if (s.n() == 0) {
      prop_row(out, 2, setting, "empty_sample", "1");
      std::cout << "prop2: empty sample\n";
    } else {
      const VecXi true_deg = degree_vector(src.graph, s.parent_ids);
      for (const DMatrixChoice choice : {DMatrixChoice::TrueD0, DMatrixChoice::SampledDStar}) {
        const ClassMembership cm = check_prop2_class(s, opt.alpha0, true_deg, choice, &src.graph);
        const std::string which = choice == DMatrixChoice::TrueD0 ? "true_d0" : "sampled_d";
        prop_row(out, 2, setting, which + ".in_g1", cm.in_g1 ? "1" : "0");
        prop_row(out, 2, setting, which + ".in_g2", cm.in_g2 ? "1" : "0");
        prop_row(out, 2, setting, which + ".max_feasible_alpha0", fmt_num(cm.max_feasible_alpha0));
        prop_row(out, 2, setting, which + ".g2_lhs", fmt_num(cm.g2_lhs));
        prop_row(out, 2, setting, which + ".g2_rhs", fmt_num(cm.g2_rhs));
        prop_row(out, 2, setting, which + ".lambda_min", fmt_num(cm.lambda_min));
        std::cout << "prop2[" << which << "]: in_g1=" << cm.in_g1 << " in_g2=" << cm.in_g2
                  << " max_feasible_alpha0=" << fmt_num(cm.max_feasible_alpha0) << "\n";
      }
    }
  }

  if (props.count(3)) {
    GraphSource src;
    if (!opt.graph_path.empty())
      src = resolve_graph(opt.graph_path, "", 0, 0, 0, 0, 0, 0);
    else
      src = resolve_graph("", "er", 50, 0.2, 0, 0, hash_key(opt.seed, rng_stream::cell, 3), opt.seed);
    const DegreePrior prior = parse_prior_spec(opt.prior_spec);
    const Prop3Result r =
        check_prop3_conditions(prior, src.graph, opt.node, opt.p, opt.replicates, opt.seed);
    const std::string setting = src.graph_id + ",node=" + std::to_string(opt.node) +
                                ",p=" + fmt_num(opt.p) + ",prior=" + prior.label();
    prop_row(out, 3, setting, "d0", std::to_string(r.d0));
    prop_row(out, 3, setting, "cond6_applicable", r.cond6_applicable ? "1" : "0");
    prop_row(out, 3, setting, "cond6_holds", r.cond6_holds ? "1" : "0");
    prop_row(out, 3, setting, "lhs6_mc", fmt_num(r.lhs6_mc));
    prop_row(out, 3, setting, "lhs6_first_realized", fmt_num(r.lhs6_first_realized));
    prop_row(out, 3, setting, "rhs6", fmt_num(r.rhs6));
    prop_row(out, 3, setting, "cond7_all", r.cond7_all ? "1" : "0");
    prop_row(out, 3, setting, "cond7_fraction", fmt_num(r.cond7_fraction));
    prop_row(out, 3, setting, "cond7_all_capped", r.cond7_all_capped ? "1" : "0");
    prop_row(out, 3, setting, "cond7_fraction_capped", fmt_num(r.cond7_fraction_capped));
    prop_row(out, 3, setting, "lhs7_min", fmt_num(r.lhs7_min));
    std::cout << "prop3: cond6(applicable=" << r.cond6_applicable << ",holds=" << r.cond6_holds
              << ") cond7(all=" << r.cond7_all << ",fraction=" << fmt_num(r.cond7_fraction)
              << ")\n";
  }

  if (props.count(4)) {
    const DegreePrior prior = parse_prior_spec(opt.prior_spec);
    int support_hi = prior.support_max().value_or(0);
    if (!prior.support_max()) {
      int d = 1;
      while (prior.pmf(d) > opt.epsilon * 1e-6 || d < 2) ++d;
      support_hi = d + 5;
    }
    int fails = 0;
    for (int variant = 0; variant < 2; ++variant) {
      Vec pmf = Vec::Zero(support_hi + 1);
      for (int d = 0; d <= support_hi; ++d) {
        double delta = opt.epsilon * (1.0 - 1e-9);
        if (variant == 1 && prior.pmf(d) > opt.epsilon) delta = -delta;  // adversarial signs
        pmf[d] = std::max(0.0, prior.pmf(d) + delta);
      }
      const DegreePrior perturbed = DegreePrior::explicit_pmf(std::move(pmf), true);
      for (int d_star = 0; d_star <= 10; ++d_star) {
        const Prop4Result r = eb_approximation_check(prior, perturbed, opt.epsilon, d_star, opt.p);
        const bool all = r.holds_num && r.holds_den && r.holds_ratio;
        if (!all) ++fails;
        prop_row(out, 4,
                 std::string(variant == 0 ? "uniform" : "adversarial") +
                     ",dstar=" + std::to_string(d_star) + ",eps=" + fmt_num(opt.epsilon) +
                     ",p=" + fmt_num(opt.p),
                 "holds_8_9_10",
                 std::string(r.holds_num ? "1" : "0") + (r.holds_den ? "1" : "0") +
                     (r.holds_ratio ? "1" : "0"));
      }
    }
    std::cout << "prop4: " << (fails == 0 ? "all bounds hold" : std::to_string(fails) + " failures")
              << "\n";
  }

  if (props.count(5)) {
    const DominanceInterval iv = poisson_bayes_dominance_interval(opt.lambda, opt.p);
    const std::string setting = "lambda=" + fmt_num(opt.lambda) + ",p=" + fmt_num(opt.p);
    prop_row(out, 5, setting, "lower", fmt_num(iv.lower));
    prop_row(out, 5, setting, "upper", fmt_num(iv.upper));
    int violations = 0, inside = 0;
    for (int d0 = std::max(0, static_cast<int>(std::floor(iv.lower)) + 1); d0 < iv.upper; ++d0) {
      const double rb = exact_univariate_risk(UnivariateEstimator::BayesPoisson, d0, opt.p, opt.lambda);
      const double rm = exact_univariate_risk(UnivariateEstimator::Mme, d0, opt.p);
      ++inside;
      const bool dominates = rb < rm;
      if (!dominates) ++violations;
      prop_row(out, 5, setting + ",d0=" + std::to_string(d0), "bayes_dominates",
               dominates ? "1" : "0");
    }
    prop_row(out, 5, setting, "integers_inside", std::to_string(inside));
    prop_row(out, 5, setting, "violations", std::to_string(violations));
    std::cout << "prop5: interval [" << fmt_num(iv.lower) << ", " << fmt_num(iv.upper) << "], "
              << inside << " integer degrees, " << violations << " violations\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// argument plumbing: flat key=value config, flags win
// ---------------------------------------------------------------------------

std::vector<std::string> inject_config(const std::vector<std::string>& args,
                                       const CLI::App& app) {
  // Locate --config and the subcommand token.
  std::string config_path;
  std::size_t sub_pos = args.size();
  std::string sub_name;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a == "--config" && i + 1 < args.size()) config_path = args[i + 1];
    else if (a.rfind("--config=", 0) == 0) config_path = a.substr(9);
    if (sub_pos == args.size() && !a.empty() && a[0] != '-' &&
        app.get_subcommand_no_throw(a) != nullptr) {
      sub_pos = i;
      sub_name = a;
    }
  }
  if (config_path.empty() || sub_name.empty()) return args;

  const auto cfg = parse_config_file(config_path);
  std::set<std::string> known;
  auto collect = [&known](const CLI::App* cmd) {
    for (const CLI::Option* o : cmd->get_options())
      for (const std::string& name : o->get_lnames()) known.insert(name);
  };
  collect(&app);
  collect(app.get_subcommand_no_throw(sub_name));

  std::vector<std::string> out(args.begin(), args.begin() + static_cast<long>(sub_pos) + 1);
  for (const auto& [key, value] : cfg) {
    if (!known.count(key)) {
      std::cerr << "warning: config key \"" << key << "\" not recognized by " << sub_name
                << "; ignored\n";
      continue;
    }
    out.push_back("--" + key + "=" + value);
  }
  out.insert(out.end(), args.begin() + static_cast<long>(sub_pos) + 1, args.end());
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  CLI::App app{"degree estimation for induced-subgraph-sampled networks"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  app.fallthrough();

  app.add_option("--seed", opt.seed, "random seed");
  app.add_option("--config", opt.config_path, "flat key=value config file (flags win)");
  app.add_option("--output", opt.output, "output file path");
  app.add_option("--replicates", opt.replicates, "Monte Carlo replicates");
  app.add_option("--threads", opt.threads, "worker threads");

  CLI::App* generate = app.add_subcommand("generate", "generate a random graph, write an edge list");
  generate->add_option("--model", opt.model, "er | powerlaw");
  generate->add_option("--n", opt.n, "number of nodes");
  generate->add_option("--pe", opt.pe, "ER edge probability");
  generate->add_option("--s", opt.s, "power-law target sparsity");
  generate->add_option("--m", opt.m, "power-law exponent");

  CLI::App* sample = app.add_subcommand("sample", "draw one induced subgraph sample");
  sample->add_option("--graph", opt.graph_path, "edge-list file");
  sample->add_option("--p", opt.p, "sampling probability");

  CLI::App* estimate = app.add_subcommand("estimate", "estimate true degrees of sampled nodes");
  estimate->add_option("--graph", opt.graph_path, "edge-list file");
  estimate->add_option("--sample", opt.sample_path, "sample file from the sample subcommand");
  estimate->add_option("--p", opt.p, "sampling probability");
  estimate->add_option("--estimators", opt.estimators,
                       "comma list: mme, urm, mrm, bayes(kind=... ...)");

  CLI::App* risk = app.add_subcommand("risk", "Monte Carlo l2 risk comparison");
  risk->add_option("--graph", opt.graph_path, "edge-list file (else --model)");
  risk->add_option("--model", opt.model, "er | powerlaw");
  risk->add_option("--n", opt.n, "number of nodes");
  risk->add_option("--pe", opt.pe, "ER edge probability");
  risk->add_option("--s", opt.s, "power-law target sparsity");
  risk->add_option("--m", opt.m, "power-law exponent");
  risk->add_option("--p", opt.p, "sampling probability");
  risk->add_option("--estimators", opt.estimators, "estimator list");
  bool restricted = false;
  risk->add_flag("--restrict-prop2", restricted, "restrict risk to the prop-2 class");
  risk->add_option("--alpha0", opt.alpha0, "prop-2 eigenvector overlap constant");
  risk->add_option("--dmatrix", opt.dmatrix, "prop-2 lambda_min matrix: true | sampled");

  CLI::App* reproduce = app.add_subcommand("reproduce", "rerun a simulation table");
  reproduce->add_option("--table", opt.table, "er | sf");
  reproduce->add_option("--n", opt.n, "graph size override");

  CLI::App* check = app.add_subcommand("check-props", "run the proposition checkers");
  check->add_option("--props", opt.props, "comma list of propositions (1..5)");
  check->add_option("--graph", opt.graph_path, "edge-list file for props 2-3");
  check->add_option("--p", opt.p, "sampling probability");
  check->add_option("--lambda", opt.lambda, "prop-5 Poisson prior mean");
  check->add_option("--alpha0", opt.alpha0, "prop-2 overlap constant");
  check->add_option("--node", opt.node, "prop-3 node id");
  check->add_option("--epsilon", opt.epsilon, "prop-4 sup-norm perturbation");
  check->add_option("--d0max", opt.d0_max, "prop-1 sweep upper degree");
  check->add_option("--prior", opt.prior_spec, "prior spec for props 3-4");

  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    args = inject_config(args, app);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (app.got_subcommand(generate)) return cmd_generate(opt);
    if (app.got_subcommand(sample)) return cmd_sample(opt);
    if (app.got_subcommand(estimate)) return cmd_estimate(opt);
    if (app.got_subcommand(risk)) return cmd_risk(opt, restricted);
    if (app.got_subcommand(reproduce)) return cmd_reproduce(opt);
    if (app.got_subcommand(check)) return cmd_check_props(opt);
    throw ConfigError("no subcommand given");
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const NumericError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  }
}
