#include "degest/experiments.hpp"

#include <cmath>
#include <limits>
#include <ostream>

#include "degest/csv.hpp"
#include "degest/rng.hpp"

namespace degest {

std::uint64_t table_cell_seed(std::uint64_t table_seed, int cell_index) {
  return hash_key(table_seed, rng_stream::cell, static_cast<std::uint64_t>(cell_index));
}

namespace {

TableCellResult summarize(const RiskReport& report, double pe_or_s, double m, double p, int n,
                          std::string prior_support) {
  TableCellResult cell;
  cell.pe_or_s = pe_or_s;
  cell.m = m;
  cell.p = p;
  cell.n = n;
  cell.prior_support = std::move(prior_support);
  double best = std::numeric_limits<double>::infinity();
  for (const auto& er : report.per_estimator) {
    cell.means.emplace_back(er.tag, er.mean);
    if (er.mean < best) {
      best = er.mean;
      cell.min_tag = er.tag;
    }
  }
  return cell;
}

}  // namespace

TableCellResult run_er_cell(int n, double pe, double p, int replicates,
                            std::uint64_t cell_seed, int threads) {
  const Graph g = generate_er(n, pe, hash_key(cell_seed, rng_stream::cell, 1));
  const double lambda = (n - 1) * pe;  // true mean degree from the known p_e
  std::vector<EstimatorSpec> specs = {
      EstimatorSpec::make_mme(),
      EstimatorSpec::make_urm(),
      EstimatorSpec::make_mrm(),
      EstimatorSpec::make_bayes_poisson(lambda, "bayes_pois"),
      EstimatorSpec::make_bayes_poisson_lambda_hat("bayes_pois_hat"),
      EstimatorSpec::make_bayes(DegreePrior::power_law(2.0, 1, n - 1), "bayes_poly"),
  };
  const RiskReport report = monte_carlo_l2_risk(
      g, p, specs, replicates, hash_key(cell_seed, rng_stream::cell, 2), threads);
  return summarize(report, pe, std::numeric_limits<double>::quiet_NaN(), p, n, "");
}

std::vector<TableCellResult> run_er_table(const ErTableOptions& opt) {
  std::vector<TableCellResult> cells;
  int index = 0;
  for (double p : opt.p)
    for (double pe : opt.pe)
      cells.push_back(run_er_cell(opt.n, pe, p, opt.replicates,
                                  table_cell_seed(opt.seed, index++), opt.threads));
  return cells;
}

TableCellResult run_sf_cell(int n, double s, double m, double p, int replicates,
                            std::uint64_t cell_seed, int threads) {
  const PowerLawGraph plg =
      generate_power_law(n, m, s, hash_key(cell_seed, rng_stream::cell, 1));
  std::vector<EstimatorSpec> specs = {
      EstimatorSpec::make_mme(),
      EstimatorSpec::make_urm(),
      EstimatorSpec::make_mrm(),
      EstimatorSpec::make_bayes(DegreePrior::power_law(m, plg.d_min, plg.d_max), "bayes_true"),
      EstimatorSpec::make_bayes(DegreePrior::power_law(2.0, plg.d_min, plg.d_max), "bayes_quad"),
  };
  const RiskReport report = monte_carlo_l2_risk(
      plg.graph, p, specs, replicates, hash_key(cell_seed, rng_stream::cell, 2), threads);
  const std::string support =
      std::to_string(plg.d_min) + ".." + std::to_string(plg.d_max);
  return summarize(report, s, m, p, n, support);
}

std::vector<TableCellResult> run_sf_table(const SfTableOptions& opt) {
  std::vector<TableCellResult> cells;
  int index = 0;
  for (double m : opt.m)
    for (double s : opt.s)
      cells.push_back(run_sf_cell(opt.n, s, m, opt.p, opt.replicates,
                                  table_cell_seed(opt.seed, index++), opt.threads));
  return cells;
}

void write_table_csv(const std::vector<TableCellResult>& cells, const std::string& table_name,
                     std::ostream& out) {
  out << "table,N,p_e_or_s,m,p,estimator,mean_l2,is_cell_min,prior_support\n";
  for (const auto& cell : cells) {
    for (const auto& [tag, mean] : cell.means) {
      out << csv_field(table_name) << "," << cell.n << "," << fmt_num(cell.pe_or_s) << ","
          << (std::isnan(cell.m) ? "" : fmt_num(cell.m)) << "," << fmt_num(cell.p) << ","
          << csv_field(tag) << "," << fmt_num(mean) << "," << (tag == cell.min_tag ? 1 : 0)
          << "," << csv_field(cell.prior_support) << "\n";
    }
  }
}

}  // namespace degest
