#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "degest/graph.hpp"
#include "degest/risk.hpp"

namespace degest {

/// Project-wide default seed: the documented reference runs (tables, CLI
/// defaults, acceptance suite) all use it.
inline constexpr std::uint64_t kDefaultSeed = 2;

struct TableCellResult {
  double pe_or_s = 0.0;
  double m = 0.0;  // NaN for the ER table
  double p = 0.0;
  int n = 0;
  std::vector<std::pair<std::string, double>> means;  // (estimator tag, mean l2)
  std::string min_tag;
  std::string prior_support;  // tuned power-law support, when applicable
};

struct ErTableOptions {
  int n = 1000;
  std::vector<double> pe = {0.1, 0.2, 0.3, 0.4};
  std::vector<double> p = {0.1, 0.2};
  int replicates = 50;
  std::uint64_t seed = 42;
  int threads = 1;
};

struct SfTableOptions {
  int n = 1000;
  std::vector<double> s = {0.002, 0.01, 0.05};
  std::vector<double> m = {2.0, 2.5, 3.0};
  double p = 0.1;
  int replicates = 50;
  std::uint64_t seed = 42;
  int threads = 1;
};

/// Seed of a table cell: cells are indexed in emission order.
std::uint64_t table_cell_seed(std::uint64_t table_seed, int cell_index);

/// One parent graph per cell, resampled `replicates` times. Estimator set:
/// mme, urm, mrm, bayes_pois (lambda = (N-1) p_e), bayes_pois_hat
/// (lambda estimated per sample), bayes_poly (pmf ~ d^-2).
TableCellResult run_er_cell(int n, double pe, double p, int replicates,
                            std::uint64_t cell_seed, int threads);
std::vector<TableCellResult> run_er_table(const ErTableOptions& opt);

/// Estimator set: mme, urm, mrm, bayes_true (the generator's pmf on its tuned
/// support), bayes_quad (pmf ~ d^-2 on the same support).
TableCellResult run_sf_cell(int n, double s, double m, double p, int replicates,
                            std::uint64_t cell_seed, int threads);
std::vector<TableCellResult> run_sf_table(const SfTableOptions& opt);

/// Long-format CSV: table,N,p_e_or_s,m,p,estimator,mean_l2,is_cell_min,prior_support.
void write_table_csv(const std::vector<TableCellResult>& cells, const std::string& table_name,
                     std::ostream& out);

}  // namespace degest
