#include <doctest.h>

#include <cmath>
#include <map>

#include "degest/experiments.hpp"

using namespace degest;

namespace {

std::map<std::string, double> means_of(const TableCellResult& cell) {
  std::map<std::string, double> out;
  for (const auto& [tag, mean] : cell.means) out[tag] = mean;
  return out;
}

}  // namespace

TEST_CASE("ER table: estimated-mean Bayes column tracks the known-mean column") {
  ErTableOptions opt;
  opt.seed = kDefaultSeed;
  const auto cells = run_er_table(opt);
  REQUIRE(cells.size() == 8);
  for (const auto& cell : cells) {
    const auto m = means_of(cell);
    const double known = m.at("bayes_pois");
    const double estimated = m.at("bayes_pois_hat");
    CHECK(std::abs(estimated - known) / known < 0.15);
    // The Bayes columns dominate the scale-up estimator by a wide margin.
    CHECK(known < 0.8 * m.at("mme"));
  }
}

TEST_CASE("SF sparse cell: the true-prior Bayes estimator beats the scale-up estimator") {
  const TableCellResult cell =
      run_sf_cell(1000, 0.002, 2.0, 0.1, 50, table_cell_seed(kDefaultSeed, 0), 1);
  const auto m = means_of(cell);
  CHECK(m.at("bayes_true") < m.at("mme"));
  // At m = 2 the quadratic prior IS the true prior, so the columns coincide.
  CHECK(m.at("bayes_quad") == doctest::Approx(m.at("bayes_true")).epsilon(1e-12));
}
