#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "degest/estimators.hpp"
#include "degest/graph.hpp"
#include "degest/prior.hpp"
#include "test_util.hpp"

using namespace degest;
namespace fs = std::filesystem;

namespace {

const std::string kCli = DEGEST_CLI_PATH;

fs::path work_dir() {
  const fs::path dir = fs::temp_directory_path() / "degest_cli_tests";
  fs::create_directories(dir);
  return dir;
}

std::vector<std::vector<std::string>> read_csv(const fs::path& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ls(line);
    while (std::getline(ls, field, ',')) fields.push_back(field);
    rows.push_back(std::move(fields));
  }
  return rows;
}

}  // namespace

TEST_CASE("generate writes deterministic edge lists") {
  const fs::path dir = work_dir();
  const auto a = (dir / "g_a.txt").string();
  const auto b = (dir / "g_b.txt").string();
  auto r1 = test::run_command(kCli + " generate --model er --n 40 --pe 0.25 --seed 11 --output " + a);
  auto r2 = test::run_command(kCli + " generate --model er --n 40 --pe 0.25 --seed 11 --output " + b);
  CHECK(r1.exit_code == 0);
  CHECK(r2.exit_code == 0);
  CHECK(r1.output == r2.output);
  CHECK(test::read_file(a) == test::read_file(b));
  CHECK_FALSE(test::read_file(a).empty());
}

TEST_CASE("estimate at p=1 returns the true degrees") {
  const fs::path dir = work_dir();
  const auto g = (dir / "k6.txt").string();
  const auto e = (dir / "k6_est.csv").string();
  REQUIRE(test::run_command(kCli + " generate --model er --n 6 --pe 1 --seed 1 --output " + g)
              .exit_code == 0);
  REQUIRE(test::run_command(kCli + " estimate --graph " + g +
                            " --p 1 --estimators mme --seed 2 --output " + e)
              .exit_code == 0);
  const auto rows = read_csv(e);
  REQUIRE(rows.size() == 7);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i][2] == "5");  // observed degree = true degree in K6
    CHECK(std::stod(rows[i][3]) == doctest::Approx(5.0));
  }
}

TEST_CASE("estimate urm column exceeds mme by the algebraic gap") {
  const fs::path dir = work_dir();
  const auto g = (dir / "mid.txt").string();
  const auto e = (dir / "mid_est.csv").string();
  REQUIRE(test::run_command(kCli + " generate --model er --n 60 --pe 0.2 --seed 3 --output " + g)
              .exit_code == 0);
  const double p = 0.4;
  REQUIRE(test::run_command(kCli + " estimate --graph " + g + " --p 0.4 --estimators mme,urm" +
                            " --seed 5 --output " + e)
              .exit_code == 0);
  const auto rows = read_csv(e);
  REQUIRE(rows.size() > 2);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double d_star = std::stod(rows[i][2]);
    const double gap = std::stod(rows[i][4]) - std::stod(rows[i][3]);
    CHECK(gap == doctest::Approx((1 - p) * (1 - p) / (p * (d_star + 1 - p))).epsilon(1e-6));
  }
}

TEST_CASE("estimate with an explicit pmf matches the library estimate") {
  const fs::path dir = work_dir();
  const auto g = (dir / "pg.txt").string();
  const auto e = (dir / "pg_est.csv").string();
  const auto pmf_path = (dir / "pmf.csv").string();
  {
    std::ofstream pmf(pmf_path);
    pmf << "d,probability\n";
    pmf.precision(17);
    for (int d = 0; d <= 30; ++d) pmf << d << "," << (1.0 / 31.0) << "\n";
  }
  REQUIRE(test::run_command(kCli + " generate --model er --n 50 --pe 0.3 --seed 9 --output " + g)
              .exit_code == 0);
  REQUIRE(test::run_command(kCli + " estimate --graph " + g +
                            " --p 0.5 --estimators \"bayes(kind=explicit file=" + pmf_path +
                            ")\" --seed 4 --output " + e)
              .exit_code == 0);
  const auto rows = read_csv(e);
  REQUIRE(rows.size() > 2);
  const DegreePrior prior = load_pmf_csv_file(pmf_path);
  const Graph parent = load_edge_list_file(g);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const int d_star = std::stoi(rows[i][2]);
    const double expected =
        bayes_posterior_mean(d_star, 0.5, prior, parent.num_nodes() - 1).value;
    CHECK(std::stod(rows[i][3]) == doctest::Approx(expected).epsilon(1e-8));
  }
}

TEST_CASE("estimate accepts a saved sample and matches direct sampling") {
  const fs::path dir = work_dir();
  const auto g = (dir / "src.txt").string();
  const auto s = (dir / "src_sample.csv").string();
  const auto e1 = (dir / "est_direct.csv").string();
  const auto e2 = (dir / "est_from_sample.csv").string();
  REQUIRE(test::run_command(kCli + " generate --model er --n 80 --pe 0.15 --seed 6 --output " + g)
              .exit_code == 0);
  REQUIRE(test::run_command(kCli + " sample --graph " + g + " --p 0.5 --seed 77 --output " + s)
              .exit_code == 0);
  REQUIRE(test::run_command(kCli + " estimate --graph " + g +
                            " --p 0.5 --seed 77 --estimators mme,mrm --output " + e1)
              .exit_code == 0);
  REQUIRE(test::run_command(kCli + " estimate --sample " + s +
                            " --estimators mme,mrm --output " + e2)
              .exit_code == 0);
  CHECK(test::read_file(e1) == test::read_file(e2));
}

TEST_CASE("risk subcommand writes the report schema") {
  const fs::path dir = work_dir();
  const auto r = (dir / "risk.csv").string();
  REQUIRE(test::run_command(kCli + " risk --model er --n 80 --pe 0.2 --p 0.3 --estimators mme,urm"
                                   " --replicates 6 --seed 13 --output " + r)
              .exit_code == 0);
  const auto rows = read_csv(r);
  CHECK(rows.size() == 1 + 2 * 7 + 2);  // header + 2 estimators x (6 reps + mean) + meta
  CHECK(rows[0][0] == "graph_id");
}

TEST_CASE("reproduce emits one row per cell and estimator") {
  const fs::path dir = work_dir();
  const auto t = (dir / "table.csv").string();
  REQUIRE(test::run_command(kCli + " reproduce --table er --n 120 --replicates 3 --seed 21 "
                                   "--output " + t)
              .exit_code == 0);
  const auto rows = read_csv(t);
  CHECK(rows.size() == 1 + 8 * 6);  // header + 8 cells x 6 estimators
  int min_flags = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) min_flags += rows[i][7] == "1";
  CHECK(min_flags == 8);  // exactly one minimum per cell
}

TEST_CASE("check-props runs every proposition") {
  const fs::path dir = work_dir();
  const auto out = (dir / "props.csv").string();
  const auto res = test::run_command(kCli + " check-props --props 1,2,3,4,5 --d0max 15 "
                                            "--replicates 40 --p 0.3 --seed 5 --output " + out);
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("prop1:") != std::string::npos);
  CHECK(res.output.find("prop5:") != std::string::npos);
  const auto rows = read_csv(out);
  CHECK(rows.size() > 10);
}

TEST_CASE("check-props reports the degenerate feasible overlap on a full triangle sample") {
  const fs::path dir = work_dir();
  const auto out = (dir / "prop2.csv").string();
  const auto res =
      test::run_command(kCli + " check-props --props 2 --p 1 --seed 3 --output " + out);
  REQUIRE(res.exit_code == 0);
  // The system matrix of the fully sampled triangle has two eigenvectors
  // orthogonal to the ones vector, so the largest feasible alpha0 is zero.
  for (const auto& row : read_csv(out)) {
    if (row.size() == 4 && row[2] == "sampled_d.max_feasible_alpha0")
      CHECK(std::abs(std::stod(row[3])) < 1e-9);
  }
}

TEST_CASE("config file values apply and flags win") {
  const fs::path dir = work_dir();
  const auto cfg = (dir / "run.cfg").string();
  const auto g1 = (dir / "cfg_a.txt").string();
  const auto g2 = (dir / "cfg_b.txt").string();
  {
    std::ofstream c(cfg);
    c << "# generation settings\n";
    c << "model=er\n";
    c << "n=30\n";
    c << "pe=1\n";
  }
  REQUIRE(test::run_command(kCli + " generate --config " + cfg + " --seed 8 --output " + g1)
              .exit_code == 0);
  const Graph a = load_edge_list_file(g1);
  CHECK(a.num_nodes() == 30);
  CHECK(a.num_edges() == 30 * 29 / 2);

  // An explicit flag overrides the config value.
  REQUIRE(test::run_command(kCli + " generate --config " + cfg + " --n 10 --seed 8 --output " + g2)
              .exit_code == 0);
  CHECK(load_edge_list_file(g2).num_nodes() == 10);
}

TEST_CASE("estimator lists with prior specs work from a config file") {
  const fs::path dir = work_dir();
  const auto g = (dir / "cfg_graph.txt").string();
  const auto cfg = (dir / "est.cfg").string();
  const auto e = (dir / "cfg_est.csv").string();
  REQUIRE(test::run_command(kCli + " generate --model er --n 40 --pe 0.3 --seed 2 --output " + g)
              .exit_code == 0);
  {
    std::ofstream c(cfg);
    c << "graph=" << g << "\n";
    c << "p=0.5\n";
    c << "estimators=mme,bayes(kind=poisson lambda=11.7)\n";
  }
  REQUIRE(test::run_command(kCli + " estimate --config " + cfg + " --seed 3 --output " + e)
              .exit_code == 0);
  const auto rows = read_csv(e);
  REQUIRE(rows.size() > 2);
  CHECK(rows[0][4] == "bayes_pois(11.7)");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double d_star = std::stod(rows[i][2]);
    CHECK(std::stod(rows[i][4]) == doctest::Approx(d_star + 11.7 * 0.5).epsilon(1e-9));
  }
}

TEST_CASE("exit codes distinguish config and numerical failures") {
  const fs::path dir = work_dir();
  CHECK(test::run_command(kCli + " 2>/dev/null").exit_code == 1);
  CHECK(test::run_command(kCli + " generate --model banana --output x.txt 2>/dev/null").exit_code == 1);
  CHECK(test::run_command(kCli + " estimate --graph missing_file.txt --p 0.5 --estimators mme"
                                 " --output x.csv 2>/dev/null").exit_code == 1);

  // Prior support conflict: point mass at 0 cannot explain a positive d*.
  const auto g = (dir / "tri.txt").string();
  const auto pmf_path = (dir / "point0.csv").string();
  REQUIRE(test::run_command(kCli + " generate --model er --n 3 --pe 1 --seed 1 --output " + g)
              .exit_code == 0);
  {
    std::ofstream pmf(pmf_path);
    pmf << "0,1.0\n";
  }
  CHECK(test::run_command(kCli + " estimate --graph " + g +
                          " --p 1 --estimators \"bayes(kind=explicit file=" + pmf_path +
                          ")\" --output " + (dir / "x.csv").string() + " 2>/dev/null")
            .exit_code == 2);

  // Unreachable generator target.
  CHECK(test::run_command(kCli + " generate --model powerlaw --n 100 --m 3 --s 0.005 --output " +
                          (dir / "y.txt").string() + " 2>/dev/null")
            .exit_code == 2);
}

TEST_CASE("help exits zero") {
  CHECK(test::run_command(kCli + " --help >/dev/null").exit_code == 0);
}
