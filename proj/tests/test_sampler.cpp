#include <doctest.h>

#include <cmath>

#include "degest/graph.hpp"
#include "degest/rng.hpp"
#include "degest/sampler.hpp"
#include "test_util.hpp"

using namespace degest;

TEST_CASE("p=1 retains the whole graph under identity relabeling") {
  const Graph g = generate_er(25, 0.3, 4);
  const SampleResult s = induced_subgraph_sample(g, 1.0, 9);
  REQUIRE(s.n() == g.num_nodes());
  for (int i = 0; i < s.n(); ++i) CHECK(s.parent_ids[static_cast<std::size_t>(i)] == i);
  CHECK(test::serialize_graph(s.subgraph) == test::serialize_graph(g));
}

TEST_CASE("p=0 yields an empty sample without error") {
  const Graph g = generate_er(10, 0.5, 4);
  const SampleResult s = induced_subgraph_sample(g, 0.0, 1);
  CHECK(s.n() == 0);
  CHECK(s.subgraph.num_nodes() == 0);
  CHECK(observed_degrees(s).size() == 0);
}

TEST_CASE("sampled node count is Binomial(N, p) on average") {
  const Graph k3 = generate_er(3, 1.0, 1);
  const int reps = 100'000;
  double total = 0;
  for (int r = 0; r < reps; ++r)
    total += induced_subgraph_sample(k3, 0.5, derive_seed(77, static_cast<std::uint64_t>(r))).n();
  const double mean = total / reps;
  const double se = std::sqrt(3 * 0.25 / reps);
  CHECK(std::abs(mean - 1.5) < 3 * se);
}

TEST_CASE("samples are induced subgraphs") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const Graph g = generate_er(40, 0.2, seed);
    const SampleResult s = induced_subgraph_sample(g, 0.4, seed ^ 0x5a5a);
    const VecXi d_star = observed_degrees(s);
    const VecXi d_true = degree_vector(g, s.parent_ids);
    for (int i = 0; i < s.n(); ++i) {
      CHECK(d_star[i] <= d_true[i]);  // observation never exceeds truth
      for (int j = i + 1; j < s.n(); ++j)
        CHECK(s.subgraph.has_edge(i, j) ==
              g.has_edge(s.parent_ids[static_cast<std::size_t>(i)],
                         s.parent_ids[static_cast<std::size_t>(j)]));
    }
  }
}

TEST_CASE("sampling is deterministic per seed") {
  const Graph g = generate_er(50, 0.2, 5);
  const SampleResult a = induced_subgraph_sample(g, 0.3, 123);
  const SampleResult b = induced_subgraph_sample(g, 0.3, 123);
  CHECK(a.parent_ids == b.parent_ids);
  CHECK(test::serialize_graph(a.subgraph) == test::serialize_graph(b.subgraph));
}

TEST_CASE("observed_degrees drops edges to unsampled nodes") {
  const Graph p3 = Graph::from_edges(3, std::vector<std::pair<int, int>>{{0, 1}, {1, 2}});
  const std::array<int, 2> forced = {0, 2};
  // p=0 plus forcing gives exactly the two endpoints.
  const SampleResult s = induced_subgraph_sample_forced(p3, 0.0, 3, forced);
  REQUIRE(s.n() == 2);
  const VecXi d_star = observed_degrees(s);
  CHECK(d_star[0] == 0);
  CHECK(d_star[1] == 0);
}

TEST_CASE("forced nodes are always retained, others keep their marginal rate") {
  const Graph g = generate_er(30, 0.2, 8);
  const std::array<int, 1> forced = {4};
  int in_count = 0;
  const int reps = 20'000;
  double others = 0;
  for (int r = 0; r < reps; ++r) {
    const SampleResult s =
        induced_subgraph_sample_forced(g, 0.3, derive_seed(5, static_cast<std::uint64_t>(r)), forced);
    bool has = false;
    for (int pid : s.parent_ids) has = has || pid == 4;
    in_count += has;
    others += s.n() - 1;
  }
  CHECK(in_count == reps);
  const double mean_others = others / reps;
  const double se = std::sqrt(29 * 0.3 * 0.7 / reps);
  CHECK(std::abs(mean_others - 29 * 0.3) < 3 * se);
}

TEST_CASE("conditional moments match p d0, p(1-p) d0 and p(1-p) d0_ij") {
  // Fixed 6-node graph; conditioning pair (1,3) is non-adjacent with one
  // common neighbor.
  const Graph g = test::lemma_graph();
  REQUIRE_FALSE(g.has_edge(1, 3));
  const double p = 0.5;
  const int reps = 200'000;
  const auto m = test::pair_sample_moments(g, 1, 3, p, reps, 2024);

  const double d0_i = g.degree(1);  // 2
  const double d0_j = g.degree(3);  // 2
  const double d0_ij = 1.0;         // node 0

  CHECK(std::abs(m.mean_i - p * d0_i) < 3 * m.se_mean_i);
  CHECK(std::abs(m.mean_j - p * d0_j) < 3 * m.se_mean_j);
  CHECK(std::abs(m.var_i - p * (1 - p) * d0_i) < 3 * m.se_var_i);
  CHECK(std::abs(m.var_j - p * (1 - p) * d0_j) < 3 * m.se_var_j);
  CHECK(std::abs(m.cov - p * (1 - p) * d0_ij) < 3 * m.se_cov);
}
