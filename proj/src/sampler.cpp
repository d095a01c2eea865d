#include "degest/sampler.hpp"

#include <algorithm>
#include <utility>

#include "degest/rng.hpp"

namespace degest {

namespace {

SampleResult build_sample(const Graph& g, double p, const std::vector<int>& retained) {
  SampleResult s;
  s.p = p;
  s.parent_ids = retained;

  std::vector<int> index_of(static_cast<std::size_t>(g.num_nodes()), -1);
  for (std::size_t i = 0; i < retained.size(); ++i)
    index_of[static_cast<std::size_t>(retained[i])] = static_cast<int>(i);

  std::vector<std::pair<int, int>> edges;
  for (std::size_t i = 0; i < retained.size(); ++i) {
    const int u = retained[i];
    for (int v : g.neighbors(u)) {
      if (v <= u) continue;
      const int j = index_of[static_cast<std::size_t>(v)];
      if (j >= 0) edges.emplace_back(static_cast<int>(i), j);
    }
  }
  s.subgraph = Graph::from_edges(static_cast<int>(retained.size()), edges);
  return s;
}

}  // namespace

SampleResult induced_subgraph_sample(const Graph& g, double p, std::uint64_t seed) {
  return induced_subgraph_sample_forced(g, p, seed, {});
}

SampleResult induced_subgraph_sample_forced(const Graph& g, double p, std::uint64_t seed,
                                            std::span<const int> forced) {
  if (!(p >= 0.0 && p <= 1.0))
    throw ConfigError("induced_subgraph_sample: p must lie in [0, 1]");

  std::vector<char> keep(static_cast<std::size_t>(g.num_nodes()), 0);
  for (int u : forced) {
    if (u < 0 || u >= g.num_nodes())
      throw std::out_of_range("forced node " + std::to_string(u) + " out of range");
    keep[static_cast<std::size_t>(u)] = 1;
  }
  std::vector<int> retained;
  for (int u = 0; u < g.num_nodes(); ++u) {
    if (!keep[static_cast<std::size_t>(u)] &&
        unit_double(hash_key(seed, rng_stream::node_inclusion, static_cast<std::uint64_t>(u))) < p)
      keep[static_cast<std::size_t>(u)] = 1;
    if (keep[static_cast<std::size_t>(u)]) retained.push_back(u);
  }
  return build_sample(g, p, retained);
}

VecXi observed_degrees(const SampleResult& s) { return degree_vector(s.subgraph); }

}  // namespace degest
