#pragma once

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "degest/graph.hpp"
#include "degest/rng.hpp"
#include "degest/sampler.hpp"

namespace degest::test {

/// Independent common-neighbor oracle: double loop over node pairs, counting
/// shared neighbors through has_edge only.
inline MatXi brute_force_common_neighbors(const Graph& g, const std::vector<int>& nodes) {
  const int k = static_cast<int>(nodes.size());
  MatXi out(k, k);
  for (int i = 0; i < k; ++i) {
    out(i, i) = g.degree(nodes[static_cast<std::size_t>(i)]);
    for (int j = i + 1; j < k; ++j) {
      int count = 0;
      for (int w = 0; w < g.num_nodes(); ++w)
        if (g.has_edge(nodes[static_cast<std::size_t>(i)], w) &&
            g.has_edge(nodes[static_cast<std::size_t>(j)], w))
          ++count;
      out(i, j) = count;
      out(j, i) = count;
    }
  }
  return out;
}

inline std::string serialize_graph(const Graph& g) {
  std::ostringstream out;
  save_edge_list(g, out);
  return out.str();
}

/// The fixed 6-node moment-check graph: triangle 0-1-2, chain 0-3-4 and
/// pendant edge 4-5. Nodes 1 and 3 are non-adjacent with one common
/// neighbor (node 0); conditioning on an adjacent pair would shift the
/// conditional mean by the shared edge.
inline Graph lemma_graph() {
  const std::vector<std::pair<int, int>> edges = {{0, 1}, {0, 2}, {1, 2},
                                                  {0, 3}, {3, 4}, {4, 5}};
  return Graph::from_edges(6, edges);
}

struct PairMoments {
  double mean_i = 0, mean_j = 0;
  double var_i = 0, var_j = 0;
  double cov = 0;
  double se_mean_i = 0, se_mean_j = 0;
  double se_var_i = 0, se_var_j = 0;
  double se_cov = 0;
};

/// Empirical first and second moments of (d*_i, d*_j) over replicates
/// conditioned on both nodes being sampled, with asymptotic MC standard
/// errors for each statistic.
inline PairMoments pair_sample_moments(const Graph& g, int node_i, int node_j, double p,
                                       int replicates, std::uint64_t seed) {
  std::vector<double> xs(static_cast<std::size_t>(replicates));
  std::vector<double> ys(static_cast<std::size_t>(replicates));
  const std::array<int, 2> forced = {node_i, node_j};
  for (int r = 0; r < replicates; ++r) {
    const SampleResult s = induced_subgraph_sample_forced(
        g, p, derive_seed(seed, static_cast<std::uint64_t>(r)), forced);
    int idx_i = -1, idx_j = -1;
    for (int k = 0; k < s.n(); ++k) {
      if (s.parent_ids[static_cast<std::size_t>(k)] == node_i) idx_i = k;
      if (s.parent_ids[static_cast<std::size_t>(k)] == node_j) idx_j = k;
    }
    xs[static_cast<std::size_t>(r)] = s.subgraph.degree(idx_i);
    ys[static_cast<std::size_t>(r)] = s.subgraph.degree(idx_j);
  }

  PairMoments m;
  const double n = replicates;
  for (int r = 0; r < replicates; ++r) {
    m.mean_i += xs[static_cast<std::size_t>(r)];
    m.mean_j += ys[static_cast<std::size_t>(r)];
  }
  m.mean_i /= n;
  m.mean_j /= n;
  double m2x = 0, m2y = 0, m4x = 0, m4y = 0, mxy = 0, m22 = 0;
  for (int r = 0; r < replicates; ++r) {
    const double dx = xs[static_cast<std::size_t>(r)] - m.mean_i;
    const double dy = ys[static_cast<std::size_t>(r)] - m.mean_j;
    m2x += dx * dx;
    m2y += dy * dy;
    m4x += dx * dx * dx * dx;
    m4y += dy * dy * dy * dy;
    mxy += dx * dy;
    m22 += dx * dx * dy * dy;
  }
  m2x /= n; m2y /= n; m4x /= n; m4y /= n; mxy /= n; m22 /= n;
  m.var_i = m2x;
  m.var_j = m2y;
  m.cov = mxy;
  m.se_mean_i = std::sqrt(m2x / n);
  m.se_mean_j = std::sqrt(m2y / n);
  m.se_var_i = std::sqrt(std::max(0.0, m4x - m2x * m2x) / n);
  m.se_var_j = std::sqrt(std::max(0.0, m4y - m2y * m2y) / n);
  m.se_cov = std::sqrt(std::max(0.0, m22 - mxy * mxy) / n);
  return m;
}

struct CommandResult {
  int exit_code = -1;
  std::string output;  // stdout only
};

inline CommandResult run_command(const std::string& cmd) {
  CommandResult res;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return res;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) res.output.append(buf, got);
  const int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

inline std::string read_file(const std::string& path) {
  std::ostringstream out;
  std::ifstream in(path, std::ios::binary);
  out << in.rdbuf();
  return out.str();
}

}  // namespace degest::test
