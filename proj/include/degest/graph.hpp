#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "degest/types.hpp"

namespace degest {

/// Undirected simple graph over node ids 0..N-1. Immutable after
/// construction; adjacency lists are kept sorted.
class Graph {
 public:
  Graph() = default;

  /// Builds from an edge list. Rejects self-loops and duplicate edges.
  static Graph from_edges(int num_nodes,
                          std::span<const std::pair<int, int>> edges);

  int num_nodes() const noexcept { return static_cast<int>(adj_.size()); }
  std::int64_t num_edges() const noexcept { return num_edges_; }

  const std::vector<int>& neighbors(int u) const { return adj_[check(u)]; }
  int degree(int u) const { return static_cast<int>(adj_[check(u)].size()); }
  bool has_edge(int u, int v) const;

  /// |E| / C(N,2); zero for N < 2.
  double sparsity() const;

 private:
  int check(int u) const;

  std::vector<std::vector<int>> adj_;
  std::int64_t num_edges_ = 0;

  friend Graph load_edge_list(std::istream&);
};

/// G(N, p_e): every unordered pair joined independently with probability p_e.
/// Pair decisions are keyed by (seed, u, v), so the result is reproducible
/// bit for bit.
Graph generate_er(int num_nodes, double edge_prob, std::uint64_t seed);

/// Draws `num_nodes` degrees iid from the pmf proportional to d^(-exponent)
/// on [d_min, d_max], then makes the total even by decrementing the first
/// maximal entry if necessary.
std::vector<int> power_law_degree_sequence(int num_nodes, double exponent,
                                           int d_min, int d_max,
                                           std::uint64_t seed);

/// Configuration model: random stub pairing with self-loops and multi-edges
/// erased afterwards.
Graph configuration_model(const std::vector<int>& degrees, std::uint64_t seed);

struct PowerLawGraph {
  Graph graph;
  int d_min = 0;
  int d_max = 0;
  double realized_sparsity = 0.0;
};

/// Power-law graph whose realized edge ratio lands within 10% relative of
/// `target_sparsity`. The pmf support [d_min, d_max] is tuned to meet the
/// target; throws NumericError with a diagnostic when no support can.
PowerLawGraph generate_power_law(int num_nodes, double exponent,
                                 double target_sparsity, std::uint64_t seed);

/// Parses the edge-list format: '#' comment lines (an optional "# nodes=N"
/// header fixes N), then one "u v" pair per line. Streams the input once;
/// self-loops, duplicates and malformed tokens are reported with their line
/// number.
Graph load_edge_list(std::istream& in);
Graph load_edge_list_file(const std::string& path);

/// Writes the same format, including the "# nodes=N" header so isolated
/// nodes round-trip. Deterministic byte-for-byte.
void save_edge_list(const Graph& g, std::ostream& out);

/// Degrees within g (the full graph) of the listed nodes, in list order.
VecXi degree_vector(const Graph& g, std::span<const int> nodes);
VecXi degree_vector(const Graph& g);

/// Symmetric matrix over the listed nodes: diagonal holds degrees in g,
/// off-diagonal (i,j) the number of common neighbors of nodes[i] and
/// nodes[j] in g. Equals the adjacency square restricted to the node set.
MatXi common_neighbor_matrix(const Graph& g, std::span<const int> nodes);

}  // namespace degest
