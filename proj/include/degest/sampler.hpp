#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "degest/graph.hpp"
#include "degest/types.hpp"

namespace degest {

/// An induced subgraph sample: the subgraph on the retained nodes
/// (re-indexed 0..n-1), the map back to parent node ids, and the sampling
/// probability. Immutable.
struct SampleResult {
  Graph subgraph;
  std::vector<int> parent_ids;  // sampled index -> parent node id, ascending
  double p = 1.0;

  int n() const noexcept { return static_cast<int>(parent_ids.size()); }
};

/// Retains each node independently with probability p and keeps exactly the
/// parent edges between retained nodes. Inclusion decisions are keyed by
/// (seed, node id), so they do not depend on iteration order. p = 0 yields
/// an empty sample.
SampleResult induced_subgraph_sample(const Graph& g, double p, std::uint64_t seed);

/// Same design, but the listed nodes are always retained. The remaining
/// nodes use the identical per-node decisions as the unforced sampler, which
/// makes this the exact conditional distribution given the forced inclusions.
SampleResult induced_subgraph_sample_forced(const Graph& g, double p, std::uint64_t seed,
                                            std::span<const int> forced);

/// Degrees within the sampled subgraph, aligned with parent_ids order.
VecXi observed_degrees(const SampleResult& s);

}  // namespace degest
