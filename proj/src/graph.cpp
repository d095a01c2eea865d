#include "degest/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "degest/rng.hpp"

namespace degest {

namespace {

struct EdgeRec {
  int u;
  int v;
  std::uint32_t line;
};

}  // namespace

int Graph::check(int u) const {
  if (u < 0 || u >= num_nodes())
    throw std::out_of_range("node id " + std::to_string(u) + " out of range [0, " +
                            std::to_string(num_nodes()) + ")");
  return u;
}

bool Graph::has_edge(int u, int v) const {
  const auto& nu = neighbors(u);
  check(v);
  return std::binary_search(nu.begin(), nu.end(), v);
}

double Graph::sparsity() const {
  const double n = num_nodes();
  if (n < 2) return 0.0;
  return static_cast<double>(num_edges_) / (n * (n - 1.0) / 2.0);
}

Graph Graph::from_edges(int num_nodes, std::span<const std::pair<int, int>> edges) {
  if (num_nodes < 0) throw std::invalid_argument("num_nodes must be >= 0");
  Graph g;
  g.adj_.assign(static_cast<std::size_t>(num_nodes), {});
  for (const auto& [a, b] : edges) {
    if (a < 0 || b < 0 || a >= num_nodes || b >= num_nodes)
      throw std::invalid_argument("edge (" + std::to_string(a) + ", " + std::to_string(b) +
                                  ") out of range for " + std::to_string(num_nodes) + " nodes");
    if (a == b)
      throw std::invalid_argument("self-loop at node " + std::to_string(a));
    g.adj_[static_cast<std::size_t>(a)].push_back(b);
    g.adj_[static_cast<std::size_t>(b)].push_back(a);
  }
  for (auto& list : g.adj_) {
    std::sort(list.begin(), list.end());
    if (std::adjacent_find(list.begin(), list.end()) != list.end())
      throw std::invalid_argument("duplicate edge in input");
  }
  g.num_edges_ = static_cast<std::int64_t>(edges.size());
  return g;
}

Graph generate_er(int num_nodes, double edge_prob, std::uint64_t seed) {
  if (num_nodes < 0) throw ConfigError("generate_er: N must be >= 0");
  if (!(edge_prob >= 0.0 && edge_prob <= 1.0))
    throw ConfigError("generate_er: edge probability must lie in [0, 1]");
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < num_nodes; ++u) {
    for (int v = u + 1; v < num_nodes; ++v) {
      const std::uint64_t key =
          (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint64_t>(v);
      if (unit_double(hash_key(seed, rng_stream::er_edge, key)) < edge_prob)
        edges.emplace_back(u, v);
    }
  }
  return Graph::from_edges(num_nodes, edges);
}

std::vector<int> power_law_degree_sequence(int num_nodes, double exponent, int d_min,
                                           int d_max, std::uint64_t seed) {
  if (num_nodes < 0) throw ConfigError("power_law_degree_sequence: N must be >= 0");
  if (d_min < 1 || d_min > d_max)
    throw ConfigError("power_law_degree_sequence: need 1 <= d_min <= d_max");
  if (!(exponent > 1.0)) throw ConfigError("power_law_degree_sequence: exponent must exceed 1");

  std::vector<double> cum(static_cast<std::size_t>(d_max - d_min + 1));
  double total = 0.0;
  for (int d = d_min; d <= d_max; ++d) {
    total += std::exp(-exponent * std::log(static_cast<double>(d)));
    cum[static_cast<std::size_t>(d - d_min)] = total;
  }
  for (auto& c : cum) c /= total;
  cum.back() = 1.0;

  std::vector<int> degs(static_cast<std::size_t>(num_nodes));
  long long sum = 0;
  for (int i = 0; i < num_nodes; ++i) {
    const double u = unit_double(hash_key(seed, rng_stream::degree_draw, static_cast<std::uint64_t>(i)));
    const auto it = std::lower_bound(cum.begin(), cum.end(), u);
    degs[static_cast<std::size_t>(i)] = d_min + static_cast<int>(it - cum.begin());
    sum += degs[static_cast<std::size_t>(i)];
  }
  if (sum % 2 != 0 && num_nodes > 0) {
    auto it = std::max_element(degs.begin(), degs.end());
    --*it;
  }
  return degs;
}

Graph configuration_model(const std::vector<int>& degrees, std::uint64_t seed) {
  const int n = static_cast<int>(degrees.size());
  std::vector<int> stubs;
  long long total = 0;
  for (int i = 0; i < n; ++i) {
    if (degrees[static_cast<std::size_t>(i)] < 0)
      throw ConfigError("configuration_model: negative degree");
    if (degrees[static_cast<std::size_t>(i)] > n - 1)
      throw ConfigError("configuration_model: degree exceeds N-1");
    total += degrees[static_cast<std::size_t>(i)];
  }
  if (total % 2 != 0) throw ConfigError("configuration_model: degree sum must be even");
  stubs.reserve(static_cast<std::size_t>(total));
  for (int i = 0; i < n; ++i)
    stubs.insert(stubs.end(), static_cast<std::size_t>(degrees[static_cast<std::size_t>(i)]), i);

  SplitMix64 rng(hash_key(seed, rng_stream::stub_shuffle));
  for (std::size_t i = stubs.size(); i > 1; --i)
    std::swap(stubs[i - 1], stubs[rng.bounded(i)]);

  std::vector<std::pair<int, int>> edges;
  edges.reserve(stubs.size() / 2);
  for (std::size_t k = 0; k + 1 < stubs.size(); k += 2) {
    int a = stubs[k], b = stubs[k + 1];
    if (a == b) continue;  // erase self-loop
    if (a > b) std::swap(a, b);
    edges.emplace_back(a, b);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());  // erase multi-edges
  return Graph::from_edges(n, edges);
}

namespace {

struct SupportCandidate {
  double rel_err;
  double erased;   // predicted erased-edge fraction
  int d_max_dist;  // |d_max - floor(sqrt(N))|
  int d_min;
  int d_max;
};

}  // namespace

PowerLawGraph generate_power_law(int num_nodes, double exponent, double target_sparsity,
                                 std::uint64_t seed) {
  if (num_nodes < 2) throw ConfigError("generate_power_law: N must be >= 2");
  if (!(exponent > 1.0)) throw ConfigError("generate_power_law: exponent must exceed 1");
  if (!(target_sparsity > 0.0 && target_sparsity < 1.0))
    throw ConfigError("generate_power_law: sparsity must lie in (0, 1)");

  const double target_mean = target_sparsity * (num_nodes - 1);
  const int sqrt_default = static_cast<int>(std::floor(std::sqrt(static_cast<double>(num_nodes))));
  const int cap = std::min(num_nodes - 1,
                           std::max({sqrt_default, 64, static_cast<int>(16.0 * target_mean) + 8}));

  // Prefix sums of d^(-m), d^(1-m) and d^(2-m) make each support's pmf mean
  // and second moment O(1).
  std::vector<double> s0(static_cast<std::size_t>(cap) + 1, 0.0);
  std::vector<double> s1(static_cast<std::size_t>(cap) + 1, 0.0);
  std::vector<double> s2(static_cast<std::size_t>(cap) + 1, 0.0);
  for (int d = 1; d <= cap; ++d) {
    const double w = std::exp(-exponent * std::log(static_cast<double>(d)));
    s0[static_cast<std::size_t>(d)] = s0[static_cast<std::size_t>(d) - 1] + w;
    s1[static_cast<std::size_t>(d)] = s1[static_cast<std::size_t>(d) - 1] + w * d;
    s2[static_cast<std::size_t>(d)] = s2[static_cast<std::size_t>(d) - 1] + w * d * d;
  }

  std::vector<SupportCandidate> cands;
  for (int lo = 1; lo <= cap; ++lo) {
    for (int hi = lo; hi <= cap; ++hi) {
      const double mass = s0[static_cast<std::size_t>(hi)] - s0[static_cast<std::size_t>(lo) - 1];
      const double mean = (s1[static_cast<std::size_t>(hi)] - s1[static_cast<std::size_t>(lo) - 1]) / mass;
      // Expected erased fraction of the stub pairing: self-loops plus
      // multi-edges relative to the edge count.
      const double mean_sq = (s2[static_cast<std::size_t>(hi)] - s2[static_cast<std::size_t>(lo) - 1]) / mass;
      const double ratio = mean_sq / mean;
      const double erased = std::min(
          0.5, ((ratio - 1.0) * (ratio - 1.0) / 4.0 + (ratio - 1.0) / 2.0) / (num_nodes * mean / 2.0));
      const double rel = std::abs(mean * (1.0 - erased) - target_mean) / target_mean;
      if (rel > 0.25) continue;
      cands.push_back({rel, erased, std::abs(hi - sqrt_default), lo, hi});
    }
  }
  // Candidates whose predicted realized mean lands comfortably inside the
  // tolerance rank first; among them prefer the generator's default
  // d_max = floor(sqrt(N)), then the widest support (a single-degree support
  // is a last resort). The rest rank by predicted closeness alone.
  std::sort(cands.begin(), cands.end(), [](const SupportCandidate& a, const SupportCandidate& b) {
    const bool a_good = a.rel_err <= 0.05 && a.erased <= 0.08;
    const bool b_good = b.rel_err <= 0.05 && b.erased <= 0.08;
    if (a_good != b_good) return a_good;
    if (a_good) {
      const bool a_def = a.d_max_dist == 0, b_def = b.d_max_dist == 0;
      if (a_def != b_def) return a_def;
      const int a_span = a.d_max - a.d_min, b_span = b.d_max - b.d_min;
      if (a_span != b_span) return a_span > b_span;
      if (a.rel_err != b.rel_err) return a.rel_err < b.rel_err;
    } else {
      if (a.rel_err != b.rel_err) return a.rel_err < b.rel_err;
      if (a.d_max_dist != b.d_max_dist) return a.d_max_dist < b.d_max_dist;
    }
    if (a.d_min != b.d_min) return a.d_min < b.d_min;
    return a.d_max < b.d_max;
  });

  std::string attempts;
  constexpr int kMaxTries = 12;
  int tried = 0;
  std::vector<std::pair<int, int>> tried_supports;
  for (const auto& c : cands) {
    if (tried >= kMaxTries) break;
    // Skip near-duplicates of supports already tried; retrying an almost
    // identical support cannot change the outcome.
    bool near_dup = false;
    for (const auto& [lo, hi] : tried_supports) {
      if (std::abs(c.d_min - lo) <= 1 && std::abs(c.d_max - hi) <= std::max(2, hi / 10)) {
        near_dup = true;
        break;
      }
    }
    if (near_dup) continue;
    ++tried;
    tried_supports.emplace_back(c.d_min, c.d_max);
    auto degs = power_law_degree_sequence(num_nodes, exponent, c.d_min, c.d_max, seed);
    Graph g = configuration_model(degs, seed);
    const double realized = g.sparsity();
    if (std::abs(realized / target_sparsity - 1.0) <= 0.10)
      return {std::move(g), c.d_min, c.d_max, realized};
    attempts += " [d_min=" + std::to_string(c.d_min) + ", d_max=" + std::to_string(c.d_max) +
                " -> " + std::to_string(realized) + "]";
  }
  throw NumericError(
      "generate_power_law: no degree support in the search range realizes sparsity " +
      std::to_string(target_sparsity) + " within 10% (N=" + std::to_string(num_nodes) +
      ", m=" + std::to_string(exponent) + "); attempts:" + (attempts.empty() ? " none" : attempts));
}

namespace {

bool parse_int_token(const char* begin, const char* end, int& out) {
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end && out >= 0;
}

}  // namespace

Graph load_edge_list(std::istream& in) {
  std::vector<EdgeRec> recs;
  int max_id = -1;
  long long header_nodes = -1;
  std::uint32_t line_no = 0;
  std::string line;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos) continue;
    if (line[start] == '#') {
      // Comment, unless it is the "# nodes=N" header.
      std::size_t pos = line.find_first_not_of(" \t", start + 1);
      if (pos != std::string::npos && line.compare(pos, 6, "nodes=") == 0) {
        int n = 0;
        const char* b = line.data() + pos + 6;
        if (!parse_int_token(b, line.data() + line.size(), n))
          throw ConfigError("line " + std::to_string(line_no) + ": malformed nodes= header");
        if (header_nodes >= 0)
          throw ConfigError("line " + std::to_string(line_no) + ": duplicate nodes= header");
        header_nodes = n;
      }
      continue;
    }
    // Expect exactly two whitespace-separated non-negative integers.
    const char* p = line.data() + start;
    const char* end = line.data() + line.size();
    const char* t1e = p;
    while (t1e < end && *t1e != ' ' && *t1e != '\t') ++t1e;
    const char* t2b = t1e;
    while (t2b < end && (*t2b == ' ' || *t2b == '\t')) ++t2b;
    const char* t2e = t2b;
    while (t2e < end && *t2e != ' ' && *t2e != '\t') ++t2e;
    const char* rest = t2e;
    while (rest < end && (*rest == ' ' || *rest == '\t')) ++rest;
    int u = 0, v = 0;
    if (t2b == t2e || rest != end || !parse_int_token(p, t1e, u) || !parse_int_token(t2b, t2e, v))
      throw ConfigError("line " + std::to_string(line_no) + ": expected two non-negative node ids");
    if (u == v)
      throw ConfigError("line " + std::to_string(line_no) + ": self-loop at node " + std::to_string(u));
    if (u > v) std::swap(u, v);
    recs.push_back({u, v, line_no});
    max_id = std::max(max_id, v);
  }

  int num_nodes = max_id + 1;
  if (header_nodes >= 0) {
    if (max_id >= header_nodes)
      throw ConfigError("node id " + std::to_string(max_id) + " exceeds nodes=" +
                        std::to_string(header_nodes) + " header");
    num_nodes = static_cast<int>(header_nodes);
  }

  std::sort(recs.begin(), recs.end(), [](const EdgeRec& a, const EdgeRec& b) {
    if (a.u != b.u) return a.u < b.u;
    if (a.v != b.v) return a.v < b.v;
    return a.line < b.line;
  });
  for (std::size_t i = 1; i < recs.size(); ++i) {
    if (recs[i].u == recs[i - 1].u && recs[i].v == recs[i - 1].v)
      throw ConfigError("line " + std::to_string(recs[i].line) + ": duplicate edge (" +
                        std::to_string(recs[i].u) + ", " + std::to_string(recs[i].v) + ")");
  }

  Graph g;
  g.adj_.assign(static_cast<std::size_t>(num_nodes), {});
  {
    std::vector<int> deg(static_cast<std::size_t>(num_nodes), 0);
    for (const auto& r : recs) {
      ++deg[static_cast<std::size_t>(r.u)];
      ++deg[static_cast<std::size_t>(r.v)];
    }
    for (int u = 0; u < num_nodes; ++u) g.adj_[static_cast<std::size_t>(u)].reserve(static_cast<std::size_t>(deg[static_cast<std::size_t>(u)]));
  }
  for (const auto& r : recs) {
    g.adj_[static_cast<std::size_t>(r.u)].push_back(r.v);
    g.adj_[static_cast<std::size_t>(r.v)].push_back(r.u);
  }
  g.num_edges_ = static_cast<std::int64_t>(recs.size());
  return g;
}

Graph load_edge_list_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open graph file: " + path);
  return load_edge_list(in);
}

void save_edge_list(const Graph& g, std::ostream& out) {
  out << "# nodes=" << g.num_nodes() << "\n";
  for (int u = 0; u < g.num_nodes(); ++u)
    for (int v : g.neighbors(u))
      if (v > u) out << u << ' ' << v << "\n";
}

VecXi degree_vector(const Graph& g, std::span<const int> nodes) {
  VecXi out(static_cast<Eigen::Index>(nodes.size()));
  for (std::size_t i = 0; i < nodes.size(); ++i)
    out[static_cast<Eigen::Index>(i)] = g.degree(nodes[i]);
  return out;
}

VecXi degree_vector(const Graph& g) {
  VecXi out(g.num_nodes());
  for (int u = 0; u < g.num_nodes(); ++u) out[u] = g.degree(u);
  return out;
}

MatXi common_neighbor_matrix(const Graph& g, std::span<const int> nodes) {
  const auto k = static_cast<Eigen::Index>(nodes.size());
  MatXi out(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    out(i, i) = g.degree(nodes[static_cast<std::size_t>(i)]);
    const auto& ni = g.neighbors(nodes[static_cast<std::size_t>(i)]);
    for (Eigen::Index j = i + 1; j < k; ++j) {
      const auto& nj = g.neighbors(nodes[static_cast<std::size_t>(j)]);
      int count = 0;
      auto a = ni.begin();
      auto b = nj.begin();
      while (a != ni.end() && b != nj.end()) {
        if (*a < *b) ++a;
        else if (*b < *a) ++b;
        else { ++count; ++a; ++b; }
      }
      out(i, j) = count;
      out(j, i) = count;
    }
  }
  return out;
}

}  // namespace degest
