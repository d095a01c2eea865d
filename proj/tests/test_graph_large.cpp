#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "degest/graph.hpp"

using namespace degest;

// Ingestion at the scale of a real contact network: 10,200,838 edge lines
// streamed from disk. The writer enumerates pairs (i, i+t) stride by stride,
// which is duplicate-free by construction.
TEST_CASE("streaming ingestion of a ten-million-line edge list") {
  const int n = 31'248;
  const long long target_edges = 10'200'838;
  const auto path = std::filesystem::temp_directory_path() / "degest_large_edges.txt";

  {
    std::ofstream out(path, std::ios::binary);
    REQUIRE(out.good());
    out << "# nodes=" << n << "\n";
    char buf[32];
    long long written = 0;
    for (int stride = 1; written < target_edges && stride < n; ++stride) {
      for (int i = 0; i + stride < n && written < target_edges; ++i) {
        const int len = std::snprintf(buf, sizeof(buf), "%d %d\n", i, i + stride);
        out.write(buf, len);
        ++written;
      }
    }
    REQUIRE(written == target_edges);
  }

  const Graph g = load_edge_list_file(path.string());
  CHECK(g.num_nodes() == n);
  CHECK(g.num_edges() == target_edges);
  CHECK(degree_vector(g).cast<std::int64_t>().sum() == 2 * target_edges);

  std::filesystem::remove(path);
}
