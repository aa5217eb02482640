#include "restore/generators.hpp"

#include <cmath>

#include "restore/rng.hpp"

namespace restore {

UndirectedGraph gen_gnp(std::size_t n, double p, std::uint64_t seed) {
  if (p < 0.0 || p > 1.0) fail(Errc::invalid_params, "gnp probability outside [0,1]");
  std::vector<Edge> edges;
  const double scale = 18446744073709551616.0;  // 2^64
  for (Vertex u = 0; u + 1 < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) {
      double roll = static_cast<double>(derive(seed, u, v, 0x676e70ull)) / scale;
      if (roll < p) edges.push_back({u, v});
    }
  return UndirectedGraph::from_edges(n, edges);
}

UndirectedGraph gen_cycle(std::size_t n) {
  if (n < 3) fail(Errc::invalid_params, "cycle needs n >= 3");
  std::vector<Edge> edges;
  for (Vertex v = 0; v < n; ++v) edges.push_back(Edge::make(v, static_cast<Vertex>((v + 1) % n)));
  return UndirectedGraph::from_edges(n, edges);
}

UndirectedGraph gen_path(std::size_t n) {
  if (n < 1) fail(Errc::invalid_params, "path needs n >= 1");
  std::vector<Edge> edges;
  for (Vertex v = 0; v + 1 < n; ++v) edges.push_back({v, static_cast<Vertex>(v + 1)});
  return UndirectedGraph::from_edges(n, edges);
}

UndirectedGraph gen_star(std::size_t n) {
  if (n < 2) fail(Errc::invalid_params, "star needs n >= 2");
  std::vector<Edge> edges;
  for (Vertex v = 1; v < n; ++v) edges.push_back({0, v});
  return UndirectedGraph::from_edges(n, edges);
}

UndirectedGraph gen_complete(std::size_t n) {
  if (n < 2) fail(Errc::invalid_params, "complete graph needs n >= 2");
  std::vector<Edge> edges;
  for (Vertex u = 0; u + 1 < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) edges.push_back({u, v});
  return UndirectedGraph::from_edges(n, edges);
}

UndirectedGraph gen_grid(std::size_t rows, std::size_t cols) {
  if (rows < 1 || cols < 1) fail(Errc::invalid_params, "grid needs positive dimensions");
  auto id = [cols](std::size_t r, std::size_t c) { return static_cast<Vertex>(r * cols + c); };
  std::vector<Edge> edges;
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      if (c + 1 < cols) edges.push_back({id(r, c), id(r, c + 1)});
      if (r + 1 < rows) edges.push_back({id(r, c), id(r + 1, c)});
    }
  return UndirectedGraph::from_edges(rows * cols, edges);
}

}  // namespace restore
