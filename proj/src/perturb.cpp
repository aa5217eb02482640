#include "restore/perturb.hpp"

#include <algorithm>
#include <limits>
#include <ostream>
#include <queue>

#include "restore/rng.hpp"

namespace restore {

std::int64_t default_perturbation_bound(std::size_t n) {
  if (n < 2) return 8;
  auto k = static_cast<std::int64_t>(n) * static_cast<std::int64_t>(n) *
           static_cast<std::int64_t>(n);
  return std::max<std::int64_t>(k, 8);
}

PerturbedDigraph perturb_uncertified(const UndirectedGraph& g, std::uint64_t seed,
                                     std::int64_t bound) {
  if (bound < 1) fail(Errc::invalid_params, "perturbation bound must be >= 1");
  // Path sums and sums of two path weights must stay in int64.
  if (g.n() > 0 &&
      bound > std::numeric_limits<std::int64_t>::max() / (4 * static_cast<std::int64_t>(g.n()) + 4))
    fail(Errc::invalid_params, "perturbation bound too large for this vertex count");
  PerturbedDigraph pd;
  pd.base = g;
  pd.bound = bound;
  pd.seed = seed;
  pd.forward.resize(g.edge_count());
  for (std::size_t id = 0; id < g.edge_count(); ++id) {
    Edge e = g.edges()[id];
    pd.forward[id] = symmetric_from_bits(derive(seed, e.u, e.v, 0x72656477ull), bound);
  }
  return pd;
}

PerturbedDigraph perturb(const UndirectedGraph& g, std::uint64_t seed, std::int64_t bound,
                         int max_retries) {
  if (bound == 0) bound = default_perturbation_bound(g.n());
  for (int attempt = 0; attempt <= max_retries; ++attempt) {
    PerturbedDigraph pd = perturb_uncertified(g, seed + static_cast<std::uint64_t>(attempt), bound);
    pd.retries = attempt;
    bool tie = false;
    for (Vertex s = 0; s < g.n() && !tie; ++s) {
      try {
        dijkstra_sssp(pd, s);
      } catch (const Error& e) {
        if (e.code() != Errc::tie_detected) throw;
        tie = true;
      }
    }
    if (!tie) return pd;
  }
  fail(Errc::tie_unresolved, "no tie-free assignment after " + std::to_string(max_retries) +
                                 " resamples (bound " + std::to_string(bound) + ")");
}

std::optional<Path> Spt::path_to(Vertex t) const {
  if (t >= dist.size()) fail(Errc::invalid_params, "path_to target out of range");
  if (t == source) return Path{{source}, PathWeight{}};
  if (!dist[t]) return std::nullopt;
  Path p;
  p.weight = *dist[t];
  Vertex cur = t;
  while (cur != kNoVertex) {
    p.vertices.push_back(cur);
    if (cur == source) break;
    cur = parent[cur];
  }
  std::reverse(p.vertices.begin(), p.vertices.end());
  return p;
}

std::vector<Edge> Spt::tree_edges() const {
  std::vector<Edge> out;
  for (Vertex v = 0; v < parent.size(); ++v)
    if (parent[v] != kNoVertex) out.push_back(Edge::make(parent[v], v));
  std::sort(out.begin(), out.end());
  return out;
}

Spt dijkstra_sssp(const PerturbedDigraph& pd, Vertex s, const FaultSet& faults) {
  const UndirectedGraph& g = pd.base;
  if (s >= g.n()) fail(Errc::invalid_params, "dijkstra source out of range");

  Spt t;
  t.source = s;
  t.faults = faults;
  t.dist.resize(g.n());
  t.parent.assign(g.n(), kNoVertex);

  using Item = std::pair<PathWeight, Vertex>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  std::vector<char> settled(g.n(), 0);
  // Equal-weight relaxations are only genuine ties if they match the final
  // distance, so they are recorded and re-checked after the run.
  struct TieCandidate {
    Vertex v;
    PathWeight w;
    Vertex other;
  };
  std::vector<TieCandidate> candidates;

  t.dist[s] = PathWeight{};
  heap.push({PathWeight{}, s});
  while (!heap.empty()) {
    auto [du, u] = heap.top();
    heap.pop();
    if (settled[u] || *t.dist[u] != du) continue;
    settled[u] = 1;
    for (Vertex v : g.adj(u)) {
      if (!faults.empty() && faults.contains(u, v)) continue;
      PathWeight cand = du + PathWeight{1, pd.r(u, v)};
      if (!t.dist[v] || cand < *t.dist[v]) {
        t.dist[v] = cand;
        t.parent[v] = u;
        heap.push({cand, v});
      } else if (cand == *t.dist[v] && t.parent[v] != u) {
        candidates.push_back({v, cand, u});
      }
    }
  }
  for (const auto& c : candidates) {
    if (t.dist[c.v] && *t.dist[c.v] == c.w)
      fail(Errc::tie_detected, "shortest-path tie at vertex " + std::to_string(c.v) +
                                   " from source " + std::to_string(s));
  }
  return t;
}

void dump_perturbation(const PerturbedDigraph& pd, std::ostream& out) {
  for (std::size_t id = 0; id < pd.base.edge_count(); ++id) {
    Edge e = pd.base.edges()[id];
    std::int64_t r = pd.forward[id];
    if (r >= 0)
      out << e.u << ' ' << e.v << ' ' << r << '\n';
    else
      out << e.v << ' ' << e.u << ' ' << -r << '\n';
  }
}

}  // namespace restore
