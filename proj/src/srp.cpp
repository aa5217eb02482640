#include "restore/srp.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace restore {

namespace {

void validate_path(const UndirectedGraph& h, Vertex s, Vertex t, const Path& p) {
  if (p.vertices.empty() || p.vertices.front() != s || p.vertices.back() != t)
    fail(Errc::p_not_shortest, "path endpoints do not match the query");
  for (std::size_t i = 0; i + 1 < p.vertices.size(); ++i)
    if (!h.has_edge(p.vertices[i], p.vertices[i + 1]))
      fail(Errc::p_not_shortest, "path uses a non-edge");
  auto d = bfs_distances(h, s)[t];
  if (!d || *d != p.hops())
    fail(Errc::p_not_shortest, "path length differs from the s..t distance");
}

// Index of the deepest path vertex that is an ancestor in a BFS tree rooted
// at the path's endpoint, where the tree is forced to contain the path
// itself and all other parents are the smallest-id neighbor one layer
// closer. path_index is the on-path position (or -1), dist the BFS layers.
// Returns -1 for vertices unreachable from the root.
std::vector<std::int64_t> branch_indices(const UndirectedGraph& h,
                                         const std::vector<HopDist>& dist,
                                         const std::vector<std::int64_t>& path_index) {
  const std::size_t n = h.n();
  std::vector<std::int64_t> branch(n, -1);
  std::vector<Vertex> order;
  order.reserve(n);
  for (Vertex v = 0; v < n; ++v)
    if (dist[v]) order.push_back(v);
  std::sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
    return *dist[a] != *dist[b] ? *dist[a] < *dist[b] : a < b;
  });
  for (Vertex v : order) {
    if (path_index[v] >= 0) {
      branch[v] = path_index[v];
      continue;
    }
    std::uint32_t dv = *dist[v];
    for (Vertex u : h.adj(v)) {
      if (dist[u] && *dist[u] + 1 == dv) {
        branch[v] = branch[u];
        break;  // adjacency is sorted: smallest-id parent
      }
    }
  }
  return branch;
}

}  // namespace

EdgeFailureDistances single_pair_rp(const UndirectedGraph& h, Vertex s, Vertex t, const Path& p) {
  validate_path(h, s, t, p);
  const std::size_t len = p.vertices.size() - 1;
  EdgeFailureDistances out;
  if (len == 0) return out;

  const std::size_t n = h.n();
  auto ds = bfs_distances(h, s);
  auto dt = bfs_distances(h, t);

  std::vector<std::int64_t> pos(n, -1);
  for (std::size_t i = 0; i < p.vertices.size(); ++i) pos[p.vertices[i]] = static_cast<std::int64_t>(i);

  // branch index toward s: deepest on-path ancestor in a BFS tree containing
  // the path prefix; symmetric structure from the t side.
  auto ks = branch_indices(h, ds, pos);
  auto kt = branch_indices(h, dt, pos);

  std::set<Edge> path_edges;
  for (std::size_t i = 0; i < len; ++i)
    path_edges.insert(Edge::make(p.vertices[i], p.vertices[i + 1]));

  // A candidate crossing arc (u,v) bypasses failures in [ks(u), kt(v)-1]
  // with detour length ds(u) + 1 + dt(v).
  struct Interval {
    std::size_t lo, hi;
    std::uint64_t value;
  };
  std::vector<Interval> intervals;
  auto add_arc = [&](Vertex u, Vertex v) {
    if (!ds[u] || !dt[v]) return;
    if (ks[u] < 0 || kt[v] < 1) return;
    std::int64_t lo = ks[u];
    std::int64_t hi = kt[v] - 1;
    if (lo > hi) return;
    intervals.push_back({static_cast<std::size_t>(lo), static_cast<std::size_t>(hi),
                         static_cast<std::uint64_t>(*ds[u]) + 1 + *dt[v]});
  };
  for (Edge e : h.edges()) {
    if (path_edges.count(e)) continue;
    add_arc(e.u, e.v);
    add_arc(e.v, e.u);
  }

  std::vector<std::vector<std::uint64_t>> starting(len), ending(len);
  for (const auto& iv : intervals) {
    if (iv.lo >= len) continue;
    starting[iv.lo].push_back(iv.value);
    ending[std::min(iv.hi, len - 1)].push_back(iv.value);
  }
  std::multiset<std::uint64_t> active;
  for (std::size_t i = 0; i < len; ++i) {
    for (auto v : starting[i]) active.insert(v);
    Edge e = Edge::make(p.vertices[i], p.vertices[i + 1]);
    HopDist d;
    if (!active.empty()) d = static_cast<std::uint32_t>(*active.begin());
    out.emplace_back(e, d);
    for (auto v : ending[i]) active.erase(active.find(v));
  }
  return out;
}

EdgeFailureDistances single_pair_rp_reference(const UndirectedGraph& h, Vertex s, Vertex t,
                                              const Path& p) {
  validate_path(h, s, t, p);
  EdgeFailureDistances out;
  for (std::size_t i = 0; i + 1 < p.vertices.size(); ++i) {
    Edge e = Edge::make(p.vertices[i], p.vertices[i + 1]);
    out.emplace_back(e, bfs_distances(h, s, FaultSet{e})[t]);
  }
  return out;
}

nlohmann::json SrpOutput::to_json() const {
  nlohmann::json j;
  j["seed"] = seed;
  auto arr = nlohmann::json::array();
  for (const auto& pr : pairs) {
    nlohmann::json pj;
    pj["s"] = pr.s;
    pj["t"] = pr.t;
    if (pr.base)
      pj["base"] = *pr.base;
    else
      pj["base"] = nullptr;
    auto fails = nlohmann::json::array();
    for (const auto& [e, d] : pr.failures) {
      nlohmann::json fj;
      fj["u"] = e.u;
      fj["v"] = e.v;
      if (d)
        fj["dist"] = *d;
      else
        fj["dist"] = nullptr;
      fails.push_back(fj);
    }
    pj["failures"] = fails;
    arr.push_back(pj);
  }
  j["pairs"] = arr;
  return j;
}

SrpOutput srp(const UndirectedGraph& g, std::vector<Vertex> sources, std::uint64_t seed,
              const SrpOptions& opts) {
  if (sources.empty()) fail(Errc::invalid_params, "srp needs a nonempty source set");
  for (Vertex s : sources)
    if (s >= g.n()) fail(Errc::invalid_params, "source out of range");
  std::sort(sources.begin(), sources.end());
  sources.erase(std::unique(sources.begin(), sources.end()), sources.end());

  PerturbedDigraph pd = perturb(g, seed, opts.perturbation_bound);
  Rpts rpts(std::move(pd));

  std::map<Vertex, std::shared_ptr<const Spt>> trees;
  for (Vertex s : sources) trees[s] = rpts.spt(s);

  SrpOutput out;
  out.seed = rpts.perturbed().seed;
  for (std::size_t i = 0; i < sources.size(); ++i) {
    for (std::size_t j = i + 1; j < sources.size(); ++j) {
      Vertex s1 = sources[i], s2 = sources[j];
      SrpPair pair;
      pair.s = s1;
      pair.t = s2;
      auto path = trees[s1]->path_to(s2);
      if (!path) {
        out.pairs.push_back(std::move(pair));
        continue;
      }
      pair.base = path->hops();
      std::vector<Edge> union_edges = trees[s1]->tree_edges();
      auto e2 = trees[s2]->tree_edges();
      union_edges.insert(union_edges.end(), e2.begin(), e2.end());
      std::sort(union_edges.begin(), union_edges.end());
      union_edges.erase(std::unique(union_edges.begin(), union_edges.end()), union_edges.end());
      UndirectedGraph u = UndirectedGraph::from_edges(g.n(), union_edges);
      pair.failures = single_pair_rp(u, s1, s2, *path);
      if (opts.check_reference) {
        auto ref = single_pair_rp_reference(u, s1, s2, *path);
        if (ref != pair.failures)
          fail(Errc::internal_error, "interval sweep disagrees with the quadratic reference");
      }
      out.pairs.push_back(std::move(pair));
    }
  }
  return out;
}

}  // namespace restore
