#include "restore/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "restore/rng.hpp"

namespace restore {

nlohmann::json PropertyReport::to_json() const {
  nlohmann::json j;
  j["property"] = property;
  j["pass"] = pass;
  j["instances_checked"] = instances_checked;
  if (counterexample) {
    nlohmann::json c;
    c["s"] = counterexample->s;
    c["t"] = counterexample->t;
    auto faults = nlohmann::json::array();
    for (Edge e : counterexample->faults) faults.push_back({e.u, e.v});
    c["faults"] = faults;
    c["detail"] = counterexample->detail;
    j["counterexample"] = c;
  }
  if (!notes.empty()) j["notes"] = notes;
  return j;
}

HopDist oracle_replacement_distance(const UndirectedGraph& g, Vertex s, Vertex t,
                                    const FaultSet& faults) {
  return bfs_distances(g, s, faults)[t];
}

std::uint64_t for_each_fault_set(const UndirectedGraph& g, int f_max, bool include_empty,
                                 const std::function<bool(const FaultSet&)>& fn) {
  std::uint64_t visited = 0;
  const std::size_t m = g.edge_count();
  for (int k = include_empty ? 0 : 1; k <= f_max; ++k) {
    if (static_cast<std::size_t>(k) > m) break;
    std::vector<std::size_t> ids(k);
    for (int i = 0; i < k; ++i) ids[i] = static_cast<std::size_t>(i);
    for (;;) {
      std::vector<Edge> edges;
      edges.reserve(k);
      for (std::size_t id : ids) edges.push_back(g.edges()[id]);
      ++visited;
      if (!fn(FaultSet(std::move(edges)))) return visited;
      // next combination
      int i = k - 1;
      while (i >= 0 && ids[i] == m - static_cast<std::size_t>(k - i)) --i;
      if (i < 0) break;
      ++ids[i];
      for (int j = i + 1; j < k; ++j) ids[j] = ids[j - 1] + 1;
    }
  }
  return visited;
}

namespace {

// Scratch for simplicity checks, reused across millions of splices.
thread_local std::vector<std::uint32_t> g_stamp;
thread_local std::uint32_t g_epoch = 0;

bool mark_fresh(Vertex v) {
  if (v >= g_stamp.size()) g_stamp.resize(v + 1, 0);
  if (g_stamp[v] == g_epoch) return false;
  g_stamp[v] = g_epoch;
  return true;
}

bool use_fault_sampling(const UndirectedGraph& g, int f_max, const CheckOptions& opts) {
  if (g.n() > opts.full_vertex_limit) return true;
  double work = std::pow(static_cast<double>(std::max<std::size_t>(g.edge_count(), 1)),
                         static_cast<double>(std::max(f_max, 1)));
  return work > opts.full_work_limit;
}

FaultSet random_fault_set(const UndirectedGraph& g, std::size_t k, SplitMix64& rng) {
  std::vector<Edge> edges;
  while (edges.size() < k && edges.size() < g.edge_count()) {
    Edge e = g.edges()[rng.below(g.edge_count())];
    if (std::find(edges.begin(), edges.end(), e) == edges.end()) edges.push_back(e);
  }
  return FaultSet(std::move(edges));
}

}  // namespace

bool valid_restoration(const Path& s_to_x, const Path& t_to_x, const FaultSet& avoid,
                       std::uint32_t required) {
  if (s_to_x.hops() + t_to_x.hops() != required) return false;
  if (s_to_x.vertices.back() != t_to_x.vertices.back()) return false;
  ++g_epoch;
  Vertex prev = kNoVertex;
  for (Vertex v : s_to_x.vertices) {
    if (!mark_fresh(v)) return false;
    if (prev != kNoVertex && avoid.contains(prev, v)) return false;
    prev = v;
  }
  // walk t..x reversed, skipping the shared midpoint
  const auto& tv = t_to_x.vertices;
  for (std::size_t i = tv.size() - 1; i-- > 0;) {
    Vertex v = tv[i];
    if (!mark_fresh(v)) return false;
    if (avoid.contains(prev, v)) return false;
    prev = v;
  }
  return true;
}

bool has_restoration(const UndirectedGraph& g, const SchemeFn& scheme, Vertex s, Vertex t,
                     const FaultSet& faults, HopDist replacement_dist, Vertex* witness_x) {
  if (!replacement_dist) return true;  // disconnected pair: vacuously satisfied
  const std::uint32_t required = *replacement_dist;
  // Proper subsets of the fault set, by size then enumeration order.
  std::vector<FaultSet> subsets;
  const auto& fe = faults.edges();
  const std::size_t k = fe.size();
  for (std::size_t mask = 0; mask + 1 < (1u << k) || (k == 0 && mask == 0); ++mask) {
    std::vector<Edge> sub;
    for (std::size_t i = 0; i < k; ++i)
      if (mask & (1u << i)) sub.push_back(fe[i]);
    subsets.emplace_back(std::move(sub));
    if (k == 0) break;
  }
  std::sort(subsets.begin(), subsets.end(),
            [](const FaultSet& a, const FaultSet& b) {
              return a.size() != b.size() ? a.size() < b.size() : a.edges() < b.edges();
            });
  for (Vertex x = 0; x < g.n(); ++x) {
    for (const FaultSet& sub : subsets) {
      auto p1 = scheme(s, x, sub);
      if (!p1) continue;
      auto p2 = scheme(t, x, sub);
      if (!p2) continue;
      if (valid_restoration(*p1, *p2, faults, required)) {
        if (witness_x) *witness_x = x;
        return true;
      }
    }
  }
  return false;
}

PropertyReport check_restorable(const UndirectedGraph& g, const SchemeFn& scheme, int f_max,
                                const CheckOptions& opts) {
  if (f_max < 1) fail(Errc::invalid_params, "check_restorable needs f_max >= 1");
  PropertyReport report;
  report.property = "restorable";
  report.pass = true;

  auto probe = [&](Vertex s, Vertex t, const FaultSet& F, HopDist rd) -> bool {
    ++report.instances_checked;
    if (has_restoration(g, scheme, s, t, F, rd)) return true;
    report.pass = false;
    report.counterexample = Counterexample{s, t, F, "no midpoint/subset restores the pair"};
    return false;
  };

  if (!use_fault_sampling(g, f_max, opts)) {
    for_each_fault_set(g, f_max, /*include_empty=*/false, [&](const FaultSet& F) {
      for (Vertex s = 0; s < g.n(); ++s) {
        auto dist = bfs_distances(g, s, F);
        for (Vertex t = 0; t < g.n(); ++t)
          if (!probe(s, t, F, dist[t])) return false;
      }
      return true;
    });
  } else {
    SplitMix64 rng(derive(opts.sample_seed, 0x726573ull));
    report.notes = "sampled";
    for (std::uint64_t i = 0; i < opts.sample_count && report.pass; ++i) {
      FaultSet F = random_fault_set(g, 1 + rng.below(static_cast<std::uint64_t>(f_max)), rng);
      if (F.empty()) continue;
      Vertex s = static_cast<Vertex>(rng.below(g.n()));
      Vertex t = static_cast<Vertex>(rng.below(g.n()));
      probe(s, t, F, oracle_replacement_distance(g, s, t, F));
    }
  }
  return report;
}

PropertyReport check_consistent(const UndirectedGraph& g, const SchemeFn& scheme, int f_max,
                                const CheckOptions& opts) {
  if (f_max < 0) fail(Errc::invalid_params, "check_consistent needs f_max >= 0");
  PropertyReport report;
  report.property = "consistent";
  report.pass = true;

  auto probe = [&](Vertex s, Vertex t, const FaultSet& F) -> bool {
    ++report.instances_checked;
    auto p = scheme(s, t, F);
    if (!p || p->vertices.size() < 3) return true;
    const auto& pv = p->vertices;
    for (std::size_t i = 0; i + 1 < pv.size(); ++i) {
      for (std::size_t j = i + 1; j < pv.size(); ++j) {
        auto q = scheme(pv[i], pv[j], F);
        bool same = q && q->vertices.size() == j - i + 1 &&
                    std::equal(q->vertices.begin(), q->vertices.end(), pv.begin() + i);
        if (!same) {
          report.pass = false;
          report.counterexample = Counterexample{
              s, t, F,
              "pi(" + std::to_string(pv[i]) + "," + std::to_string(pv[j]) +
                  ") is not the contiguous subpath"};
          return false;
        }
      }
    }
    return true;
  };

  if (!use_fault_sampling(g, f_max, opts)) {
    for_each_fault_set(g, f_max, /*include_empty=*/true, [&](const FaultSet& F) {
      for (Vertex s = 0; s < g.n(); ++s)
        for (Vertex t = 0; t < g.n(); ++t)
          if (!probe(s, t, F)) return false;
      return true;
    });
  } else {
    SplitMix64 rng(derive(opts.sample_seed, 0x636f6eull));
    report.notes = "sampled";
    for (std::uint64_t i = 0; i < opts.sample_count && report.pass; ++i) {
      FaultSet F = random_fault_set(g, rng.below(static_cast<std::uint64_t>(f_max) + 1), rng);
      Vertex s = static_cast<Vertex>(rng.below(g.n()));
      Vertex t = static_cast<Vertex>(rng.below(g.n()));
      probe(s, t, F);
    }
  }
  return report;
}

PropertyReport check_stable(const UndirectedGraph& g, const SchemeFn& scheme, int f_max,
                            const CheckOptions& opts) {
  if (f_max < 1) fail(Errc::invalid_params, "check_stable needs f_max >= 1");
  PropertyReport report;
  report.property = "stable";
  report.pass = true;

  auto same_path = [](const std::optional<Path>& a, const std::optional<Path>& b) {
    if (!a && !b) return true;
    return a && b && a->vertices == b->vertices;
  };

  auto probe = [&](Vertex s, Vertex t, const FaultSet& F, Edge extra) -> bool {
    auto p = scheme(s, t, F);
    if (p) {
      const auto& pv = p->vertices;
      for (std::size_t i = 0; i + 1 < pv.size(); ++i)
        if (Edge::make(pv[i], pv[i + 1]) == extra) return true;  // fault hits the path
    }
    ++report.instances_checked;
    auto p2 = scheme(s, t, F.with(extra));
    if (same_path(p, p2)) return true;
    report.pass = false;
    report.counterexample =
        Counterexample{s, t, F.with(extra),
                       "adding off-path fault {" + std::to_string(extra.u) + "," +
                           std::to_string(extra.v) + "} changed the selected path"};
    return false;
  };

  if (!use_fault_sampling(g, f_max, opts)) {
    for_each_fault_set(g, f_max - 1, /*include_empty=*/true, [&](const FaultSet& F) {
      for (Vertex s = 0; s < g.n(); ++s)
        for (Vertex t = 0; t < g.n(); ++t)
          for (Edge e : g.edges()) {
            if (F.contains(e)) continue;
            if (!probe(s, t, F, e)) return false;
          }
      return true;
    });
  } else {
    SplitMix64 rng(derive(opts.sample_seed, 0x737461ull));
    report.notes = "sampled";
    for (std::uint64_t i = 0; i < opts.sample_count && report.pass; ++i) {
      FaultSet F = random_fault_set(g, rng.below(static_cast<std::uint64_t>(f_max)), rng);
      Edge e = g.edges()[rng.below(g.edge_count())];
      if (F.contains(e)) continue;
      Vertex s = static_cast<Vertex>(rng.below(g.n()));
      Vertex t = static_cast<Vertex>(rng.below(g.n()));
      probe(s, t, F, e);
    }
  }
  return report;
}

PropertyReport check_restorable(const Rpts& rpts, int f_max, const CheckOptions& opts) {
  return check_restorable(rpts.graph(), rpts.scheme(), f_max, opts);
}
PropertyReport check_consistent(const Rpts& rpts, int f_max, const CheckOptions& opts) {
  return check_consistent(rpts.graph(), rpts.scheme(), f_max, opts);
}
PropertyReport check_stable(const Rpts& rpts, int f_max, const CheckOptions& opts) {
  return check_stable(rpts.graph(), rpts.scheme(), f_max, opts);
}

TableScheme::TableScheme(UndirectedGraph g) : g_(std::move(g)) {}

void TableScheme::set(Vertex s, Vertex t, std::vector<Vertex> path) {
  table_[{s, t}] = std::move(path);
}

void TableScheme::set_symmetric(Vertex s, Vertex t, std::vector<Vertex> path) {
  auto rev = path;
  std::reverse(rev.begin(), rev.end());
  set(s, t, std::move(path));
  set(t, s, std::move(rev));
}

std::optional<Path> TableScheme::lookup(Vertex s, Vertex t) const {
  if (s == t) return Path{{s}, PathWeight{}};
  auto it = table_.find({s, t});
  std::vector<Vertex> verts;
  if (it != table_.end()) {
    verts = it->second;
  } else {
    // Fall back to the shortest path when it is unique.
    auto dist = bfs_distances(g_, s);
    if (!dist[t]) return std::nullopt;
    std::vector<std::uint64_t> count(g_.n(), 0);
    count[s] = 1;
    std::vector<Vertex> order(g_.n());
    for (Vertex v = 0; v < g_.n(); ++v) order[v] = v;
    std::sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
      std::uint64_t da = dist[a] ? *dist[a] : ~0u, db = dist[b] ? *dist[b] : ~0u;
      return da != db ? da < db : a < b;
    });
    for (Vertex v : order) {
      if (!dist[v] || v == s) continue;
      for (Vertex u : g_.adj(v))
        if (dist[u] && *dist[u] + 1 == *dist[v]) count[v] += count[u];
    }
    if (count[t] != 1)
      fail(Errc::invalid_params, "table scheme queried on a tied pair it does not cover");
    auto p = bfs_path(g_, s, t);
    verts = *p;
  }
  Path p;
  p.vertices = std::move(verts);
  p.weight = PathWeight{static_cast<std::uint32_t>(p.vertices.size() - 1), 0};
  return p;
}

SchemeFn TableScheme::fn() const {
  return [this](Vertex s, Vertex t, const FaultSet& f) -> std::optional<Path> {
    if (!f.empty())
      fail(Errc::invalid_params, "table scheme only covers the fault-free case");
    return lookup(s, t);
  };
}

bool TableScheme::is_symmetric() const {
  for (Vertex s = 0; s < g_.n(); ++s)
    for (Vertex t = 0; t < g_.n(); ++t) {
      auto p = lookup(s, t);
      auto q = lookup(t, s);
      if (p.has_value() != q.has_value()) return false;
      if (!p) continue;
      auto rev = q->vertices;
      std::reverse(rev.begin(), rev.end());
      if (p->vertices != rev) return false;
    }
  return true;
}

std::vector<TableScheme> c4_symmetric_schemes() {
  UndirectedGraph c4 =
      UndirectedGraph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  std::vector<TableScheme> schemes;
  const std::vector<std::vector<Vertex>> diag02 = {{0, 1, 2}, {0, 3, 2}};
  const std::vector<std::vector<Vertex>> diag13 = {{1, 2, 3}, {1, 0, 3}};
  for (const auto& p02 : diag02)
    for (const auto& p13 : diag13) {
      TableScheme s(c4);
      s.set_symmetric(0, 2, p02);
      s.set_symmetric(1, 3, p13);
      schemes.push_back(std::move(s));
    }
  return schemes;
}

PropertyReport c4_symmetric_impossibility() {
  PropertyReport report;
  report.property = "c4_symmetric_impossibility";
  report.pass = true;

  auto schemes = c4_symmetric_schemes();
  report.instances_checked = schemes.size();
  std::ostringstream notes;
  for (std::size_t k = 0; k < schemes.size(); ++k) {
    const TableScheme& ts = schemes[k];
    const UndirectedGraph& g = ts.graph();
    if (!ts.is_symmetric()) {
      report.pass = false;
      report.counterexample = Counterexample{0, 0, {}, "scheme not symmetric by construction"};
      return report;
    }
    SchemeFn fn = ts.fn();
    // sanity: every selected path is hop-shortest
    for (Vertex s = 0; s < g.n(); ++s) {
      auto dist = bfs_distances(g, s);
      for (Vertex t = 0; t < g.n(); ++t) {
        auto p = fn(s, t, {});
        if (!p || p->hops() != *dist[t]) {
          report.pass = false;
          report.counterexample = Counterexample{s, t, {}, "scheme path is not shortest"};
          return report;
        }
      }
    }
    bool broken = false;
    for (Edge e : g.edges()) {
      for (Vertex s = 0; s < g.n() && !broken; ++s)
        for (Vertex t = 0; t < g.n() && !broken; ++t) {
          FaultSet F{e};
          auto rd = oracle_replacement_distance(g, s, t, F);
          if (!has_restoration(g, fn, s, t, F, rd)) {
            broken = true;
            notes << "scheme " << k << " fails at (s=" << s << ",t=" << t
                  << ",e={" << e.u << ',' << e.v << "}); ";
          }
        }
      if (broken) break;
    }
    if (!broken) {
      report.pass = false;
      report.counterexample =
          Counterexample{0, 0, {}, "symmetric scheme " + std::to_string(k) + " is restorable"};
      return report;
    }
  }
  report.notes = notes.str();
  return report;
}

}  // namespace restore
