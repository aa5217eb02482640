#include "restore/lowerbound.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <queue>

namespace restore {

namespace {

std::size_t isqrt_exact(std::size_t d) {
  auto r = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(d))));
  while (r * r > d) --r;
  while ((r + 1) * (r + 1) <= d) ++r;
  return r;
}

struct Part {
  Vertex root = 0;
  Vertex spine_end = 0;
  std::vector<Vertex> leaves;
  std::vector<std::vector<Edge>> labels;
  std::vector<std::vector<Vertex>> root_paths;
  std::size_t depth = 0;
};

Part build_part(int f, std::size_t d, std::vector<Edge>& edges, std::size_t& next_id) {
  auto alloc = [&next_id] { return static_cast<Vertex>(next_id++); };
  Part part;
  std::vector<Vertex> spine(d);
  for (std::size_t i = 0; i < d; ++i) spine[i] = alloc();
  for (std::size_t i = 0; i + 1 < d; ++i) edges.push_back(Edge::make(spine[i], spine[i + 1]));
  part.root = spine.front();
  part.spine_end = spine.back();

  if (f == 1) {
    part.depth = d;
    for (std::size_t i = 1; i <= d; ++i) {
      // connector of d-i+1 edges hanging off spine[i-1]
      std::vector<Vertex> walk(spine.begin(), spine.begin() + i);
      Vertex cur = spine[i - 1];
      for (std::size_t step = 0; step + 1 < d - i + 1; ++step) {
        Vertex nxt = alloc();
        edges.push_back(Edge::make(cur, nxt));
        walk.push_back(nxt);
        cur = nxt;
      }
      Vertex leaf = alloc();
      edges.push_back(Edge::make(cur, leaf));
      walk.push_back(leaf);
      part.leaves.push_back(leaf);
      part.root_paths.push_back(std::move(walk));
      if (i < d)
        part.labels.push_back({Edge::make(spine[i - 1], spine[i])});
      else
        part.labels.push_back({});
    }
    return part;
  }

  std::size_t sub = isqrt_exact(d);
  for (std::size_t j = 1; j <= d; ++j) {
    Part inner = build_part(f - 1, sub, edges, next_id);
    // connector of d-j+1 edges from spine[j-1] to the inner root
    std::vector<Vertex> approach(spine.begin(), spine.begin() + j);
    Vertex cur = spine[j - 1];
    for (std::size_t step = 0; step + 1 < d - j + 1; ++step) {
      Vertex nxt = alloc();
      edges.push_back(Edge::make(cur, nxt));
      approach.push_back(nxt);
      cur = nxt;
    }
    edges.push_back(Edge::make(cur, inner.root));
    for (std::size_t i = 0; i < inner.leaves.size(); ++i) {
      part.leaves.push_back(inner.leaves[i]);
      std::vector<Edge> label;
      if (j < d) label.push_back(Edge::make(spine[j - 1], spine[j]));
      label.insert(label.end(), inner.labels[i].begin(), inner.labels[i].end());
      part.labels.push_back(std::move(label));
      std::vector<Vertex> walk = approach;
      walk.insert(walk.end(), inner.root_paths[i].begin(), inner.root_paths[i].end());
      part.root_paths.push_back(std::move(walk));
    }
    part.depth = d + inner.depth;
  }
  return part;
}

}  // namespace

bool lb_admissible_d(int f, std::size_t d) {
  if (f < 1 || d < 1) return false;
  if (f == 1) return true;
  std::size_t s = isqrt_exact(d);
  return s * s == d && lb_admissible_d(f - 1, s);
}

std::vector<std::size_t> lb_admissible_ds(int f, std::size_t n_max) {
  std::vector<std::size_t> out;
  for (std::size_t k = 2;; ++k) {
    std::size_t d = 1;
    bool overflow = false;
    for (int i = 0; i < (1 << (f - 1)); ++i) {
      d *= k;
      if (d > n_max) {
        overflow = true;
        break;
      }
    }
    if (overflow || lb_vertex_count(f, d) > n_max) break;
    out.push_back(d);
  }
  return out;
}

std::size_t lb_vertex_count(int f, std::size_t d) {
  // spine (d) plus connector interiors: sum over i of (d-i) = d(d-1)/2
  std::size_t block = d + d * (d - 1) / 2;
  if (f == 1) return block + d;  // plus the leaf row
  return d * lb_vertex_count(f - 1, isqrt_exact(d)) + block;
}

std::size_t lb_leaf_count(int f, std::size_t d) {
  if (f == 1) return d;
  return d * lb_leaf_count(f - 1, isqrt_exact(d));
}

std::size_t lb_depth(int f, std::size_t d) {
  if (f == 1) return d;
  return d + lb_depth(f - 1, isqrt_exact(d));
}

LbGraph build_gfd(int f, std::size_t d) {
  if (f < 1) fail(Errc::invalid_params, "family needs f >= 1");
  if (!lb_admissible_d(f, d))
    fail(Errc::non_integral_recursion,
         "d=" + std::to_string(d) + " is not a perfect 2^" + std::to_string(f - 1) + "-th power");
  LbGraph lb;
  lb.f = f;
  lb.d = d;
  std::vector<Edge> edges;
  std::size_t next_id = 0;
  Part part = build_part(f, d, edges, next_id);
  lb.graph = UndirectedGraph::from_edges(next_id, edges);
  lb.roots = {part.root};
  lb.leaves = std::move(part.leaves);
  lb.leaf_copy.assign(lb.leaves.size(), 0);
  lb.labels = std::move(part.labels);
  lb.root_paths = std::move(part.root_paths);
  lb.depth = part.depth;
  return lb;
}

PropertyReport check_path_lemma(const LbGraph& lb) {
  PropertyReport report;
  report.property = "lb_path_lemma";
  report.pass = true;
  if (lb.is_gstar) fail(Errc::invalid_params, "path lemma applies to the unstarred family");
  const UndirectedGraph& g = lb.graph;

  auto fail_with = [&](Vertex leaf, const std::string& detail) {
    report.pass = false;
    report.counterexample = Counterexample{lb.roots[0], leaf, {}, detail};
  };

  for (std::size_t j = 0; j < lb.leaves.size() && report.pass; ++j) {
    Vertex root = lb.roots[lb.leaf_copy[j]];
    Vertex leaf = lb.leaves[j];
    ++report.instances_checked;

    // (1) uniqueness, by exhaustive path search capped at two results
    std::vector<std::vector<Vertex>> found;
    std::vector<char> on_stack(g.n(), 0);
    std::vector<Vertex> stack = {root};
    on_stack[root] = 1;
    std::vector<std::size_t> iter = {0};
    while (!stack.empty() && found.size() < 2) {
      Vertex cur = stack.back();
      if (cur == leaf) {
        found.push_back(stack);
        on_stack[cur] = 0;
        stack.pop_back();
        iter.pop_back();
        continue;
      }
      const auto& nbrs = g.adj(cur);
      if (iter.back() >= nbrs.size()) {
        on_stack[cur] = 0;
        stack.pop_back();
        iter.pop_back();
        continue;
      }
      Vertex nxt = nbrs[iter.back()++];
      if (on_stack[nxt]) continue;
      stack.push_back(nxt);
      on_stack[nxt] = 1;
      iter.push_back(0);
    }
    if (found.size() != 1) {
      fail_with(leaf, "expected a unique root-leaf path, found " + std::to_string(found.size()));
      break;
    }
    const std::vector<Vertex>& path = found[0];
    if (path != lb.root_paths[j]) {
      fail_with(leaf, "search path differs from the constructed path");
      break;
    }

    std::vector<Edge> path_edges;
    for (std::size_t i = 0; i + 1 < path.size(); ++i)
      path_edges.push_back(Edge::make(path[i], path[i + 1]));
    auto hits = [&](const std::vector<Edge>& label) {
      for (Edge e : label)
        if (std::find(path_edges.begin(), path_edges.end(), e) != path_edges.end()) return true;
      return false;
    };

    // (2) survival: own label and every label to the right miss the path
    for (std::size_t k = j; k < lb.leaves.size(); ++k) {
      if (hits(lb.labels[k])) {
        fail_with(leaf, "label of leaf " + std::to_string(k) + " cuts a right-hand path");
        break;
      }
    }
    if (!report.pass) break;

    // (3) destruction: every label to the left cuts the path
    for (std::size_t k = 0; k < j; ++k) {
      if (!hits(lb.labels[k])) {
        fail_with(leaf, "label of left-hand leaf " + std::to_string(k) + " does not cut the path");
        break;
      }
    }
    if (!report.pass) break;

    // (4) equal depth
    if (path.size() - 1 != lb.depth) {
      fail_with(leaf, "leaf depth differs from the common depth");
      break;
    }
  }
  return report;
}

LbGraph build_gstar(int f, std::size_t d, std::size_t sigma, std::size_t x_size) {
  if (sigma < 1 || x_size < 1) fail(Errc::invalid_params, "gstar needs sigma >= 1 and |X| >= 1");
  if (f < 1) fail(Errc::invalid_params, "family needs f >= 1");
  if (!lb_admissible_d(f, d))
    fail(Errc::non_integral_recursion,
         "d=" + std::to_string(d) + " is not a perfect 2^" + std::to_string(f - 1) + "-th power");

  LbGraph lb;
  lb.f = f;
  lb.d = d;
  lb.sigma = sigma;
  lb.is_gstar = true;

  std::vector<Edge> edges;
  std::size_t next_id = 0;
  std::vector<Part> parts;
  for (std::size_t c = 0; c < sigma; ++c) parts.push_back(build_part(f, d, edges, next_id));
  lb.depth = parts[0].depth;

  // pad chain sized so the terminal route through the connector vertex has
  // exactly depth+1 hops from each root, tying it with every leaf route
  std::size_t padlen = lb.depth - d + 1;
  Vertex v_star = static_cast<Vertex>(next_id++);
  for (auto& part : parts) {
    Vertex cur = part.spine_end;
    for (std::size_t step = 0; step + 1 < padlen; ++step) {
      Vertex nxt = static_cast<Vertex>(next_id++);
      edges.push_back(Edge::make(cur, nxt));
      cur = nxt;
    }
    edges.push_back(Edge::make(cur, v_star));
  }
  lb.v_star = v_star;
  for (std::size_t i = 0; i < x_size; ++i) {
    Vertex x = static_cast<Vertex>(next_id++);
    lb.x_set.push_back(x);
    edges.push_back(Edge::make(v_star, x));
  }

  for (std::size_t c = 0; c < sigma; ++c) {
    lb.roots.push_back(parts[c].root);
    for (std::size_t i = 0; i < parts[c].leaves.size(); ++i) {
      lb.leaves.push_back(parts[c].leaves[i]);
      lb.leaf_copy.push_back(c);
      lb.labels.push_back(parts[c].labels[i]);
      lb.root_paths.push_back(parts[c].root_paths[i]);
    }
  }
  for (Vertex z : lb.leaves)
    for (Vertex x : lb.x_set) {
      Edge e = Edge::make(z, x);
      lb.bipartite.push_back(e);
      edges.push_back(e);
    }

  const std::size_t n = next_id;
  if (n > 5000) fail(Errc::size_infeasible, "weighted family too large for exact arithmetic");
  lb.graph = UndirectedGraph::from_edges(n, edges);

  const std::size_t lambda = lb.leaves.size();
  const std::size_t chi = lb.x_set.size();
  auto den = static_cast<std::int64_t>(n) * static_cast<std::int64_t>(n);
  den = den * den;  // n^4
  lb.weight_den = den;
  lb.weight_num.assign(lb.graph.edge_count(), den);
  // Bipartite edges get weight 1 - tiny, strictly decreasing in the leaf
  // index and pairwise distinct, so every weighted shortest path is also
  // hop-shortest (a path accumulates less than one unit of total deficit).
  for (std::size_t j = 0; j < lambda; ++j)
    for (std::size_t i = 0; i < chi; ++i) {
      Edge e = Edge::make(lb.leaves[j], lb.x_set[i]);
      std::int64_t tiny = static_cast<std::int64_t>(j + 1) * static_cast<std::int64_t>(chi + 1) +
                          static_cast<std::int64_t>(i);
      lb.weight_num[*lb.graph.edge_id(e)] = den - tiny;
    }
  return lb;
}

LbGraph build_gstar_for_n(int f, std::size_t d, std::size_t sigma, std::size_t n_target) {
  if (!lb_admissible_d(f, d))
    fail(Errc::non_integral_recursion,
         "d=" + std::to_string(d) + " is not a perfect 2^" + std::to_string(f - 1) + "-th power");
  std::size_t pad_interior = lb_depth(f, d) - d;  // pad chain vertices before the connector
  std::size_t fixed = sigma * (lb_vertex_count(f, d) + pad_interior) + 1;
  if (fixed + 1 > n_target)
    fail(Errc::size_infeasible, "fixed components need " + std::to_string(fixed + 1) +
                                    " vertices, target is " + std::to_string(n_target));
  return build_gstar(f, d, sigma, n_target - fixed);
}

namespace {

struct WeightedSpt {
  Vertex source;
  std::vector<std::optional<std::int64_t>> dist;
  std::vector<Vertex> parent;
};

WeightedSpt weighted_sssp(const LbGraph& lb, Vertex s, const FaultSet& faults) {
  const UndirectedGraph& g = lb.graph;
  WeightedSpt t;
  t.source = s;
  t.dist.resize(g.n());
  t.parent.assign(g.n(), kNoVertex);
  using Item = std::pair<std::int64_t, Vertex>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  std::vector<char> settled(g.n(), 0);
  struct Cand {
    Vertex v;
    std::int64_t w;
  };
  std::vector<Cand> equal_cands;
  t.dist[s] = 0;
  heap.push({0, s});
  while (!heap.empty()) {
    auto [du, u] = heap.top();
    heap.pop();
    if (settled[u] || *t.dist[u] != du) continue;
    settled[u] = 1;
    for (Vertex v : g.adj(u)) {
      if (!faults.empty() && faults.contains(u, v)) continue;
      std::int64_t cand = du + lb.weight_num[*g.edge_id(u, v)];
      if (!t.dist[v] || cand < *t.dist[v]) {
        t.dist[v] = cand;
        t.parent[v] = u;
        heap.push({cand, v});
      } else if (cand == *t.dist[v] && t.parent[v] != u) {
        equal_cands.push_back({v, cand});
      }
    }
  }
  for (const auto& c : equal_cands)
    if (t.dist[c.v] && *t.dist[c.v] == c.w)
      fail(Errc::tie_detected, "weighted tie at vertex " + std::to_string(c.v));
  return t;
}

std::optional<std::vector<Vertex>> weighted_path(const WeightedSpt& t, Vertex target) {
  if (!t.dist[target]) return std::nullopt;
  std::vector<Vertex> path;
  for (Vertex cur = target; cur != kNoVertex; cur = t.parent[cur]) {
    path.push_back(cur);
    if (cur == t.source) break;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace

PropertyReport certify_blowup(const LbGraph& lb) {
  PropertyReport report;
  report.property = "lb_blowup";
  report.pass = true;
  if (!lb.is_gstar) fail(Errc::invalid_params, "blowup certification needs the starred family");

  std::vector<char> covered(lb.bipartite.size(), 0);
  std::vector<char> in_overlay(lb.graph.edge_count(), 0);
  for (std::size_t j = 0; j < lb.leaves.size() && report.pass; ++j) {
    Vertex root = lb.roots[lb.leaf_copy[j]];
    Vertex leaf = lb.leaves[j];
    FaultSet F(lb.labels[j]);
    WeightedSpt tree;
    try {
      tree = weighted_sssp(lb, root, F);
    } catch (const Error& e) {
      report.pass = false;
      report.counterexample = Counterexample{root, leaf, F, e.what()};
      break;
    }
    for (Vertex x : lb.x_set) {
      ++report.instances_checked;
      auto path = weighted_path(tree, x);
      if (!path || path->size() < 2 || (*path)[path->size() - 2] != leaf ||
          path->size() - 1 != lb.depth + 1) {
        report.pass = false;
        report.counterexample =
            Counterexample{root, x, F, "selected path does not enter through leaf " +
                                           std::to_string(j)};
        break;
      }
      for (std::size_t i = 0; i + 1 < path->size(); ++i)
        in_overlay[*lb.graph.edge_id((*path)[i], (*path)[i + 1])] = 1;
      auto it = std::find(lb.bipartite.begin(), lb.bipartite.end(), Edge::make(leaf, x));
      covered[static_cast<std::size_t>(it - lb.bipartite.begin())] = 1;
    }
  }
  if (report.pass) {
    for (std::size_t i = 0; i < covered.size(); ++i)
      if (!covered[i]) {
        report.pass = false;
        report.counterexample = Counterexample{
            lb.bipartite[i].u, lb.bipartite[i].v, {}, "bipartite edge never forced"};
        break;
      }
  }
  if (report.pass) {
    std::size_t overlay_edges = 0;
    for (char c : in_overlay) overlay_edges += static_cast<std::size_t>(c);
    if (overlay_edges < lb.bipartite.size()) {
      report.pass = false;
      report.counterexample = Counterexample{0, 0, {}, "overlay smaller than the bipartite core"};
    } else {
      report.notes = "overlay_edges=" + std::to_string(overlay_edges) +
                     " bipartite_edges=" + std::to_string(lb.bipartite.size());
    }
  }
  return report;
}

SchemeFn lb_weighted_scheme(const LbGraph& lb) {
  struct Cache {
    std::mutex mu;
    std::map<std::pair<Vertex, std::vector<Edge>>, std::shared_ptr<const WeightedSpt>> trees;
  };
  auto cache = std::make_shared<Cache>();
  const LbGraph* graph = &lb;
  return [graph, cache](Vertex s, Vertex t, const FaultSet& faults) -> std::optional<Path> {
    std::shared_ptr<const WeightedSpt> tree;
    {
      std::lock_guard<std::mutex> lock(cache->mu);
      auto key = std::make_pair(s, faults.edges());
      auto it = cache->trees.find(key);
      if (it == cache->trees.end()) {
        tree = std::make_shared<const WeightedSpt>(weighted_sssp(*graph, s, faults));
        cache->trees.emplace(key, tree);
      } else {
        tree = it->second;
      }
    }
    auto verts = weighted_path(*tree, t);
    if (!verts) return std::nullopt;
    Path p;
    p.vertices = std::move(*verts);
    p.weight = PathWeight{static_cast<std::uint32_t>(p.vertices.size() - 1), 0};
    return p;
  };
}

void write_weights(const LbGraph& lb, std::ostream& out) {
  for (std::size_t id = 0; id < lb.graph.edge_count(); ++id) {
    Edge e = lb.graph.edges()[id];
    out << e.u << ' ' << e.v << ' ' << lb.weight_num[id] << ' ' << lb.weight_den << '\n';
  }
}

}  // namespace restore
