#include "restore/congest.hpp"

#include <algorithm>

#include "restore/rng.hpp"

namespace restore {

nlohmann::json CongestMetrics::to_json() const {
  nlohmann::json j;
  j["rounds"] = rounds;
  j["total_msgs"] = total_msgs;
  j["max_edge_msgs_per_round"] = max_edge_msgs_per_round;
  j["max_edge_total_msgs"] = max_edge_total_msgs;
  j["cap_bits"] = cap_bits;
  j["max_msg_bits"] = max_msg_bits;
  j["precomputation_rounds"] = precomputation_rounds;
  j["D"] = diameter;
  return j;
}

SimNetwork::SimNetwork(const UndirectedGraph& g, EngineOptions opts) : g_(g), opts_(opts) {
  cap_bits_ = opts_.cap_log_multiplier * std::max<std::uint32_t>(1, ceil_log2(g.n()));
}

DistributedSpt::DistributedSpt(const PerturbedDigraph* pd, Vertex source)
    : pd_(pd), source_(source) {
  if (source >= pd->base.n()) fail(Errc::invalid_params, "tree source out of range");
}

std::uint32_t DistributedSpt::payload_bits() const {
  const std::size_t n = pd_->base.n();
  std::uint64_t max_pert = static_cast<std::uint64_t>(pd_->bound) * std::max<std::size_t>(n, 2);
  return ceil_log2(n + 1) + 1 + ceil_log2(max_pert + 1);
}

void DistributedSpt::announce(Vertex v, const State& st, Outbox& out) const {
  const std::uint32_t bits = payload_bits();
  for (Vertex u : pd_->base.adj(v))
    out.msgs.push_back({u, static_cast<std::int64_t>(st.dist.hops), st.dist.perturbation, bits});
}

void DistributedSpt::step(Vertex v, int round, State& st, const Inbox& in, Outbox& out) const {
  if (round == 0) {
    if (v == source_) {
      st.marked = true;
      st.dist = PathWeight{};
      st.adopt_round = 0;
      announce(v, st, out);
    }
    return;
  }
  if (st.marked || in.msgs.empty()) return;
  PathWeight best;
  Vertex parent = kNoVertex;
  bool tie = false;
  for (const CongestMessage& m : in.msgs) {
    PathWeight cand{static_cast<std::uint32_t>(m.a) + 1, m.b + pd_->r(m.from, v)};
    if (parent == kNoVertex || cand < best) {
      best = cand;
      parent = m.from;
      tie = false;
    } else if (cand == best) {
      tie = true;
    }
  }
  if (tie)
    fail(Errc::nondeterminism, "two parent candidates with equal weight at vertex " +
                                   std::to_string(v) + " (weights are not tiebreaking)");
  st.marked = true;
  st.dist = best;
  st.parent = parent;
  st.adopt_round = round;
  announce(v, st, out);
}

std::uint32_t graph_diameter(const UndirectedGraph& g) {
  std::uint32_t diameter = 0;
  for (Vertex s = 0; s < g.n(); ++s) {
    auto dist = bfs_distances(g, s);
    for (Vertex t = 0; t < g.n(); ++t)
      if (dist[t]) diameter = std::max(diameter, *dist[t]);
  }
  return diameter;
}

namespace {

Spt tree_from_states(const UndirectedGraph& g, Vertex source,
                     const std::vector<SptState>& states) {
  Spt t;
  t.source = source;
  t.dist.resize(g.n());
  t.parent.assign(g.n(), kNoVertex);
  for (Vertex v = 0; v < g.n(); ++v) {
    if (!states[v].marked) continue;
    t.dist[v] = states[v].dist;
    if (v != source) t.parent[v] = states[v].parent;
  }
  return t;
}

/// Single-round weight distribution: the lower endpoint of every edge ships
/// the sampled arc value to the other endpoint.
class WeightExchange {
 public:
  using State = std::vector<std::pair<Vertex, std::int64_t>>;

  WeightExchange(const PerturbedDigraph* pd) : pd_(pd) {
    bits_ = 1 + ceil_log2(2 * static_cast<std::uint64_t>(pd->bound) + 1);
  }

  State init_state(Vertex) const { return {}; }

  void step(Vertex v, int round, State& st, const Inbox& in, Outbox& out) const {
    if (round == 0) {
      for (Vertex u : pd_->base.adj(v))
        if (v < u) out.msgs.push_back({u, pd_->r(v, u), 0, bits_});
      return;
    }
    for (const CongestMessage& m : in.msgs) st.emplace_back(m.from, m.a);
  }

 private:
  const PerturbedDigraph* pd_;
  std::uint32_t bits_;
};

}  // namespace

SptRunResult run_spt(const UndirectedGraph& g, const PerturbedDigraph& pd, Vertex source,
                     EngineOptions opts) {
  SimNetwork net(g, opts);
  std::vector<DistributedSpt> algs{DistributedSpt(&pd, source)};
  std::vector<std::uint64_t> delays{0};
  std::vector<std::vector<SptState>> states;
  SptRunResult result;
  result.metrics = net.run(algs, delays, states);
  result.metrics.diameter = graph_diameter(g);
  result.tree = tree_from_states(g, source, states[0]);
  result.adopt_rounds.reserve(g.n());
  for (Vertex v = 0; v < g.n(); ++v) result.adopt_rounds.push_back(states[0][v].adopt_round);
  return result;
}

RandomDelayResult run_random_delay(const UndirectedGraph& g, const PerturbedDigraph& pd,
                                   const std::vector<Vertex>& sources, std::uint64_t seed,
                                   EngineOptions opts) {
  if (sources.empty()) fail(Errc::invalid_params, "no algorithms to schedule");
  RandomDelayResult result;
  result.declared_congestion = 2 * sources.size();       // per-edge messages across all trees
  result.declared_dilation = 2ull * graph_diameter(g) + 2;  // solo round bound
  std::vector<DistributedSpt> algs;
  algs.reserve(sources.size());
  for (Vertex s : sources) algs.emplace_back(&pd, s);
  for (std::size_t i = 0; i < sources.size(); ++i)
    result.delays.push_back(derive(seed, 0x646c6179ull, i) % (result.declared_congestion + 1));
  SimNetwork net(g, opts);
  std::vector<std::vector<SptState>> states;
  result.metrics = net.run(algs, result.delays, states);
  result.metrics.diameter = graph_diameter(g);
  for (std::size_t i = 0; i < sources.size(); ++i)
    result.trees.push_back(tree_from_states(g, sources[i], states[i]));
  return result;
}

Distributed1FtResult run_distributed_1ft_sxs(const UndirectedGraph& g,
                                             const std::vector<Vertex>& sources,
                                             std::uint64_t seed, EngineOptions opts) {
  if (sources.empty()) fail(Errc::invalid_params, "preserver needs a nonempty source set");
  Distributed1FtResult result;
  // The shared-seed weight function is certified tie-free up front, so the
  // layered construction never hits a nondeterministic parent choice.
  PerturbedDigraph pd = perturb(g, seed, default_perturbation_bound(g.n()));
  result.seed_used = pd.seed;

  {
    SimNetwork net(g, opts);
    std::vector<WeightExchange> setup{WeightExchange(&pd)};
    std::vector<std::uint64_t> delays{0};
    std::vector<std::vector<WeightExchange::State>> states;
    auto metrics = net.run(setup, delays, states);
    result.setup_rounds = metrics.rounds;
  }

  result.schedule = run_random_delay(g, pd, sources, derive(pd.seed, 0x31667431ull), opts);

  std::vector<Edge> edges;
  for (const Spt& tree : result.schedule.trees) {
    auto te = tree.tree_edges();
    edges.insert(edges.end(), te.begin(), te.end());
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  result.preserver.kind = PreserverKind::sxs;
  result.preserver.sources = sources;
  std::sort(result.preserver.sources.begin(), result.preserver.sources.end());
  result.preserver.fault_budget = 1;
  result.preserver.edges = std::move(edges);
  result.preserver.fault_sets_enumerated = sources.size();
  return result;
}

}  // namespace restore
