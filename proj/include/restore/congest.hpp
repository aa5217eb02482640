#pragma once

#include <cstdint>
#include <deque>
#include <vector>

#include "json.hpp"
#include "restore/ftnet.hpp"
#include "restore/rpts.hpp"

namespace restore {

struct CongestMessage {
  Vertex from = kNoVertex;
  std::int64_t a = 0;
  std::int64_t b = 0;
};

struct Inbox {
  std::vector<CongestMessage> msgs;
};

struct OutMessage {
  Vertex to = kNoVertex;
  std::int64_t a = 0;
  std::int64_t b = 0;
  std::uint32_t bits = 0;  // declared payload size
};

struct Outbox {
  std::vector<OutMessage> msgs;
};

struct EngineOptions {
  std::uint32_t cap_log_multiplier = 8;  // per-message cap: mult * ceil(log2 n)
  std::size_t max_queue = 0;             // 0: max(8, 2 * #algorithms)
  std::uint64_t round_limit = 1'000'000;
  std::uint64_t precomputation_rounds = 0;  // flat scheduling set-up charge, reported separately
};

struct CongestMetrics {
  std::uint64_t rounds = 0;
  std::uint64_t total_msgs = 0;
  std::uint32_t max_edge_msgs_per_round = 0;
  std::uint32_t max_edge_total_msgs = 0;
  std::uint32_t cap_bits = 0;
  std::uint32_t max_msg_bits = 0;
  std::uint64_t precomputation_rounds = 0;
  std::uint32_t diameter = 0;

  nlohmann::json to_json() const;
};

/// Synchronous message-passing engine. Each round every ready algorithm
/// steps all vertices; a step sees only that vertex's state and inbox, and
/// may send to neighbors only. Per round each edge direction delivers at
/// most one message (excess waits in FIFO order), and an algorithm whose
/// previous round is not fully delivered stalls, so every algorithm
/// observes an undisturbed synchronous execution. Termination is
/// quiescence: no traffic in flight and nothing new sent.
///
/// An algorithm provides:
///   using State = ...;
///   State init_state(Vertex) const;
///   void step(Vertex v, int local_round, State&, const Inbox&, Outbox&) const;
class SimNetwork {
 public:
  explicit SimNetwork(const UndirectedGraph& g, EngineOptions opts = {});

  const UndirectedGraph& graph() const { return g_; }
  std::uint32_t cap_bits() const { return cap_bits_; }

  template <class Alg>
  CongestMetrics run(const std::vector<Alg>& algs, const std::vector<std::uint64_t>& delays,
                     std::vector<std::vector<typename Alg::State>>& states_out);

 private:
  UndirectedGraph g_;
  EngineOptions opts_;
  std::uint32_t cap_bits_ = 0;
};

/// Layered single-source tree construction under a tiebreaking weight
/// function: the source announces its distance; an unmarked vertex that
/// hears announcements adopts the parent minimizing dist + arc weight and
/// announces its own distance in the same step. One announcement per
/// vertex, so at most two messages cross any edge. Distinct candidate
/// parents with equal weight raise nondeterminism (w is not tiebreaking).
struct SptState {
  bool marked = false;
  PathWeight dist;
  Vertex parent = kNoVertex;
  int adopt_round = -1;
};

class DistributedSpt {
 public:
  using State = SptState;
  DistributedSpt(const PerturbedDigraph* pd, Vertex source);

  State init_state(Vertex) const { return {}; }
  void step(Vertex v, int round, State& st, const Inbox& in, Outbox& out) const;
  Vertex source() const { return source_; }
  std::uint32_t payload_bits() const;

 private:
  void announce(Vertex v, const State& st, Outbox& out) const;
  const PerturbedDigraph* pd_;
  Vertex source_;
};

std::uint32_t graph_diameter(const UndirectedGraph& g);  // max finite eccentricity

struct SptRunResult {
  Spt tree;
  std::vector<int> adopt_rounds;
  CongestMetrics metrics;
};

/// Solo run; the tree must equal the centralized one for the same weights.
SptRunResult run_spt(const UndirectedGraph& g, const PerturbedDigraph& pd, Vertex source,
                     EngineOptions opts = {});

struct RandomDelayResult {
  std::vector<Spt> trees;
  std::vector<std::uint64_t> delays;
  std::uint64_t declared_dilation = 0;
  std::uint64_t declared_congestion = 0;
  CongestMetrics metrics;
};

/// Runs one tree construction per source concurrently, each starting at an
/// independent uniform delay in [0, c].
RandomDelayResult run_random_delay(const UndirectedGraph& g, const PerturbedDigraph& pd,
                                   const std::vector<Vertex>& sources, std::uint64_t seed,
                                   EngineOptions opts = {});

struct Distributed1FtResult {
  Preserver preserver;
  std::uint64_t setup_rounds = 0;
  RandomDelayResult schedule;
  std::uint64_t seed_used = 0;
};

/// Weight distribution round (the lower endpoint of each edge samples and
/// ships the arc perturbation) followed by the delayed tree constructions;
/// the union of the trees is the preserver.
Distributed1FtResult run_distributed_1ft_sxs(const UndirectedGraph& g,
                                             const std::vector<Vertex>& sources,
                                             std::uint64_t seed, EngineOptions opts = {});

// --- engine implementation ---

template <class Alg>
CongestMetrics SimNetwork::run(const std::vector<Alg>& algs,
                               const std::vector<std::uint64_t>& delays,
                               std::vector<std::vector<typename Alg::State>>& states_out) {
  if (algs.empty() || delays.size() != algs.size())
    fail(Errc::invalid_params, "engine needs one delay per algorithm");
  const std::size_t n = g_.n();
  const std::size_t arcs = 2 * g_.edge_count();
  const std::uint32_t id_bits = algs.size() > 1 ? ceil_log2(algs.size()) : 0;
  const std::size_t max_queue =
      opts_.max_queue ? opts_.max_queue : std::max<std::size_t>(8, 2 * algs.size());

  struct Queued {
    std::uint32_t alg;
    CongestMessage msg;
  };
  std::vector<std::deque<Queued>> queue(arcs);
  std::vector<std::uint64_t> inflight(algs.size(), 0);
  std::vector<std::int64_t> local_round(algs.size(), -1);
  std::vector<char> done(algs.size(), 0);
  std::vector<std::uint64_t> inbox_pending(algs.size(), 0);

  states_out.assign(algs.size(), {});
  std::vector<std::vector<Inbox>> inboxes(algs.size());
  for (std::size_t a = 0; a < algs.size(); ++a) {
    inboxes[a].resize(n);
    states_out[a].reserve(n);
    for (Vertex v = 0; v < n; ++v) states_out[a].push_back(algs[a].init_state(v));
  }

  std::vector<std::uint32_t> edge_total(g_.edge_count(), 0);
  CongestMetrics metrics;
  metrics.cap_bits = cap_bits_;
  metrics.precomputation_rounds = opts_.precomputation_rounds;

  auto arc_index = [&](Vertex from, Vertex to) {
    auto id = g_.edge_id(from, to);
    if (!id) fail(Errc::internal_error, "send to a non-neighbor rejected by the engine");
    return 2 * *id + (from < to ? 0u : 1u);
  };

  std::uint64_t g_round = 0;
  for (;; ++g_round) {
    if (g_round > opts_.round_limit) fail(Errc::internal_error, "round limit exceeded");
    bool all_done = true;
    for (std::size_t a = 0; a < algs.size(); ++a)
      if (!done[a]) all_done = false;
    if (all_done) break;

    // step phase
    for (std::size_t a = 0; a < algs.size(); ++a) {
      if (done[a] || g_round < delays[a] || inflight[a] > 0) continue;
      ++local_round[a];
      for (Vertex v = 0; v < n; ++v) {
        Outbox out;
        algs[a].step(v, static_cast<int>(local_round[a]), states_out[a][v], inboxes[a][v], out);
        if (!inboxes[a][v].msgs.empty()) {
          inbox_pending[a] -= inboxes[a][v].msgs.size();
          inboxes[a][v].msgs.clear();
        }
        for (const OutMessage& m : out.msgs) {
          if (m.bits + id_bits > cap_bits_)
            fail(Errc::invalid_params,
                 "message of " + std::to_string(m.bits + id_bits) + " bits exceeds the cap of " +
                     std::to_string(cap_bits_));
          metrics.max_msg_bits = std::max(metrics.max_msg_bits, m.bits + id_bits);
          auto arc = arc_index(v, m.to);
          queue[arc].push_back({static_cast<std::uint32_t>(a), CongestMessage{v, m.a, m.b}});
          if (queue[arc].size() > max_queue)
            fail(Errc::cap_exceeded, "deferred messages exceed the queue bound (declared "
                                     "congestion too small)");
          ++inflight[a];
        }
      }
    }

    // delivery phase: one message per edge direction
    for (std::size_t arc = 0; arc < arcs; ++arc) {
      if (queue[arc].empty()) continue;
      Queued q = queue[arc].front();
      queue[arc].pop_front();
      std::size_t edge = arc / 2;
      Vertex to = arc % 2 == 0 ? g_.edges()[edge].v : g_.edges()[edge].u;
      inboxes[q.alg][to].msgs.push_back(q.msg);
      ++inbox_pending[q.alg];
      --inflight[q.alg];
      ++metrics.total_msgs;
      ++edge_total[edge];
      metrics.max_edge_msgs_per_round = std::max(metrics.max_edge_msgs_per_round, 1u);
    }

    // quiescence per algorithm
    for (std::size_t a = 0; a < algs.size(); ++a) {
      if (done[a]) continue;
      if (local_round[a] >= 1 && inflight[a] == 0 && inbox_pending[a] == 0) done[a] = 1;
    }
  }

  metrics.rounds = g_round;
  for (std::uint32_t total : edge_total)
    metrics.max_edge_total_msgs = std::max(metrics.max_edge_total_msgs, total);
  return metrics;
}

}  // namespace restore
