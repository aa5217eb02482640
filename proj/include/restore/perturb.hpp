#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "restore/graph.hpp"

namespace restore {

/// The antisymmetrically reweighted directed view of an undirected graph:
/// arc (u,v) has weight (1 hop, r(u,v)) with r(u,v) = -r(v,u), |r| <= K.
/// Unique shortest paths are certified for the fault-free case at
/// construction time (see perturb); K is large enough that resampling is
/// essentially never needed, yet path sums stay in exact int64 range.
struct PerturbedDigraph {
  UndirectedGraph base;
  std::int64_t bound = 0;         // K
  std::uint64_t seed = 0;         // seed that produced the accepted assignment
  int retries = 0;                // resamples performed before acceptance
  std::vector<std::int64_t> forward;  // r(u,v) for each edge id, oriented u < v

  std::int64_t r(Vertex from, Vertex to) const {
    auto id = base.edge_id(from, to);
    if (!id) fail(Errc::invalid_params, "r() on a non-edge");
    return from < to ? forward[*id] : -forward[*id];
  }
};

/// Default per-arc bound: n^3. Large enough that a resample certifies a
/// tie-free instance after a handful of attempts at most.
std::int64_t default_perturbation_bound(std::size_t n);

/// Draws the antisymmetric assignment from (seed, edge) pairs, then runs a
/// full single-source pass from every vertex on the fault-free graph; on a
/// detected tie the whole assignment is resampled with seed+1. Throws
/// tie_unresolved after max_retries resamples (K too small).
PerturbedDigraph perturb(const UndirectedGraph& g, std::uint64_t seed, std::int64_t bound = 0,
                         int max_retries = 16);

/// Builds the raw assignment without the tie-free certification pass.
PerturbedDigraph perturb_uncertified(const UndirectedGraph& g, std::uint64_t seed,
                                     std::int64_t bound);

/// Shortest-path tree under lexicographic (hops, perturbation) weights.
struct Spt {
  Vertex source = 0;
  FaultSet faults;
  std::vector<std::optional<PathWeight>> dist;
  std::vector<Vertex> parent;  // kNoVertex at the root and at unreachable vertices

  std::optional<Path> path_to(Vertex t) const;
  std::vector<Edge> tree_edges() const;
};

/// Dijkstra on the perturbed digraph with both orientations of every fault
/// edge removed. Throws tie_detected if two distinct predecessors realize
/// the same final weight at some vertex (the instance is then resampled
/// upstream).
Spt dijkstra_sssp(const PerturbedDigraph& pd, Vertex s, const FaultSet& faults = {});

/// Reproduction dump: one line "u v r" per edge, oriented so r(u,v) >= 0.
void dump_perturbation(const PerturbedDigraph& pd, std::ostream& out);

}  // namespace restore
