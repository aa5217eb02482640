#pragma once

#include <cstdint>
#include <vector>

#include "restore/rpts.hpp"

namespace restore {

enum class PreserverKind { sxv, sxs };

struct Preserver {
  PreserverKind kind = PreserverKind::sxv;
  std::vector<Vertex> sources;
  int fault_budget = 0;
  std::vector<Edge> edges;  // sorted
  std::uint64_t fault_sets_enumerated = 0;

  UndirectedGraph subgraph(std::size_t n) const { return UndirectedGraph::from_edges(n, edges); }
  /// Asymptotic size bound the construction targets, for reporting:
  /// n^(2 - 1/2^f) * |S|^(1/2^f) with f the overlay budget.
  double bound_value(std::size_t n) const;
};

struct OverlayOptions {
  bool naive_enumeration = false;    // enumerate all subsets, for cross-checks
  std::uint64_t work_limit = 5'000'000;  // max tree computations
};

/// Overlay of every selected replacement path pi(s,v|F), s in S, v in V,
/// |F| <= f. By stability, only fault sets built edge-by-edge from
/// previously selected trees can contribute new paths, so the default
/// enumeration grows fault sets along tree edges; the naive flag enumerates
/// every subset instead and must produce the same edge set.
Preserver build_sxv_preserver(const Rpts& rpts, const std::vector<Vertex>& sources, int f,
                              const OverlayOptions& opts = {});

/// (f+1)-fault S x S preserver: the f-fault S x V overlay re-labeled. Any
/// S x S replacement path under f+1 faults splits at a midpoint into two
/// selected paths under at most f faults, both of which the overlay holds.
Preserver build_sxs_preserver(const Rpts& rpts, const std::vector<Vertex>& sources, int f_plus_1,
                              const OverlayOptions& opts = {});

struct Spanner {
  int fault_budget = 0;
  std::vector<Edge> edges;  // sorted
  std::vector<Vertex> centers;
  std::vector<bool> clustered;
  std::size_t repeats = 0;
  std::uint64_t fault_sets_enumerated = 0;

  UndirectedGraph subgraph(std::size_t n) const { return UndirectedGraph::from_edges(n, edges); }
};

struct SpannerOptions {
  std::size_t sigma = 0;    // 0: auto
  std::size_t repeats = 0;  // 0: ceil(log2 n) + 1, keep the sparsest
  std::int64_t perturbation_bound = 0;
  OverlayOptions overlay;
};

std::size_t auto_sigma(std::size_t n, int f);

/// +4 additive spanner tolerating f edge faults: sample cluster centers,
/// keep f+1 center edges per clustered vertex (so one survives any fault
/// set) and every edge of unclustered vertices, then add an f-fault
/// S x S preserver over the centers.
Spanner build_spanner(const UndirectedGraph& g, int f, std::uint64_t seed,
                      const SpannerOptions& opts = {});

/// Worst additive stretch excess max(dist_H\F - dist_G\F) over all vertex
/// pairs and all fault sets of size <= f_max; 0 faults included.
/// Unreachable pairs must be unreachable in both (else returns a large
/// sentinel via the optional being empty -> treated as failure by callers).
std::optional<std::uint32_t> max_stretch_excess(const UndirectedGraph& g,
                                                const UndirectedGraph& h, int f_max);

/// Step-by-step validation of the +4 argument on one (s,t,F) triple:
/// every intermediate distance comparison along the clustered-endpoints
/// chain must hold. Returns false with no side effects if any step fails.
bool validate_stretch_chain(const UndirectedGraph& g, const Spanner& spanner, Vertex s, Vertex t,
                            const FaultSet& faults);

}  // namespace restore
