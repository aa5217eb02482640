#pragma once

#include <cstdint>
#include <vector>

#include "json.hpp"
#include "restore/rpts.hpp"

namespace restore {

/// Replacement distance for each edge along one fixed shortest path, in
/// path order.
using EdgeFailureDistances = std::vector<std::pair<Edge, HopDist>>;

/// For every edge e of the shortest s..t path P, the s..t distance in
/// h \ {e}. Near-linear: two BFS passes, one branch-index scan per side,
/// and an interval-minimum sweep over non-path edges (each non-path edge
/// can bypass a contiguous run of failed path edges).
/// Throws p_not_shortest unless P is a shortest s..t path in h.
EdgeFailureDistances single_pair_rp(const UndirectedGraph& h, Vertex s, Vertex t, const Path& p);

/// Quadratic reference: one BFS per failed edge. Must agree with
/// single_pair_rp everywhere.
EdgeFailureDistances single_pair_rp_reference(const UndirectedGraph& h, Vertex s, Vertex t,
                                              const Path& p);

struct SrpPair {
  Vertex s = 0;
  Vertex t = 0;
  HopDist base;
  EdgeFailureDistances failures;
};

struct SrpOutput {
  std::vector<SrpPair> pairs;  // unordered pairs, s < t, sorted
  std::uint64_t seed = 0;
  nlohmann::json to_json() const;
};

struct SrpOptions {
  std::int64_t perturbation_bound = 0;  // 0: default bound
  bool check_reference = true;          // cross-check the sweep per pair
};

/// Subset replacement paths: perturb once, compute one outgoing tree per
/// source, then answer each pair on the union of its two trees.
SrpOutput srp(const UndirectedGraph& g, std::vector<Vertex> sources, std::uint64_t seed,
              const SrpOptions& opts = {});

}  // namespace restore
