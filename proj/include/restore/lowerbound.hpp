#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "restore/verify.hpp"

namespace restore {

/// Inductive hard-instance family. The base graph (per copy) is a spine
/// path whose vertices hang progressively shorter connector paths, so every
/// root-to-leaf path has the same length; higher levels replace the leaf
/// row by recursive copies on sqrt(d). Each leaf carries a label of at most
/// f spine edges whose removal keeps its own root path alive while cutting
/// every path to the leaves on its right.
///
/// The starred variant attaches a terminal set X behind a pad chain and a
/// complete leaf-X bipartite graph with strictly decreasing sub-unit
/// weights, which forces every bipartite edge onto some selected
/// replacement path.
struct LbGraph {
  UndirectedGraph graph;
  int f = 1;
  std::size_t d = 1;
  std::size_t sigma = 1;
  bool is_gstar = false;

  std::vector<Vertex> roots;                    // one per copy
  std::vector<Vertex> leaves;                   // global, left-to-right
  std::vector<std::size_t> leaf_copy;           // copy index per leaf
  std::vector<std::vector<Edge>> labels;        // per leaf, <= f spine edges
  std::vector<std::vector<Vertex>> root_paths;  // per leaf, root..leaf
  std::size_t depth = 0;                        // hops from a root to any of its leaves

  // starred variant only
  std::vector<Vertex> x_set;
  Vertex v_star = kNoVertex;
  std::vector<Edge> bipartite;
  std::int64_t weight_den = 1;
  std::vector<std::int64_t> weight_num;  // per edge id, over weight_den
};

bool lb_admissible_d(int f, std::size_t d);
std::vector<std::size_t> lb_admissible_ds(int f, std::size_t n_max);

/// Exact counts via the construction's recurrences.
std::size_t lb_vertex_count(int f, std::size_t d);
std::size_t lb_leaf_count(int f, std::size_t d);
std::size_t lb_depth(int f, std::size_t d);

LbGraph build_gfd(int f, std::size_t d);

/// Verifies on the built instance: (1) the root-to-leaf path is unique,
/// (2) it survives removing the labels of its own and all right-hand
/// leaves, (3) every left-hand leaf label cuts it, (4) all leaf depths are
/// equal.
PropertyReport check_path_lemma(const LbGraph& lb);

/// sigma copies sharing a terminal set X of size x_size behind a single
/// connector vertex; bipartite weights are exact rationals over a common
/// denominator, strictly decreasing in the leaf index.
LbGraph build_gstar(int f, std::size_t d, std::size_t sigma, std::size_t x_size);

/// Sizes X so the whole instance has exactly n_target vertices; throws
/// size_infeasible when the fixed components already exceed the target.
LbGraph build_gstar_for_n(int f, std::size_t d, std::size_t sigma, std::size_t n_target);

/// For every terminal and every leaf, recomputes the weighted shortest path
/// from the leaf copy's source under the leaf's label faults and confirms
/// the path enters the terminal through that leaf, so the overlay holds
/// every bipartite edge.
PropertyReport certify_blowup(const LbGraph& lb);

/// The weight-induced selector on a starred instance: unique weighted
/// shortest paths, hop-shortest by construction.
SchemeFn lb_weighted_scheme(const LbGraph& lb);

/// One line "u v num den" per edge.
void write_weights(const LbGraph& lb, std::ostream& out);

}  // namespace restore
