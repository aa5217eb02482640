#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace restore {

using Vertex = std::uint32_t;
inline constexpr Vertex kNoVertex = static_cast<Vertex>(-1);

enum class Errc {
  malformed_line,
  vertex_out_of_range,
  duplicate_edge,
  self_loop,
  invalid_params,
  tie_detected,
  tie_unresolved,
  p_not_shortest,
  budget_exceeded,
  budget_violation,
  non_integral_recursion,
  size_infeasible,
  cap_exceeded,
  nondeterminism,
  internal_error,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg);
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] void fail(Errc code, const std::string& msg);

/// Undirected edge stored with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  static Edge make(Vertex a, Vertex b) { return a < b ? Edge{a, b} : Edge{b, a}; }
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Exact lexicographic path weight: hop count first, integer perturbation
/// second. Perturbation magnitudes are bounded so hop order is never
/// overturned by the tiebreaking term.
struct PathWeight {
  std::uint32_t hops = 0;
  std::int64_t perturbation = 0;

  friend auto operator<=>(const PathWeight&, const PathWeight&) = default;
  PathWeight operator+(const PathWeight& o) const {
    return {hops + o.hops, perturbation + o.perturbation};
  }
  PathWeight& operator+=(const PathWeight& o) {
    hops += o.hops;
    perturbation += o.perturbation;
    return *this;
  }
};

/// Simple path v0..vk. weight.hops always equals vertex count minus one.
struct Path {
  std::vector<Vertex> vertices;
  PathWeight weight;

  std::uint32_t hops() const { return static_cast<std::uint32_t>(vertices.size()) - 1; }
  friend bool operator==(const Path& a, const Path& b) { return a.vertices == b.vertices; }
};

class UndirectedGraph;

/// Small canonical (sorted, deduplicated) set of failed undirected edges.
class FaultSet {
 public:
  FaultSet() = default;
  explicit FaultSet(std::vector<Edge> edges);
  FaultSet(std::initializer_list<Edge> edges);

  bool contains(Edge e) const;
  bool contains(Vertex a, Vertex b) const { return contains(Edge::make(a, b)); }
  std::size_t size() const { return edges_.size(); }
  bool empty() const { return edges_.empty(); }
  const std::vector<Edge>& edges() const { return edges_; }
  auto begin() const { return edges_.begin(); }
  auto end() const { return edges_.end(); }

  FaultSet with(Edge e) const;
  /// Throws unless every member is an edge of g.
  void validate_against(const UndirectedGraph& g) const;

  friend auto operator<=>(const FaultSet&, const FaultSet&) = default;

 private:
  std::vector<Edge> edges_;
};

/// Simple unweighted undirected graph on vertices 0..n-1 with sorted
/// adjacency lists and a lexicographically sorted edge list.
class UndirectedGraph {
 public:
  UndirectedGraph() = default;
  static UndirectedGraph from_edges(std::size_t n, const std::vector<Edge>& edges);

  std::size_t n() const { return adj_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Vertex>& adj(Vertex v) const { return adj_[v]; }
  bool has_edge(Vertex a, Vertex b) const;
  std::optional<std::size_t> edge_id(Edge e) const;
  std::optional<std::size_t> edge_id(Vertex a, Vertex b) const { return edge_id(Edge::make(a, b)); }

  friend bool operator==(const UndirectedGraph& a, const UndirectedGraph& b) {
    return a.adj_.size() == b.adj_.size() && a.edges_ == b.edges_;
  }

 private:
  std::vector<Edge> edges_;
  std::vector<std::vector<Vertex>> adj_;
};

/// Parses the edge-list format: first line "n m", then m lines "u v".
/// Lines starting with '#' are ignored. Each malformed input is reported
/// as a distinct error class.
UndirectedGraph load_graph(std::istream& in);
UndirectedGraph load_graph_string(const std::string& text);
UndirectedGraph load_graph_file(const std::string& path);

void serialize_graph(const UndirectedGraph& g, std::ostream& out);
std::string serialize_graph(const UndirectedGraph& g);

using HopDist = std::optional<std::uint32_t>;  // nullopt means unreachable

/// Exact hop distances from s in g with the fault edges removed.
std::vector<HopDist> bfs_distances(const UndirectedGraph& g, Vertex s,
                                   const FaultSet& faults = {});

/// One hop-shortest s..t path in g minus faults (deterministic: BFS parents
/// are the smallest-id vertex of the previous layer), or nullopt.
std::optional<std::vector<Vertex>> bfs_path(const UndirectedGraph& g, Vertex s, Vertex t,
                                            const FaultSet& faults = {});

std::uint32_t ceil_log2(std::uint64_t n);

}  // namespace restore
