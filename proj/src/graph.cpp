#include "restore/graph.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <fstream>
#include <sstream>

namespace restore {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::malformed_line: return "malformed_line";
    case Errc::vertex_out_of_range: return "vertex_out_of_range";
    case Errc::duplicate_edge: return "duplicate_edge";
    case Errc::self_loop: return "self_loop";
    case Errc::invalid_params: return "invalid_params";
    case Errc::tie_detected: return "tie_detected";
    case Errc::tie_unresolved: return "tie_unresolved";
    case Errc::p_not_shortest: return "p_not_shortest";
    case Errc::budget_exceeded: return "budget_exceeded";
    case Errc::budget_violation: return "budget_violation";
    case Errc::non_integral_recursion: return "non_integral_recursion";
    case Errc::size_infeasible: return "size_infeasible";
    case Errc::cap_exceeded: return "cap_exceeded";
    case Errc::nondeterminism: return "nondeterminism";
    case Errc::internal_error: return "internal_error";
  }
  return "unknown";
}

Error::Error(Errc code, const std::string& msg)
    : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

FaultSet::FaultSet(std::vector<Edge> edges) : edges_(std::move(edges)) {
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
}

FaultSet::FaultSet(std::initializer_list<Edge> edges)
    : FaultSet(std::vector<Edge>(edges)) {}

bool FaultSet::contains(Edge e) const {
  return std::binary_search(edges_.begin(), edges_.end(), e);
}

FaultSet FaultSet::with(Edge e) const {
  auto copy = edges_;
  copy.push_back(e);
  return FaultSet(std::move(copy));
}

void FaultSet::validate_against(const UndirectedGraph& g) const {
  for (Edge e : edges_) {
    if (!g.has_edge(e.u, e.v))
      fail(Errc::invalid_params,
           "fault {" + std::to_string(e.u) + "," + std::to_string(e.v) + "} is not a graph edge");
  }
}

UndirectedGraph UndirectedGraph::from_edges(std::size_t n, const std::vector<Edge>& edges) {
  UndirectedGraph g;
  g.adj_.resize(n);
  g.edges_.reserve(edges.size());
  for (Edge e : edges) {
    if (e.u == e.v)
      fail(Errc::self_loop, "self-loop at vertex " + std::to_string(e.u));
    if (e.u >= n || e.v >= n)
      fail(Errc::vertex_out_of_range,
           "edge {" + std::to_string(e.u) + "," + std::to_string(e.v) + "} exceeds n=" +
               std::to_string(n));
    g.edges_.push_back(Edge::make(e.u, e.v));
  }
  std::sort(g.edges_.begin(), g.edges_.end());
  auto dup = std::adjacent_find(g.edges_.begin(), g.edges_.end());
  if (dup != g.edges_.end())
    fail(Errc::duplicate_edge,
         "duplicate edge {" + std::to_string(dup->u) + "," + std::to_string(dup->v) + "}");
  for (Edge e : g.edges_) {
    g.adj_[e.u].push_back(e.v);
    g.adj_[e.v].push_back(e.u);
  }
  for (auto& nbrs : g.adj_) std::sort(nbrs.begin(), nbrs.end());
  return g;
}

bool UndirectedGraph::has_edge(Vertex a, Vertex b) const {
  return edge_id(a, b).has_value();
}

std::optional<std::size_t> UndirectedGraph::edge_id(Edge e) const {
  auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
  if (it == edges_.end() || *it != e) return std::nullopt;
  return static_cast<std::size_t>(it - edges_.begin());
}

namespace {

bool parse_two_u64(const std::string& line, std::uint64_t& a, std::uint64_t& b) {
  std::istringstream ss(line);
  if (!(ss >> a >> b)) return false;
  std::string rest;
  if (ss >> rest) return false;
  return true;
}

}  // namespace

UndirectedGraph load_graph(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  auto next_line = [&](std::string& out) -> bool {
    while (std::getline(in, line)) {
      ++lineno;
      std::size_t i = line.find_first_not_of(" \t\r");
      if (i == std::string::npos) continue;
      if (line[i] == '#') continue;
      out = line;
      return true;
    }
    return false;
  };

  std::string header;
  if (!next_line(header)) fail(Errc::malformed_line, "missing header line");
  std::uint64_t n = 0, m = 0;
  if (!parse_two_u64(header, n, m))
    fail(Errc::malformed_line, "bad header at line " + std::to_string(lineno));

  std::vector<Edge> edges;
  edges.reserve(m);
  for (std::uint64_t i = 0; i < m; ++i) {
    std::string edge_line;
    if (!next_line(edge_line))
      fail(Errc::malformed_line, "expected " + std::to_string(m) + " edges, got " +
                                     std::to_string(i));
    std::uint64_t a = 0, b = 0;
    if (!parse_two_u64(edge_line, a, b))
      fail(Errc::malformed_line, "bad edge at line " + std::to_string(lineno));
    if (a >= n || b >= n)
      fail(Errc::vertex_out_of_range, "vertex out of range at line " + std::to_string(lineno));
    edges.push_back({static_cast<Vertex>(a), static_cast<Vertex>(b)});
  }
  std::string extra;
  if (next_line(extra)) fail(Errc::malformed_line, "trailing content after edge list");
  return UndirectedGraph::from_edges(static_cast<std::size_t>(n), edges);
}

UndirectedGraph load_graph_string(const std::string& text) {
  std::istringstream ss(text);
  return load_graph(ss);
}

UndirectedGraph load_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::invalid_params, "cannot open graph file " + path);
  return load_graph(in);
}

void serialize_graph(const UndirectedGraph& g, std::ostream& out) {
  out << g.n() << ' ' << g.edge_count() << '\n';
  for (Edge e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

std::string serialize_graph(const UndirectedGraph& g) {
  std::ostringstream ss;
  serialize_graph(g, ss);
  return ss.str();
}

std::vector<HopDist> bfs_distances(const UndirectedGraph& g, Vertex s, const FaultSet& faults) {
  if (s >= g.n()) fail(Errc::invalid_params, "bfs source out of range");
  std::vector<HopDist> dist(g.n());
  std::deque<Vertex> queue;
  dist[s] = 0;
  queue.push_back(s);
  while (!queue.empty()) {
    Vertex u = queue.front();
    queue.pop_front();
    std::uint32_t du = *dist[u];
    for (Vertex v : g.adj(u)) {
      if (dist[v]) continue;
      if (!faults.empty() && faults.contains(u, v)) continue;
      dist[v] = du + 1;
      queue.push_back(v);
    }
  }
  return dist;
}

std::optional<std::vector<Vertex>> bfs_path(const UndirectedGraph& g, Vertex s, Vertex t,
                                            const FaultSet& faults) {
  if (s >= g.n() || t >= g.n()) fail(Errc::invalid_params, "bfs endpoint out of range");
  std::vector<Vertex> parent(g.n(), kNoVertex);
  std::vector<char> seen(g.n(), 0);
  std::deque<Vertex> queue;
  seen[s] = 1;
  queue.push_back(s);
  while (!queue.empty() && !seen[t]) {
    Vertex u = queue.front();
    queue.pop_front();
    for (Vertex v : g.adj(u)) {
      if (seen[v]) continue;
      if (!faults.empty() && faults.contains(u, v)) continue;
      seen[v] = 1;
      parent[v] = u;
      queue.push_back(v);
    }
  }
  if (!seen[t]) return std::nullopt;
  std::vector<Vertex> path;
  for (Vertex cur = t; cur != kNoVertex; cur = parent[cur]) path.push_back(cur);
  std::reverse(path.begin(), path.end());
  return path;
}

std::uint32_t ceil_log2(std::uint64_t n) {
  if (n <= 1) return 0;
  return static_cast<std::uint32_t>(std::bit_width(n - 1));
}

}  // namespace restore
