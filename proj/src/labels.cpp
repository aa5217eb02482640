#include "restore/labels.hpp"

#include <algorithm>
#include <deque>

namespace restore {

namespace {

void put_varint(std::vector<std::uint8_t>& out, std::uint64_t value) {
  while (value >= 0x80) {
    out.push_back(static_cast<std::uint8_t>(value) | 0x80);
    value >>= 7;
  }
  out.push_back(static_cast<std::uint8_t>(value));
}

std::uint64_t get_varint(const std::vector<std::uint8_t>& in, std::size_t& pos) {
  std::uint64_t value = 0;
  int shift = 0;
  for (;;) {
    if (pos >= in.size()) fail(Errc::malformed_line, "truncated label encoding");
    std::uint8_t byte = in[pos++];
    value |= static_cast<std::uint64_t>(byte & 0x7f) << shift;
    if (!(byte & 0x80)) return value;
    shift += 7;
  }
}

}  // namespace

std::uint64_t DistanceLabel::bit_size() const {
  return static_cast<std::uint64_t>(edges.size()) * 2 * ceil_log2(n);
}

std::vector<std::uint8_t> DistanceLabel::serialize() const {
  std::vector<std::uint8_t> out;
  put_varint(out, owner);
  put_varint(out, n);
  put_varint(out, static_cast<std::uint64_t>(f));
  put_varint(out, edges.size());
  // sorted edges, delta-encoded: (du, v - u) with v reset on new u,
  // otherwise (0, dv)
  Vertex pu = 0, pv = 0;
  for (Edge e : edges) {
    std::uint32_t du = e.u - pu;
    put_varint(out, du);
    put_varint(out, du > 0 ? e.v - e.u : e.v - pv);
    pu = e.u;
    pv = e.v;
  }
  return out;
}

DistanceLabel DistanceLabel::deserialize(const std::vector<std::uint8_t>& bytes) {
  DistanceLabel label;
  std::size_t pos = 0;
  label.owner = static_cast<Vertex>(get_varint(bytes, pos));
  label.n = static_cast<std::uint32_t>(get_varint(bytes, pos));
  label.f = static_cast<int>(get_varint(bytes, pos));
  std::uint64_t count = get_varint(bytes, pos);
  Vertex pu = 0, pv = 0;
  for (std::uint64_t i = 0; i < count; ++i) {
    auto du = static_cast<Vertex>(get_varint(bytes, pos));
    auto dv = static_cast<Vertex>(get_varint(bytes, pos));
    Vertex u = pu + du;
    Vertex v = du > 0 ? u + dv : pv + dv;
    label.edges.push_back({u, v});
    pu = u;
    pv = v;
  }
  return label;
}

DistanceLabel build_label(const Rpts& rpts, Vertex owner, int f, const OverlayOptions& opts) {
  Preserver p = build_sxv_preserver(rpts, {owner}, f, opts);
  DistanceLabel label;
  label.owner = owner;
  label.n = static_cast<std::uint32_t>(rpts.n());
  label.f = f;
  label.edges = std::move(p.edges);
  return label;
}

std::vector<DistanceLabel> build_labels(const Rpts& rpts, int f, const OverlayOptions& opts) {
  std::vector<DistanceLabel> labels;
  labels.reserve(rpts.n());
  for (Vertex v = 0; v < rpts.n(); ++v) labels.push_back(build_label(rpts, v, f, opts));
  return labels;
}

HopDist query(const DistanceLabel& a, const DistanceLabel& b, const FaultSet& faults) {
  if (a.n != b.n || a.f != b.f)
    fail(Errc::invalid_params, "labels from different constructions");
  if (faults.size() > static_cast<std::size_t>(a.f) + 1)
    fail(Errc::budget_violation, "fault set exceeds the labels' query budget f+1=" +
                                     std::to_string(a.f + 1));
  std::vector<Edge> edges = a.edges;
  edges.insert(edges.end(), b.edges.begin(), b.edges.end());
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  edges.erase(std::remove_if(edges.begin(), edges.end(),
                             [&](Edge e) { return faults.contains(e); }),
              edges.end());
  UndirectedGraph u = UndirectedGraph::from_edges(a.n, edges);
  return bfs_distances(u, a.owner)[b.owner];
}

}  // namespace restore
