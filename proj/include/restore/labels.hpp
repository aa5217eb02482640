#pragma once

#include <cstdint>
#include <vector>

#include "restore/ftnet.hpp"

namespace restore {

/// Exact-distance label: the edge set of the owner's single-source overlay
/// preserver at budget f. Two labels plus the fault set answer any
/// replacement distance under f+1 faults.
struct DistanceLabel {
  Vertex owner = 0;
  std::uint32_t n = 0;
  int f = 0;
  std::vector<Edge> edges;  // sorted

  /// Nominal size: |edges| * 2 * ceil(log2 n) bits.
  std::uint64_t bit_size() const;
  /// Size of the delta-encoded serialized form, in bits.
  std::uint64_t serialized_bits() const { return 8 * serialize().size(); }

  std::vector<std::uint8_t> serialize() const;
  static DistanceLabel deserialize(const std::vector<std::uint8_t>& bytes);
};

std::vector<DistanceLabel> build_labels(const Rpts& rpts, int f, const OverlayOptions& opts = {});
DistanceLabel build_label(const Rpts& rpts, Vertex owner, int f, const OverlayOptions& opts = {});

/// BFS distance between the owners inside (label_a ∪ label_b) \ F. Throws
/// budget_violation when |F| exceeds f+1 for the labels' build budget f.
HopDist query(const DistanceLabel& a, const DistanceLabel& b, const FaultSet& faults);

}  // namespace restore
