#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "restore/rpts.hpp"

namespace restore {

struct Counterexample {
  Vertex s = 0;
  Vertex t = 0;
  FaultSet faults;
  std::string detail;
};

/// Outcome of one exhaustive (or sampled) property check. A failing report
/// always carries a counterexample that re-fails in isolation.
struct PropertyReport {
  std::string property;
  bool pass = false;
  std::optional<Counterexample> counterexample;
  std::uint64_t instances_checked = 0;
  std::string notes;

  nlohmann::json to_json() const;
};

/// Ground truth for every preserver/spanner/label check: BFS distance in
/// G \ F.
HopDist oracle_replacement_distance(const UndirectedGraph& g, Vertex s, Vertex t,
                                    const FaultSet& faults);

struct CheckOptions {
  // Full enumeration below these thresholds, deterministic sampling above.
  std::size_t full_vertex_limit = 12;
  double full_work_limit = 1e6;  // compared against m^f_max
  std::uint64_t sample_count = 20000;
  std::uint64_t sample_seed = 1;
};

/// Visits fault sets of size <= f_max (optionally including the empty set)
/// in size-ascending, lexicographic edge-id order. Returns the number
/// visited; stops early when fn returns false.
std::uint64_t for_each_fault_set(const UndirectedGraph& g, int f_max, bool include_empty,
                                 const std::function<bool(const FaultSet&)>& fn);

/// True when the two selected paths s..x and t..x splice into a simple
/// s..t path that avoids every edge of `avoid` and has exactly `required`
/// hops.
bool valid_restoration(const Path& s_to_x, const Path& t_to_x, const FaultSet& avoid,
                       std::uint32_t required);

/// Searches all midpoints x and proper fault subsets F' for a valid
/// splice; used both by the exhaustive checker and for re-checking a
/// reported counterexample in isolation.
bool has_restoration(const UndirectedGraph& g, const SchemeFn& scheme, Vertex s, Vertex t,
                     const FaultSet& faults, HopDist replacement_dist,
                     Vertex* witness_x = nullptr);

PropertyReport check_restorable(const UndirectedGraph& g, const SchemeFn& scheme, int f_max,
                                const CheckOptions& opts = {});
PropertyReport check_consistent(const UndirectedGraph& g, const SchemeFn& scheme, int f_max,
                                const CheckOptions& opts = {});
PropertyReport check_stable(const UndirectedGraph& g, const SchemeFn& scheme, int f_max,
                            const CheckOptions& opts = {});

PropertyReport check_restorable(const Rpts& rpts, int f_max, const CheckOptions& opts = {});
PropertyReport check_consistent(const Rpts& rpts, int f_max, const CheckOptions& opts = {});
PropertyReport check_stable(const Rpts& rpts, int f_max, const CheckOptions& opts = {});

/// Fault-free scheme backed by an explicit path table; symmetric or not
/// depending on what the table holds. Missing pairs resolve to the unique
/// shortest path when one exists.
class TableScheme {
 public:
  explicit TableScheme(UndirectedGraph g);
  void set(Vertex s, Vertex t, std::vector<Vertex> path);            // one direction
  void set_symmetric(Vertex s, Vertex t, std::vector<Vertex> path);  // both directions
  const UndirectedGraph& graph() const { return g_; }
  SchemeFn fn() const;
  bool is_symmetric() const;

 private:
  UndirectedGraph g_;
  std::map<std::pair<Vertex, Vertex>, std::vector<Vertex>> table_;
  std::optional<Path> lookup(Vertex s, Vertex t) const;
};

/// The four symmetric schemes on a 4-cycle (one choice per antipodal pair).
std::vector<TableScheme> c4_symmetric_schemes();

/// Enumerates those four schemes and confirms each one violates
/// restorability for some single edge fault. Passes iff all four fail.
PropertyReport c4_symmetric_impossibility();

}  // namespace restore
