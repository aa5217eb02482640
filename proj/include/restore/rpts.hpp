#pragma once

#include <functional>
#include <memory>

#include "restore/perturb.hpp"

namespace restore {

/// A replacement-path selector: (s, t, F) -> canonical path in G \ F, or
/// nullopt when t is unreachable. All property checkers are written against
/// this interface so hand-built schemes can be checked alongside perturbed
/// ones.
using SchemeFn = std::function<std::optional<Path>(Vertex, Vertex, const FaultSet&)>;

/// Evaluator for the perturbed replacement-path scheme. pi(s,t|F) is the
/// unique shortest directed path in the reweighted graph with F removed.
/// Shortest-path trees are memoized per (source, canonical fault set) in an
/// LRU cache; queries are safe from concurrent threads and never observe a
/// partially built tree.
class Rpts {
 public:
  explicit Rpts(PerturbedDigraph pd, std::size_t cache_capacity = 1 << 15);
  Rpts(Rpts&&) noexcept;
  Rpts& operator=(Rpts&&) noexcept;
  ~Rpts();

  const PerturbedDigraph& perturbed() const { return pd_; }
  const UndirectedGraph& graph() const { return pd_.base; }
  std::size_t n() const { return pd_.base.n(); }

  std::shared_ptr<const Spt> spt(Vertex s, const FaultSet& faults = {}) const;
  std::optional<Path> pi(Vertex s, Vertex t, const FaultSet& faults = {}) const;

  SchemeFn scheme() const;

  std::uint64_t cache_hits() const;
  std::uint64_t cache_misses() const;

 private:
  struct Cache;
  PerturbedDigraph pd_;
  std::unique_ptr<Cache> cache_;
};

/// Builds a certified Rpts, retrying the whole perturbation with a stepped
/// seed if a tie surfaces under some fault set while fn runs.
template <class Fn>
auto with_tie_retry(const UndirectedGraph& g, std::uint64_t seed, std::int64_t bound, Fn&& fn,
                    int attempts = 8) {
  for (int a = 0;; ++a) {
    Rpts rpts(perturb(g, seed + 1000003ull * static_cast<std::uint64_t>(a), bound));
    try {
      return fn(rpts);
    } catch (const Error& e) {
      if (e.code() != Errc::tie_detected || a + 1 >= attempts) throw;
    }
  }
}

}  // namespace restore
