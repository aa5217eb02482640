#include "doctest.h"
#include "restore/ftnet.hpp"
#include "restore/generators.hpp"
#include "restore/rng.hpp"
#include "restore/verify.hpp"

#include <set>

using namespace restore;

namespace {

bool preserves(const UndirectedGraph& g, const Preserver& p, int budget) {
  UndirectedGraph h = p.subgraph(g.n());
  bool ok = true;
  for_each_fault_set(g, budget, true, [&](const FaultSet& F) {
    for (Vertex s : p.sources) {
      auto dg = bfs_distances(g, s, F);
      auto dh = bfs_distances(h, s, F);
      if (p.kind == PreserverKind::sxs) {
        for (Vertex t : p.sources)
          if (dg[t] != dh[t]) ok = false;
      } else {
        for (Vertex t = 0; t < g.n(); ++t)
          if (dg[t] != dh[t]) ok = false;
      }
    }
    return ok;
  });
  return ok;
}

}  // namespace

TEST_CASE("budget zero gives a union of shortest-path trees") {
  auto g = gen_gnp(15, 0.35, 2);
  Rpts rpts(perturb(g, 5));
  auto p = build_sxv_preserver(rpts, {0, 4, 9}, 0);
  CHECK(p.edges.size() <= 3 * (g.n() - 1));
  CHECK(preserves(g, p, 0));
  CHECK(p.fault_sets_enumerated == 3);
}

TEST_CASE("single-source one-fault overlay on the 4-cycle keeps all edges") {
  auto c4 = gen_cycle(4);
  Rpts rpts(perturb(c4, 1));
  auto p = build_sxv_preserver(rpts, {0}, 1);
  CHECK(p.edges.size() == 4);
  CHECK(preserves(c4, p, 1));
}

TEST_CASE("grown enumeration equals the naive subset enumeration") {
  SplitMix64 rng(8);
  for (int i = 0; i < 6; ++i) {
    auto g = gen_gnp(10, 0.35, rng.next());
    with_tie_retry(g, rng.next(), 1 << 20, [&](const Rpts& rpts) {
      for (int f = 0; f <= 2; ++f) {
        OverlayOptions naive;
        naive.naive_enumeration = true;
        auto a = build_sxv_preserver(rpts, {0, 3}, f);
        auto b = build_sxv_preserver(rpts, {0, 3}, f, naive);
        CHECK(a.edges == b.edges);
        CHECK(a.fault_sets_enumerated <= b.fault_sets_enumerated);
      }
      return 0;
    });
  }
}

TEST_CASE("overlays grow monotonically with the budget") {
  auto g = gen_gnp(12, 0.4, 3);
  with_tie_retry(g, 17, 1 << 20, [&](const Rpts& rpts) {
    auto f0 = build_sxv_preserver(rpts, {1, 5}, 0);
    auto f1 = build_sxv_preserver(rpts, {1, 5}, 1);
    auto f2 = build_sxv_preserver(rpts, {1, 5}, 2);
    std::set<Edge> e1(f1.edges.begin(), f1.edges.end());
    std::set<Edge> e2(f2.edges.begin(), f2.edges.end());
    for (Edge e : f0.edges) CHECK(e1.count(e) == 1);
    for (Edge e : f1.edges) CHECK(e2.count(e) == 1);
    return 0;
  });
}

TEST_CASE("subset preservers survive exhaustive fault sweeps") {
  SplitMix64 rng(21);
  for (int i = 0; i < 4; ++i) {
    auto g = gen_gnp(11, 0.35, rng.next());
    with_tie_retry(g, rng.next(), 1 << 20, [&](const Rpts& rpts) {
      auto one = build_sxs_preserver(rpts, {0, 2, 7}, 1);
      CHECK(preserves(g, one, 1));
      auto two = build_sxs_preserver(rpts, {0, 2, 7}, 2);
      CHECK(preserves(g, two, 2));
      CHECK(one.fault_budget == 1);
      CHECK(two.kind == PreserverKind::sxs);
      return 0;
    });
  }
}

TEST_CASE("one-fault subset preservers are unions of trees, so at most |S|(n-1) edges") {
  SplitMix64 rng(5);
  for (int i = 0; i < 5; ++i) {
    auto g = gen_gnp(25, 0.25, rng.next());
    Rpts rpts(perturb(g, rng.next()));
    std::vector<Vertex> sources{0, 3, 11, 19};
    auto p = build_sxs_preserver(rpts, sources, 1);
    CHECK(p.edges.size() <= sources.size() * (g.n() - 1));
  }
}

TEST_CASE("overlay enumeration respects the work limit") {
  auto g = gen_gnp(12, 0.5, 4);
  Rpts rpts(perturb(g, 9, 1 << 20));
  OverlayOptions opts;
  opts.work_limit = 5;
  CHECK_THROWS_AS(build_sxv_preserver(rpts, {0}, 2, opts), Error);
  try {
    build_sxv_preserver(rpts, {0}, 2, opts);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::budget_exceeded);
  }
}

TEST_CASE("star spanners keep the whole star") {
  auto star = gen_star(12);
  auto sp = build_spanner(star, 1, 6);
  CHECK(sp.edges.size() == star.edge_count());
}

TEST_CASE("one-fault spanners stay within +4 under every single failure") {
  SplitMix64 rng(63);
  for (int i = 0; i < 4; ++i) {
    auto g = gen_gnp(24, 0.25, rng.next());
    auto sp = build_spanner(g, 1, rng.next());
    auto excess = max_stretch_excess(g, sp.subgraph(g.n()), 1);
    REQUIRE(excess.has_value());
    CHECK(*excess <= 4);
  }
}

TEST_CASE("stretch argument chain validates step by step") {
  SplitMix64 rng(70);
  auto g = gen_gnp(20, 0.35, 11);
  auto sp = build_spanner(g, 1, 13);
  int checked = 0;
  for (int i = 0; i < 60; ++i) {
    Vertex s = static_cast<Vertex>(rng.below(g.n()));
    Vertex t = static_cast<Vertex>(rng.below(g.n()));
    FaultSet f{g.edges()[rng.below(g.edge_count())]};
    CHECK(validate_stretch_chain(g, sp, s, t, f));
    ++checked;
  }
  CHECK(checked == 60);
}

TEST_CASE("clustered vertices keep enough center edges to survive the budget") {
  auto g = gen_gnp(30, 0.4, 29);
  int f = 1;
  auto sp = build_spanner(g, f, 31);
  UndirectedGraph h = sp.subgraph(g.n());
  std::set<Vertex> centers(sp.centers.begin(), sp.centers.end());
  for (Vertex v = 0; v < g.n(); ++v) {
    if (!sp.clustered[v]) continue;
    int center_edges = 0;
    for (Vertex u : h.adj(v))
      if (centers.count(u)) ++center_edges;
    // f+1 stored, so k - |F| >= 1 survive any fault set within budget
    CHECK(center_edges >= f + 1);
  }
}

TEST_CASE("auto sigma tracks the balancing exponent") {
  CHECK(auto_sigma(100, 1) == 20);  // 2 * 100^(1/2)
  CHECK(auto_sigma(64, 2) == 8);    // 2 * 64^(1/3)
  CHECK(auto_sigma(4, 1) <= 4);
}

TEST_CASE("preserver sidecar stats are populated") {
  auto g = gen_gnp(14, 0.3, 77);
  Rpts rpts(perturb(g, 3));
  auto p = build_sxs_preserver(rpts, {1, 2, 3}, 1);
  CHECK(p.bound_value(g.n()) == doctest::Approx(14.0 * 3.0));
  CHECK(p.fault_sets_enumerated == 3);
}
