#include "doctest.h"
#include "restore/generators.hpp"
#include "restore/rng.hpp"
#include "restore/verify.hpp"

using namespace restore;

TEST_CASE("oracle replacement distance") {
  auto c4 = gen_cycle(4);
  CHECK(*oracle_replacement_distance(c4, 0, 2, FaultSet{Edge::make(0, 1)}) == 2);
  auto p3 = gen_path(3);
  CHECK_FALSE(oracle_replacement_distance(p3, 0, 2, FaultSet{Edge::make(0, 1)}).has_value());
  auto g = gen_gnp(11, 0.4, 6);
  for (Vertex s = 0; s < g.n(); ++s) {
    auto d = bfs_distances(g, s);
    for (Vertex t = 0; t < g.n(); ++t)
      CHECK(oracle_replacement_distance(g, s, t, {}) == d[t]);
  }
}

TEST_CASE("oracle is symmetric and monotone under added faults") {
  SplitMix64 rng(31);
  auto g = gen_gnp(10, 0.35, 12);
  auto worse = [](HopDist a, HopDist b) {
    // b at least as large, with unreachable greater than everything finite
    if (!b) return true;
    if (!a) return false;
    return *b >= *a;
  };
  for (int i = 0; i < 200; ++i) {
    Vertex s = static_cast<Vertex>(rng.below(g.n()));
    Vertex t = static_cast<Vertex>(rng.below(g.n()));
    Edge e1 = g.edges()[rng.below(g.edge_count())];
    Edge e2 = g.edges()[rng.below(g.edge_count())];
    FaultSet one{e1};
    FaultSet two = one.with(e2);
    CHECK(oracle_replacement_distance(g, s, t, one) == oracle_replacement_distance(g, t, s, one));
    CHECK(worse(oracle_replacement_distance(g, s, t, one),
                oracle_replacement_distance(g, s, t, two)));
  }
}

TEST_CASE("perturbed schemes pass all three checks on small graphs") {
  SplitMix64 rng(101);
  for (int i = 0; i < 6; ++i) {
    auto g = gen_gnp(5 + i % 4, i % 2 ? 0.5 : 0.3, rng.next());
    with_tie_retry(g, rng.next(), 0, [&](const Rpts& rpts) {
      auto r1 = check_restorable(rpts, 2);
      auto r2 = check_consistent(rpts, 2);
      auto r3 = check_stable(rpts, 2);
      CHECK(r1.pass);
      CHECK(r2.pass);
      CHECK(r3.pass);
      if (g.edge_count() > 0) CHECK(r1.instances_checked > 0);
      return 0;
    });
  }
}

TEST_CASE("tree schemes pass trivially") {
  auto g = gen_path(7);
  Rpts rpts(perturb(g, 2));
  CHECK(check_restorable(rpts, 2).pass);
  CHECK(check_consistent(rpts, 2).pass);
  CHECK(check_stable(rpts, 2).pass);
}

TEST_CASE("symmetric 4-cycle scheme fails restorability at its path edge") {
  auto schemes = c4_symmetric_schemes();
  REQUIRE(schemes.size() == 4);
  auto report = check_restorable(schemes[0].graph(), schemes[0].fn(), 1);
  CHECK_FALSE(report.pass);
  REQUIRE(report.counterexample.has_value());
  // the witness fault lies on the selected path between the witness pair
  const auto& ce = *report.counterexample;
  REQUIRE(ce.faults.size() == 1);
  auto p = schemes[0].fn()(ce.s, ce.t, {});
  REQUIRE(p.has_value());
  bool on_path = false;
  for (std::size_t i = 0; i + 1 < p->vertices.size(); ++i)
    if (Edge::make(p->vertices[i], p->vertices[i + 1]) == *ce.faults.begin()) on_path = true;
  CHECK(on_path);

  SUBCASE("the counterexample re-fails in isolation") {
    CHECK_FALSE(has_restoration(schemes[0].graph(), schemes[0].fn(), ce.s, ce.t, ce.faults,
                                oracle_replacement_distance(schemes[0].graph(), ce.s, ce.t,
                                                            ce.faults)));
  }
}

TEST_CASE("4-cycle impossibility: all four symmetric schemes break") {
  auto report = c4_symmetric_impossibility();
  CHECK(report.pass);
  CHECK(report.instances_checked == 4);
  CHECK(report.notes.find("scheme 0") != std::string::npos);
  CHECK(report.notes.find("scheme 3") != std::string::npos);

  SUBCASE("sanity: the enumerated schemes are symmetric and shortest") {
    for (const auto& s : c4_symmetric_schemes()) {
      CHECK(s.is_symmetric());
      auto fn = s.fn();
      for (Vertex a = 0; a < 4; ++a) {
        auto dist = bfs_distances(s.graph(), a);
        for (Vertex b = 0; b < 4; ++b) {
          auto p = fn(a, b, {});
          REQUIRE(p.has_value());
          CHECK(p->hops() == *dist[b]);
        }
      }
    }
  }
}

TEST_CASE("a hand-built inconsistent scheme is caught") {
  // 4-cycle with a pendant: 0-1-2-3-0 plus 2-4. Both s..4 routes are tied
  // through 2; choosing one route for (0,4) and the other for (0,2) breaks
  // subpath consistency.
  auto g = UndirectedGraph::from_edges(5, {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {2, 4}});
  TableScheme ts(g);
  ts.set_symmetric(0, 4, {0, 1, 2, 4});
  ts.set_symmetric(0, 2, {0, 3, 2});
  ts.set_symmetric(1, 3, {1, 2, 3});
  auto report = check_consistent(g, ts.fn(), 0);
  CHECK_FALSE(report.pass);
  REQUIRE(report.counterexample.has_value());

  SUBCASE("aligning the choices restores consistency") {
    TableScheme good(g);
    good.set_symmetric(0, 4, {0, 1, 2, 4});
    good.set_symmetric(0, 2, {0, 1, 2});
    good.set_symmetric(1, 3, {1, 2, 3});
    CHECK(check_consistent(g, good.fn(), 0).pass);
  }
}

TEST_CASE("disconnected pairs are vacuously restorable") {
  // two triangles, no connection
  auto g = UndirectedGraph::from_edges(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
  Rpts rpts(perturb(g, 7));
  CHECK(check_restorable(rpts, 2).pass);
}

TEST_CASE("property reports serialize to the documented shape") {
  auto report = c4_symmetric_impossibility();
  auto j = report.to_json();
  CHECK(j["property"] == "c4_symmetric_impossibility");
  CHECK(j["pass"] == true);
  CHECK(j["instances_checked"] == 4);
  CHECK_FALSE(j.contains("counterexample"));

  auto bad = check_restorable(c4_symmetric_schemes()[1].graph(), c4_symmetric_schemes()[1].fn(), 1);
  auto jb = bad.to_json();
  CHECK(jb["pass"] == false);
  CHECK(jb.contains("counterexample"));
  CHECK(jb["counterexample"].contains("faults"));
}

TEST_CASE("oversize instances fall back to sampling") {
  auto g = gen_gnp(30, 0.2, 40);
  CheckOptions opts;
  opts.sample_count = 300;
  auto report = with_tie_retry(g, 5, 0, [&](const Rpts& rpts) {
    return check_restorable(rpts, 2, opts);
  });
  CHECK(report.pass);
  CHECK(report.notes == "sampled");
  CHECK(report.instances_checked <= 300);
}
