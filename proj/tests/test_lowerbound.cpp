#include "doctest.h"
#include "restore/lowerbound.hpp"

#include <set>
#include <sstream>

using namespace restore;

TEST_CASE("admissible widths") {
  CHECK(lb_admissible_d(1, 3));
  CHECK(lb_admissible_d(1, 7));
  CHECK(lb_admissible_d(2, 4));
  CHECK(lb_admissible_d(2, 9));
  CHECK_FALSE(lb_admissible_d(2, 5));
  CHECK(lb_admissible_d(3, 16));
  CHECK_FALSE(lb_admissible_d(3, 4));
  CHECK_THROWS_AS(build_gfd(2, 5), Error);
  try {
    build_gfd(2, 5);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::non_integral_recursion);
  }
  auto ds = lb_admissible_ds(2, 400);
  CHECK(ds == std::vector<std::size_t>{4, 9, 16});
}

TEST_CASE("counts satisfy the construction recurrences and the 2fd^2 cap") {
  struct Case {
    int f;
    std::size_t d, n, leaves, depth;
  };
  // exact counts: spine d, connector interiors d(d-1)/2, leaf rows by level
  for (const Case& c : {Case{1, 3, 9, 3, 3}, Case{1, 4, 14, 4, 4}, Case{2, 4, 30, 8, 6}}) {
    auto lb = build_gfd(c.f, c.d);
    CHECK(lb.graph.n() == c.n);
    CHECK(lb_vertex_count(c.f, c.d) == c.n);
    CHECK(lb.leaves.size() == c.leaves);
    CHECK(lb_leaf_count(c.f, c.d) == c.leaves);
    CHECK(lb.depth == c.depth);
    CHECK(lb_depth(c.f, c.d) == c.depth);
    // size cap and the closed form for the leaf count
    CHECK(lb.graph.n() <= 2 * static_cast<std::size_t>(c.f) * c.d * c.d);
    double expect_leaves = std::pow(static_cast<double>(c.d),
                                    2.0 - 1.0 / std::pow(2.0, c.f - 1));
    CHECK(static_cast<double>(c.leaves) == doctest::Approx(expect_leaves));
    CHECK(lb.depth <= 2 * c.d);
    // recurrences across one level
    if (c.f == 2) {
      std::size_t sub = 2;  // sqrt(4)
      CHECK(lb_vertex_count(2, 4) == 4 * lb_vertex_count(1, sub) + 4 + 4 * 3 / 2);
      CHECK(lb_leaf_count(2, 4) == 4 * lb_leaf_count(1, sub));
      CHECK(lb_depth(2, 4) == 4 + lb_depth(1, sub));
    }
  }
}

TEST_CASE("labels are short and tree structure is labeled consistently") {
  auto lb = build_gfd(2, 4);
  CHECK(lb.graph.edge_count() == lb.graph.n() - 1);  // a tree
  REQUIRE(lb.labels.size() == lb.leaves.size());
  for (std::size_t j = 0; j < lb.labels.size(); ++j) CHECK(lb.labels[j].size() <= 2);
  CHECK(lb.labels.back().empty());  // rightmost leaf of the rightmost copy
  CHECK(lb.labels.front().size() == 2);
}

TEST_CASE("path lemma holds for the built family") {
  for (auto [f, d] : {std::pair<int, std::size_t>{1, 4}, {2, 4}, {1, 7}, {2, 9}}) {
    auto lb = build_gfd(f, d);
    auto report = check_path_lemma(lb);
    CHECK(report.pass);
    CHECK(report.instances_checked == lb.leaves.size());
  }
}

TEST_CASE("a mutated instance breaks path uniqueness") {
  auto lb = build_gfd(1, 4);
  auto edges = lb.graph.edges();
  edges.push_back(Edge::make(lb.leaves[0], lb.leaves[1]));
  LbGraph mutated = lb;
  mutated.graph = UndirectedGraph::from_edges(lb.graph.n(), edges);
  auto report = check_path_lemma(mutated);
  CHECK_FALSE(report.pass);
  REQUIRE(report.counterexample.has_value());
  CHECK(report.counterexample->detail.find("unique") != std::string::npos);
}

TEST_CASE("starred instance wiring and weights") {
  auto lb = build_gstar(1, 4, 1, 6);
  CHECK(lb.is_gstar);
  CHECK(lb.x_set.size() == 6);
  CHECK(lb.bipartite.size() == 4 * 6);
  // n = family(14) + v*(1) + X(6); the pad chain is the single connector
  CHECK(lb.graph.n() == 14 + 1 + 6);
  // terminal route and leaf routes tie at depth+1 hops
  auto d = bfs_distances(lb.graph, lb.roots[0]);
  for (Vertex x : lb.x_set) CHECK(*d[x] == lb.depth + 1);

  // all non-bipartite edges carry weight exactly 1
  std::set<Edge> bip(lb.bipartite.begin(), lb.bipartite.end());
  for (std::size_t id = 0; id < lb.graph.edge_count(); ++id) {
    if (bip.count(lb.graph.edges()[id]))
      CHECK(lb.weight_num[id] < lb.weight_den);
    else
      CHECK(lb.weight_num[id] == lb.weight_den);
  }

  // bipartite weights strictly decrease with the leaf index
  for (Vertex x : lb.x_set)
    for (std::size_t j = 0; j + 1 < lb.leaves.size(); ++j) {
      auto wa = lb.weight_num[*lb.graph.edge_id(Edge::make(lb.leaves[j], x))];
      auto wb = lb.weight_num[*lb.graph.edge_id(Edge::make(lb.leaves[j + 1], x))];
      CHECK(wa > wb);
    }
}

TEST_CASE("blowup certification forces every bipartite edge") {
  for (auto [f, d, sigma, x] : {std::tuple<int, std::size_t, std::size_t, std::size_t>{1, 4, 1, 6},
                                {1, 3, 1, 4},
                                {2, 4, 1, 4},
                                {1, 4, 2, 5}}) {
    auto lb = build_gstar(f, d, sigma, x);
    auto report = certify_blowup(lb);
    CHECK(report.pass);
    CHECK(report.instances_checked == lb.leaves.size() * lb.x_set.size());
    CHECK(report.notes.find("overlay_edges") != std::string::npos);
  }
}

TEST_CASE("the weight-induced scheme is consistent and stable") {
  auto lb = build_gstar(1, 3, 1, 2);
  auto scheme = lb_weighted_scheme(lb);
  CHECK(check_consistent(lb.graph, scheme, 1).pass);
  CHECK(check_stable(lb.graph, scheme, 1).pass);
}

TEST_CASE("weights serialize as exact rationals") {
  auto lb = build_gstar(1, 3, 1, 2);
  std::ostringstream ss;
  write_weights(lb, ss);
  std::istringstream in(ss.str());
  std::size_t lines = 0;
  Vertex u, v;
  std::int64_t num, den;
  while (in >> u >> v >> num >> den) {
    CHECK(den == lb.weight_den);
    CHECK(num > 0);
    CHECK(num <= den);
    ++lines;
  }
  CHECK(lines == lb.graph.edge_count());
}

TEST_CASE("target-size instances fill up with terminals") {
  auto lb = build_gstar_for_n(1, 4, 1, 40);
  CHECK(lb.graph.n() == 40);
  CHECK(lb.x_set.size() == 40 - 14 - 1);
  CHECK(certify_blowup(lb).pass);
  CHECK_THROWS_AS(build_gstar_for_n(1, 4, 1, 15), Error);
  try {
    build_gstar_for_n(1, 4, 1, 15);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::size_infeasible);
  }
}

TEST_CASE("multi-source copies cannot help each other") {
  auto lb = build_gstar(1, 4, 2, 5);
  CHECK(lb.roots.size() == 2);
  CHECK(lb.leaves.size() == 8);
  // removing the shared connector keeps each source's own leaves reachable
  // at the common depth
  auto d0 = bfs_distances(lb.graph, lb.roots[0]);
  auto d1 = bfs_distances(lb.graph, lb.roots[1]);
  for (std::size_t j = 0; j < lb.leaves.size(); ++j) {
    auto mine = lb.leaf_copy[j] == 0 ? d0 : d1;
    auto theirs = lb.leaf_copy[j] == 0 ? d1 : d0;
    CHECK(*mine[lb.leaves[j]] == lb.depth);
    CHECK(*theirs[lb.leaves[j]] > lb.depth);  // foreign leaves are strictly farther
  }
}
