// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Every tolerance is pinned here in code.

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "restore/congest.hpp"
#include "restore/ftnet.hpp"
#include "restore/generators.hpp"
#include "restore/labels.hpp"
#include "restore/lowerbound.hpp"
#include "restore/rng.hpp"
#include "restore/srp.hpp"
#include "restore/verify.hpp"

using namespace restore;

namespace {

int g_failures = 0;

void report(const std::string& name, bool pass, const std::string& detail) {
  std::printf("[%s] %s — %s\n", pass ? "PASS" : "FAIL", name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

double loglog_slope(const std::vector<std::pair<double, double>>& pts) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto [x, y] : pts) {
    double lx = std::log(x), ly = std::log(y);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  double k = static_cast<double>(pts.size());
  return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

// Criterion 1: 210 random graphs (n <= 9, p in {0.2, 0.4, 0.7}), f_max = 2;
// exhaustive restorable/consistent/stable checks, zero failures allowed.
void criterion_scheme_properties() {
  const std::vector<double> ps = {0.2, 0.4, 0.7};
  std::uint64_t graphs = 0, failures = 0, instances = 0;
  for (double p : ps) {
    for (int i = 0; i < 70; ++i) {
      std::size_t n = 5 + static_cast<std::size_t>(i % 5);
      std::uint64_t seed = derive(1000, static_cast<std::uint64_t>(p * 10), i);
      auto g = gen_gnp(n, p, seed);
      ++graphs;
      with_tie_retry(g, derive(seed, 1), 1 << 20, [&](const Rpts& rpts) {
        auto r1 = check_restorable(rpts, 2);
        auto r2 = check_consistent(rpts, 2);
        auto r3 = check_stable(rpts, 2);
        if (!r1.pass || !r2.pass || !r3.pass) ++failures;
        instances += r1.instances_checked + r2.instances_checked + r3.instances_checked;
        return 0;
      });
    }
  }
  report("restorable/consistent/stable",
         graphs >= 200 && failures == 0,
         std::to_string(graphs) + " graphs, " + std::to_string(instances) +
             " instances checked, " + std::to_string(failures) + " failures");
}

// Criterion 2: the 4 symmetric 4-cycle schemes all violate restorability.
void criterion_c4() {
  auto r = c4_symmetric_impossibility();
  report("c4 symmetric impossibility", r.pass && r.instances_checked == 4,
         std::to_string(r.instances_checked) + " schemes enumerated; " + r.notes);
}

// Criterion 3: >= 50 instances (n <= 40, |S| <= 6); subset replacement
// distances equal the oracle and the sweep equals its quadratic reference.
void criterion_srp() {
  SplitMix64 rng(2024);
  std::uint64_t instances = 0, mismatches = 0, checked = 0;
  const std::vector<double> ps = {0.15, 0.25, 0.4};
  for (int i = 0; i < 54; ++i) {
    std::size_t n = 10 + 5 * static_cast<std::size_t>(i % 7);  // 10..40
    double p = ps[static_cast<std::size_t>(i) % ps.size()];
    auto g = gen_gnp(n, p, rng.next());
    std::vector<Vertex> sources;
    std::size_t want = 2 + static_cast<std::size_t>(i % 5);  // 2..6
    while (sources.size() < want) {
      Vertex v = static_cast<Vertex>(rng.below(g.n()));
      if (std::find(sources.begin(), sources.end(), v) == sources.end()) sources.push_back(v);
    }
    SrpOptions opts;
    opts.check_reference = true;  // sweep vs quadratic reference, zero tolerance
    auto out = srp(g, sources, rng.next(), opts);
    ++instances;
    for (const auto& pair : out.pairs) {
      if (oracle_replacement_distance(g, pair.s, pair.t, {}) != pair.base) ++mismatches;
      for (const auto& [edge, dist] : pair.failures) {
        ++checked;
        if (oracle_replacement_distance(g, pair.s, pair.t, FaultSet{edge}) != dist) ++mismatches;
      }
    }
  }
  report("srp oracle equivalence", instances >= 50 && mismatches == 0,
         std::to_string(instances) + " instances, " + std::to_string(checked) +
             " failure queries, " + std::to_string(mismatches) + " mismatches");
}

// Criterion 4: 1- and 2-fault subset preservers pass exhaustive oracle
// sweeps on n <= 14; 1-fault sizes fit under C * |S| * n with C <= 2.
void criterion_preservers() {
  SplitMix64 rng(4040);
  std::uint64_t bad = 0, instances = 0;
  for (int i = 0; i < 12; ++i) {
    std::size_t n = 8 + static_cast<std::size_t>(i % 7);  // 8..14
    double p = i % 2 ? 0.4 : 0.25;
    auto g = gen_gnp(n, p, rng.next());
    std::vector<Vertex> sources;
    std::size_t want = 3 + static_cast<std::size_t>(i % 2);
    while (sources.size() < want) {
      Vertex v = static_cast<Vertex>(rng.below(g.n()));
      if (std::find(sources.begin(), sources.end(), v) == sources.end()) sources.push_back(v);
    }
    ++instances;
    with_tie_retry(g, rng.next(), 1 << 20, [&](const Rpts& rpts) {
      for (int budget : {1, 2}) {
        auto pres = build_sxs_preserver(rpts, sources, budget);
        UndirectedGraph h = pres.subgraph(g.n());
        for_each_fault_set(g, budget, true, [&](const FaultSet& F) {
          for (Vertex s : pres.sources) {
            auto dg = bfs_distances(g, s, F);
            auto dh = bfs_distances(h, s, F);
            for (Vertex t : pres.sources)
              if (dg[t] != dh[t]) ++bad;
          }
          return true;
        });
      }
      return 0;
    });
  }
  // size sweep for the one-fault case
  double fitted_c = 0;
  for (std::size_t n : {20u, 30u, 40u, 50u}) {
    for (std::uint64_t k = 0; k < 3; ++k) {
      auto g = gen_gnp(n, 0.3, derive(4141, n, k));
      std::vector<Vertex> sources;
      for (Vertex v = 0; v < std::max<std::size_t>(2, n / 8); ++v)
        sources.push_back(static_cast<Vertex>((v * 7) % n));
      std::sort(sources.begin(), sources.end());
      sources.erase(std::unique(sources.begin(), sources.end()), sources.end());
      Rpts rpts(perturb(g, derive(k, n)));
      auto pres = build_sxs_preserver(rpts, sources, 1);
      double c = static_cast<double>(pres.edges.size()) /
                 (static_cast<double>(sources.size()) * static_cast<double>(n));
      fitted_c = std::max(fitted_c, c);
    }
  }
  report("preserver correctness and size",
         bad == 0 && fitted_c <= 2.0,
         std::to_string(instances) + " instances exhaustively swept, " + std::to_string(bad) +
             " violations; fitted C=" + std::to_string(fitted_c));
}

// Criterion 5: one-fault +4 spanners verified exhaustively on >= 30
// instances; size slope on a dense random family within [1.3, 1.7].
void criterion_spanners() {
  SplitMix64 rng(5050);
  std::uint64_t violations = 0, instances = 0;
  for (int i = 0; i < 30; ++i) {
    std::size_t n = 20 + 2 * static_cast<std::size_t>(i % 11);  // 20..40
    double p = i % 2 ? 0.3 : 0.2;
    auto g = gen_gnp(n, p, rng.next());
    auto sp = build_spanner(g, 1, rng.next());
    auto excess = max_stretch_excess(g, sp.subgraph(g.n()), 1);
    ++instances;
    if (!excess || *excess > 4) ++violations;
  }
  std::vector<std::pair<double, double>> points;
  for (std::size_t n : {48u, 72u, 108u, 160u}) {
    double total = 0;
    const int reps = 3;
    for (int k = 0; k < reps; ++k) {
      auto g = gen_gnp(n, 0.5, derive(5151, n, k));
      auto sp = build_spanner(g, 1, derive(5252, n, k));
      total += static_cast<double>(sp.edges.size());
    }
    points.emplace_back(static_cast<double>(n), total / reps);
  }
  double slope = loglog_slope(points);
  report("spanner stretch and size trend",
         violations == 0 && instances >= 30 && slope >= 1.3 && slope <= 1.7,
         std::to_string(instances) + " instances, " + std::to_string(violations) +
             " stretch violations; size slope " + std::to_string(slope));
}

// Criterion 6: budget-1 labels answer all |F| <= 2 queries exactly on
// n <= 12; budget-0 labels answer all |F| <= 1 queries exactly.
void criterion_labels() {
  SplitMix64 rng(6060);
  std::uint64_t bad = 0, queries = 0, instances = 0;
  for (int i = 0; i < 8; ++i) {
    std::size_t n = 8 + static_cast<std::size_t>(i % 5);  // 8..12
    double p = i % 2 ? 0.5 : 0.3;
    auto g = gen_gnp(n, p, rng.next());
    ++instances;
    with_tie_retry(g, rng.next(), 1 << 20, [&](const Rpts& rpts) {
      auto labels0 = build_labels(rpts, 0);
      for_each_fault_set(g, 1, true, [&](const FaultSet& F) {
        for (Vertex s = 0; s < g.n(); ++s)
          for (Vertex t = s; t < g.n(); ++t) {
            ++queries;
            if (query(labels0[s], labels0[t], F) != oracle_replacement_distance(g, s, t, F))
              ++bad;
          }
        return true;
      });
      auto labels1 = build_labels(rpts, 1);
      for_each_fault_set(g, 2, true, [&](const FaultSet& F) {
        for (Vertex s = 0; s < g.n(); ++s)
          for (Vertex t = s; t < g.n(); ++t) {
            ++queries;
            if (query(labels1[s], labels1[t], F) != oracle_replacement_distance(g, s, t, F))
              ++bad;
          }
        return true;
      });
      return 0;
    });
  }
  report("label queries exact at budget", bad == 0,
         std::to_string(instances) + " instances, " + std::to_string(queries) + " queries, " +
             std::to_string(bad) + " mismatches");
}

// Criterion 7: family counts match the recurrences, the path lemma holds,
// and every bipartite edge is forced into the overlay.
void criterion_lowerbound() {
  bool ok = true;
  std::string detail;
  struct Case {
    int f;
    std::size_t d;
  };
  for (const Case& c : {Case{1, 3}, Case{1, 4}, Case{2, 4}}) {
    auto lb = build_gfd(c.f, c.d);
    bool counts = lb.graph.n() == lb_vertex_count(c.f, c.d) &&
                  lb.leaves.size() == lb_leaf_count(c.f, c.d) &&
                  lb.depth == lb_depth(c.f, c.d) &&
                  lb.graph.n() <= 2 * static_cast<std::size_t>(c.f) * c.d * c.d &&
                  static_cast<double>(lb.leaves.size()) ==
                      std::pow(static_cast<double>(c.d), 2.0 - 1.0 / std::pow(2.0, c.f - 1));
    auto lemma = check_path_lemma(lb);
    auto star = build_gstar(c.f, c.d, 1, c.f == 1 && c.d == 4 ? 6 : 4);
    auto blowup = certify_blowup(star);
    bool okay = counts && lemma.pass && blowup.pass;
    ok = ok && okay;
    detail += "(f=" + std::to_string(c.f) + ",d=" + std::to_string(c.d) +
              (okay ? " ok" : " FAIL") + ") ";
  }
  // multi-source extension
  auto star2 = certify_blowup(build_gstar(1, 4, 2, 5));
  ok = ok && star2.pass;
  detail += std::string("(sigma=2 ") + (star2.pass ? "ok)" : "FAIL)");
  report("hard-family structure and blowup", ok, detail);
}

// Criterion 8: distributed trees equal centralized ones on >= 50 instances
// with at most 2 messages per edge; the delayed composite reproduces every
// solo tree within a * (|S| + D log2 n) rounds, fitted a <= 4.
void criterion_congest() {
  SplitMix64 rng(8080);
  std::uint64_t instances = 0, tree_mismatches = 0, edge_violations = 0;
  double fitted_a = 0;
  std::uint64_t composite_mismatch = 0;
  for (int i = 0; i < 52; ++i) {
    UndirectedGraph g;
    switch (i % 5) {
      case 0: g = gen_gnp(20 + (i % 4) * 10, 0.15, rng.next()); break;
      case 1: g = gen_gnp(30, 0.25, rng.next()); break;
      case 2: g = gen_path(10 + i % 20); break;
      case 3: g = gen_cycle(12 + i % 9); break;
      default: g = gen_grid(4, 5 + i % 4); break;
    }
    auto pd = perturb(g, rng.next());
    Vertex s = static_cast<Vertex>(rng.below(g.n()));
    auto solo = run_spt(g, pd, s);
    auto central = dijkstra_sssp(pd, s);
    ++instances;
    if (!(solo.tree.parent == central.parent && solo.tree.dist == central.dist))
      ++tree_mismatches;
    if (solo.metrics.max_edge_total_msgs > 2) ++edge_violations;

    // composite run over a source set
    std::vector<Vertex> sources;
    std::size_t want = 3 + static_cast<std::size_t>(i % 6);
    while (sources.size() < std::min<std::size_t>(want, g.n())) {
      Vertex v = static_cast<Vertex>(rng.below(g.n()));
      if (std::find(sources.begin(), sources.end(), v) == sources.end()) sources.push_back(v);
    }
    auto composite = run_random_delay(g, pd, sources, rng.next());
    for (std::size_t k = 0; k < sources.size(); ++k) {
      auto ref = run_spt(g, pd, sources[k]);
      if (!(composite.trees[k].parent == ref.tree.parent &&
            composite.trees[k].dist == ref.tree.dist))
        ++composite_mismatch;
    }
    double logn = std::max(1.0, std::log2(static_cast<double>(g.n())));
    double denom = static_cast<double>(sources.size()) +
                   static_cast<double>(composite.metrics.diameter) * logn;
    fitted_a = std::max(fitted_a, static_cast<double>(composite.metrics.rounds) / denom);
  }
  report("distributed trees and scheduling",
         instances >= 50 && tree_mismatches == 0 && edge_violations == 0 &&
             composite_mismatch == 0 && fitted_a <= 4.0,
         std::to_string(instances) + " instances, " + std::to_string(tree_mismatches) +
             " tree mismatches, " + std::to_string(edge_violations) +
             " edge-message violations, " + std::to_string(composite_mismatch) +
             " composite mismatches, fitted a=" + std::to_string(fitted_a));
}

}  // namespace

int main() {
  criterion_scheme_properties();
  criterion_c4();
  criterion_srp();
  criterion_preservers();
  criterion_spanners();
  criterion_labels();
  criterion_lowerbound();
  criterion_congest();
  if (g_failures == 0)
    std::printf("acceptance: all criteria passed\n");
  else
    std::printf("acceptance: %d criterion(s) failed\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
