#include "restore/experiment.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <sstream>

#include "restore/congest.hpp"
#include "restore/ftnet.hpp"
#include "restore/generators.hpp"
#include "restore/rng.hpp"
#include "restore/srp.hpp"
#include "restore/verify.hpp"

namespace restore {

namespace {

template <class T>
std::vector<T> parallel_map(std::size_t count, std::size_t threads,
                            const std::function<T(std::size_t)>& fn) {
  std::vector<T> out(count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  std::size_t next = 0;
  while (next < count) {
    std::size_t batch = std::min(threads, count - next);
    std::vector<std::future<T>> futs;
    for (std::size_t k = 0; k < batch; ++k)
      futs.push_back(std::async(std::launch::async, fn, next + k));
    for (std::size_t k = 0; k < batch; ++k) out[next + k] = futs[k].get();
    next += batch;
  }
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::invalid_params, "cannot write " + path.string());
  out << content;
}

double fit_loglog_slope(const std::vector<std::pair<double, double>>& points) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto [x, y] : points) {
    double lx = std::log(x), ly = std::log(y);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  double k = static_cast<double>(points.size());
  return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

}  // namespace

nlohmann::json ExperimentConfig::to_json() const {
  nlohmann::json j;
  j["kind"] = kind;
  j["graph_file"] = graph_file;
  j["generator"] = generator;
  j["n"] = n;
  j["p"] = p;
  j["rows"] = rows;
  j["cols"] = cols;
  j["n_list"] = n_list;
  j["seeds_per_n"] = seeds_per_n;
  j["instance_count"] = instance_count;
  j["source_count"] = source_count;
  j["sigma"] = sigma;
  j["f"] = f;
  j["f_max"] = f_max;
  j["seed"] = seed;
  j["verify"] = verify;
  j["out_dir"] = out_dir;
  j["threads"] = threads;
  return j;
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
  ExperimentConfig cfg;
  cfg.kind = j.value("kind", "");
  cfg.graph_file = j.value("graph_file", "");
  cfg.generator = j.value("generator", "gnp");
  cfg.n = j.value("n", std::size_t{20});
  cfg.p = j.value("p", 0.3);
  cfg.rows = j.value("rows", std::size_t{0});
  cfg.cols = j.value("cols", std::size_t{0});
  cfg.n_list = j.value("n_list", std::vector<std::size_t>{});
  cfg.seeds_per_n = j.value("seeds_per_n", std::size_t{3});
  cfg.instance_count = j.value("instance_count", std::size_t{20});
  cfg.source_count = j.value("source_count", std::size_t{4});
  cfg.sigma = j.value("sigma", std::size_t{0});
  cfg.f = j.value("f", 1);
  cfg.f_max = j.value("f_max", 2);
  cfg.seed = j.value("seed", std::uint64_t{1});
  cfg.verify = j.value("verify", true);
  cfg.out_dir = j.value("out_dir", "reports");
  cfg.threads = j.value("threads", std::size_t{1});
  return cfg;
}

UndirectedGraph make_graph(const ExperimentConfig& cfg, std::uint64_t instance_seed) {
  if (!cfg.graph_file.empty()) return load_graph_file(cfg.graph_file);
  if (cfg.generator == "gnp") return gen_gnp(cfg.n, cfg.p, instance_seed);
  if (cfg.generator == "cycle") return gen_cycle(cfg.n);
  if (cfg.generator == "path") return gen_path(cfg.n);
  if (cfg.generator == "star") return gen_star(cfg.n);
  if (cfg.generator == "complete") return gen_complete(cfg.n);
  if (cfg.generator == "grid") return gen_grid(cfg.rows, cfg.cols);
  fail(Errc::invalid_params, "unknown generator " + cfg.generator);
}

namespace {

std::vector<Vertex> pick_sources(const UndirectedGraph& g, std::size_t count,
                                 std::uint64_t seed) {
  std::vector<Vertex> ids(g.n());
  for (Vertex v = 0; v < g.n(); ++v) ids[v] = v;
  SplitMix64 rng(derive(seed, 0x73726373ull));
  count = std::min(count, g.n());
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t j = i + rng.below(g.n() - i);
    std::swap(ids[i], ids[j]);
  }
  std::vector<Vertex> out(ids.begin(), ids.begin() + count);
  std::sort(out.begin(), out.end());
  return out;
}

int run_verify_all(const ExperimentConfig& cfg) {
  struct Row {
    std::uint64_t seed;
    std::size_t n;
    bool pass;
    nlohmann::json reports;
  };
  auto rows = parallel_map<Row>(cfg.instance_count, cfg.threads, [&](std::size_t i) {
    std::uint64_t inst_seed = derive(cfg.seed, i);
    UndirectedGraph g = make_graph(cfg, inst_seed);
    return with_tie_retry(g, derive(inst_seed, 1), 0, [&](const Rpts& rpts) {
      auto r1 = check_restorable(rpts, cfg.f_max);
      auto r2 = check_consistent(rpts, cfg.f_max);
      auto r3 = check_stable(rpts, cfg.f_max);
      Row row;
      row.seed = inst_seed;
      row.n = g.n();
      row.pass = r1.pass && r2.pass && r3.pass;
      row.reports = nlohmann::json::array({r1.to_json(), r2.to_json(), r3.to_json()});
      return row;
    });
  });
  bool all_pass = true;
  auto arr = nlohmann::json::array();
  for (const auto& row : rows) {
    all_pass = all_pass && row.pass;
    arr.push_back({{"seed", row.seed}, {"n", row.n}, {"pass", row.pass}, {"reports", row.reports}});
  }
  nlohmann::json report;
  report["config"] = cfg.to_json();
  report["pass"] = all_pass;
  report["instances"] = arr;
  write_file(std::filesystem::path(cfg.out_dir) / "verify_all.json", report.dump(2) + "\n");
  return all_pass ? 0 : 1;
}

int run_spanner_sweep(const ExperimentConfig& cfg) {
  std::vector<std::size_t> ns = cfg.n_list.empty()
                                    ? std::vector<std::size_t>{20, 30, 40, 50, 60}
                                    : cfg.n_list;
  struct Row {
    std::size_t n;
    std::uint64_t seed;
    std::size_t edges;
    std::size_t host_edges;
  };
  std::vector<std::pair<std::size_t, std::uint64_t>> jobs;
  for (std::size_t n : ns)
    for (std::size_t k = 0; k < cfg.seeds_per_n; ++k) jobs.emplace_back(n, derive(cfg.seed, n, k));
  auto rows = parallel_map<Row>(jobs.size(), cfg.threads, [&](std::size_t i) {
    auto [n, seed] = jobs[i];
    ExperimentConfig local = cfg;
    local.n = n;
    UndirectedGraph g = make_graph(local, seed);
    Spanner sp = build_spanner(g, cfg.f, seed, SpannerOptions{cfg.sigma, 0, 0, {}});
    return Row{n, seed, sp.edges.size(), g.edge_count()};
  });
  std::ostringstream csv;
  csv << "n,seed,edges,host_edges\n";
  for (const auto& r : rows) csv << r.n << ',' << r.seed << ',' << r.edges << ',' << r.host_edges << '\n';
  write_file(std::filesystem::path(cfg.out_dir) / "spanner_sweep.csv", csv.str());

  std::ostringstream avg;
  avg << "n,edges\n";
  std::vector<std::pair<double, double>> points;
  for (std::size_t n : ns) {
    double sum = 0;
    std::size_t count = 0;
    for (const auto& r : rows)
      if (r.n == n) {
        sum += static_cast<double>(r.edges);
        ++count;
      }
    double mean = sum / static_cast<double>(count);
    avg << n << ',' << mean << '\n';
    points.emplace_back(static_cast<double>(n), mean);
  }
  write_file(std::filesystem::path(cfg.out_dir) / "spanner_avg.csv", avg.str());
  nlohmann::json summary;
  summary["config"] = cfg.to_json();
  summary["loglog_slope"] = fit_loglog_slope(points);
  write_file(std::filesystem::path(cfg.out_dir) / "spanner_summary.json", summary.dump(2) + "\n");
  return 0;
}

int run_preserver_sweep(const ExperimentConfig& cfg) {
  std::vector<std::size_t> ns = cfg.n_list.empty()
                                    ? std::vector<std::size_t>{20, 30, 40, 50}
                                    : cfg.n_list;
  std::ostringstream csv;
  csv << "n,seed,sigma,edges,sigma_times_n\n";
  double fitted_c = 0;
  for (std::size_t n : ns) {
    for (std::size_t k = 0; k < cfg.seeds_per_n; ++k) {
      std::uint64_t seed = derive(cfg.seed, n, k);
      ExperimentConfig local = cfg;
      local.n = n;
      UndirectedGraph g = make_graph(local, seed);
      auto sources = pick_sources(g, cfg.source_count, seed);
      auto pres = with_tie_retry(g, derive(seed, 2), 0, [&](const Rpts& rpts) {
        return build_sxs_preserver(rpts, sources, cfg.f);
      });
      double cap = static_cast<double>(sources.size()) * static_cast<double>(n);
      fitted_c = std::max(fitted_c, static_cast<double>(pres.edges.size()) / cap);
      csv << n << ',' << seed << ',' << sources.size() << ',' << pres.edges.size() << ','
          << sources.size() * n << '\n';
    }
  }
  write_file(std::filesystem::path(cfg.out_dir) / "preserver_sweep.csv", csv.str());
  nlohmann::json summary;
  summary["config"] = cfg.to_json();
  summary["fitted_c"] = fitted_c;
  write_file(std::filesystem::path(cfg.out_dir) / "preserver_summary.json", summary.dump(2) + "\n");
  return 0;
}

int run_srp_check(const ExperimentConfig& cfg) {
  std::uint64_t mismatches = 0;
  std::uint64_t checked = 0;
  for (std::size_t i = 0; i < cfg.instance_count; ++i) {
    std::uint64_t seed = derive(cfg.seed, i);
    UndirectedGraph g = make_graph(cfg, seed);
    auto sources = pick_sources(g, cfg.source_count, seed);
    SrpOutput out = srp(g, sources, seed);
    if (!cfg.verify) continue;
    for (const auto& pair : out.pairs) {
      for (const auto& [edge, dist] : pair.failures) {
        ++checked;
        auto oracle = oracle_replacement_distance(g, pair.s, pair.t, FaultSet{edge});
        if (oracle != dist) ++mismatches;
      }
    }
  }
  nlohmann::json report;
  report["config"] = cfg.to_json();
  report["checked"] = checked;
  report["mismatches"] = mismatches;
  report["pass"] = mismatches == 0;
  write_file(std::filesystem::path(cfg.out_dir) / "srp_check.json", report.dump(2) + "\n");
  return mismatches == 0 ? 0 : 1;
}

int run_congest_rounds(const ExperimentConfig& cfg) {
  std::ostringstream csv;
  csv << "n,seed,sigma,D,setup_rounds,rounds,bound\n";
  bool all_ok = true;
  for (std::size_t i = 0; i < cfg.instance_count; ++i) {
    std::uint64_t seed = derive(cfg.seed, i);
    UndirectedGraph g = make_graph(cfg, seed);
    auto sources = pick_sources(g, cfg.source_count, seed);
    auto result = run_distributed_1ft_sxs(g, sources, seed);
    double logn = std::max(1.0, std::log2(static_cast<double>(g.n())));
    double bound = static_cast<double>(sources.size()) +
                   static_cast<double>(result.schedule.metrics.diameter) * logn;
    csv << g.n() << ',' << seed << ',' << sources.size() << ','
        << result.schedule.metrics.diameter << ',' << result.setup_rounds << ','
        << result.schedule.metrics.rounds << ',' << bound << '\n';
    if (cfg.verify) {
      // oracle sweep over single faults between all source pairs
      UndirectedGraph h = result.preserver.subgraph(g.n());
      bool ok = true;
      for_each_fault_set(g, 1, true, [&](const FaultSet& F) {
        for (Vertex a : sources) {
          auto dg = bfs_distances(g, a, F);
          auto dh = bfs_distances(h, a, F);
          for (Vertex b : sources)
            if (dg[b] != dh[b]) {
              ok = false;
              return false;
            }
        }
        return true;
      });
      all_ok = all_ok && ok;
    }
  }
  write_file(std::filesystem::path(cfg.out_dir) / "congest_rounds.csv", csv.str());
  return all_ok ? 0 : 1;
}

}  // namespace

int run_experiment(const ExperimentConfig& cfg) {
  std::filesystem::create_directories(cfg.out_dir);
  write_file(std::filesystem::path(cfg.out_dir) / "config.json", cfg.to_json().dump(2) + "\n");
  if (cfg.kind == "verify-all") return run_verify_all(cfg);
  if (cfg.kind == "spanner-sweep") return run_spanner_sweep(cfg);
  if (cfg.kind == "preserver-sweep") return run_preserver_sweep(cfg);
  if (cfg.kind == "srp-check") return run_srp_check(cfg);
  if (cfg.kind == "congest-rounds") return run_congest_rounds(cfg);
  fail(Errc::invalid_params, "unknown experiment kind " + cfg.kind);
}

}  // namespace restore
