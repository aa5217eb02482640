#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "restore/congest.hpp"
#include "restore/experiment.hpp"
#include "restore/ftnet.hpp"
#include "restore/generators.hpp"
#include "restore/labels.hpp"
#include "restore/lowerbound.hpp"
#include "restore/rng.hpp"
#include "restore/srp.hpp"
#include "restore/verify.hpp"

namespace {

using namespace restore;

int exit_code_for(Errc code) { return 2 + static_cast<int>(code); }

std::vector<Vertex> parse_vertex_list(const std::string& text) {
  std::vector<Vertex> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(static_cast<Vertex>(std::stoul(item)));
  }
  return out;
}

FaultSet parse_fault_list(const std::string& text) {
  // "u-v,u-v"
  std::vector<Edge> edges;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    auto dash = item.find('-');
    if (dash == std::string::npos) fail(Errc::invalid_params, "bad fault " + item);
    auto u = static_cast<Vertex>(std::stoul(item.substr(0, dash)));
    auto v = static_cast<Vertex>(std::stoul(item.substr(dash + 1)));
    edges.push_back(Edge::make(u, v));
  }
  return FaultSet(std::move(edges));
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::invalid_params, "cannot write " + path);
  out << content;
}

struct GraphInput {
  std::string file;
  std::string generator;
  std::size_t n = 20;
  double p = 0.3;
  std::size_t rows = 4, cols = 4;

  void attach(CLI::App* cmd, bool required) {
    auto* gopt = cmd->add_option("--graph", file, "graph file in edge-list format");
    cmd->add_option("--gen", generator, "generator: gnp|cycle|path|star|complete|grid");
    cmd->add_option("--n", n, "generator vertex count");
    cmd->add_option("--p", p, "gnp edge probability");
    cmd->add_option("--rows", rows, "grid rows");
    cmd->add_option("--cols", cols, "grid cols");
    if (required) gopt->check(CLI::ExistingFile);
  }

  UndirectedGraph load(std::uint64_t seed) const {
    if (!file.empty()) return load_graph_file(file);
    if (generator.empty()) fail(Errc::invalid_params, "need --graph or --gen");
    ExperimentConfig cfg;
    cfg.generator = generator;
    cfg.n = n;
    cfg.p = p;
    cfg.rows = rows;
    cfg.cols = cols;
    return make_graph(cfg, seed);
  }
};

int cmd_gen(const GraphInput& in, std::uint64_t seed, const std::string& out,
            int lb_f, std::size_t lb_d) {
  UndirectedGraph g;
  if (in.generator == "lb-family")
    g = build_gfd(lb_f, lb_d).graph;
  else
    g = in.load(seed);
  std::string text = serialize_graph(g);
  if (out.empty())
    std::cout << text;
  else
    write_text(out, text);
  return 0;
}

int cmd_reweight(const GraphInput& in, std::uint64_t seed, std::int64_t k,
                 const std::string& out) {
  UndirectedGraph g = in.load(seed);
  PerturbedDigraph pd = perturb(g, seed, k);
  std::ostringstream ss;
  dump_perturbation(pd, ss);
  if (out.empty())
    std::cout << ss.str();
  else
    write_text(out, ss.str());
  std::cerr << "seed=" << pd.seed << " bound=" << pd.bound << " retries=" << pd.retries << "\n";
  return 0;
}

int cmd_srp(const GraphInput& in, const std::string& sources, std::uint64_t seed, bool verify,
            const std::string& out) {
  UndirectedGraph g = in.load(seed);
  auto srcs = parse_vertex_list(sources);
  SrpOutput result = srp(g, srcs, seed);
  bool pass = true;
  if (verify) {
    for (const auto& pair : result.pairs)
      for (const auto& [edge, dist] : pair.failures)
        if (oracle_replacement_distance(g, pair.s, pair.t, FaultSet{edge}) != dist) pass = false;
  }
  auto j = result.to_json();
  if (verify) j["oracle_pass"] = pass;
  std::string text = j.dump(2) + "\n";
  if (out.empty())
    std::cout << text;
  else
    write_text(out, text);
  return pass ? 0 : 1;
}

int cmd_preserver(const GraphInput& in, const std::string& kind, int f,
                  const std::string& sources, std::uint64_t seed, bool verify,
                  const std::string& out) {
  UndirectedGraph g = in.load(seed);
  auto srcs = parse_vertex_list(sources);
  Preserver pres = with_tie_retry(g, seed, 0, [&](const Rpts& rpts) {
    return kind == "sxv" ? build_sxv_preserver(rpts, srcs, f)
                         : build_sxs_preserver(rpts, srcs, f);
  });
  UndirectedGraph h = pres.subgraph(g.n());
  bool pass = true;
  if (verify) {
    int budget = pres.fault_budget;
    for_each_fault_set(g, budget, true, [&](const FaultSet& F) {
      for (Vertex s : pres.sources) {
        auto dg = bfs_distances(g, s, F);
        auto dh = bfs_distances(h, s, F);
        if (pres.kind == PreserverKind::sxs) {
          for (Vertex t : pres.sources)
            if (dg[t] != dh[t]) pass = false;
        } else {
          for (Vertex t = 0; t < g.n(); ++t)
            if (dg[t] != dh[t]) pass = false;
        }
      }
      return pass;
    });
  }
  if (!out.empty()) {
    write_text(out, serialize_graph(h));
    nlohmann::json stats;
    stats["edges"] = pres.edges.size();
    stats["bound_value"] = pres.bound_value(g.n());
    stats["enumerated_fault_sets"] = pres.fault_sets_enumerated;
    if (verify) stats["oracle_pass"] = pass;
    write_text(out + ".stats.json", stats.dump(2) + "\n");
  } else {
    std::cout << serialize_graph(h);
  }
  return pass ? 0 : 1;
}

int cmd_spanner(const GraphInput& in, int f, const std::string& sigma_text, std::uint64_t seed,
                bool verify, const std::string& out) {
  UndirectedGraph g = in.load(seed);
  SpannerOptions opts;
  if (!sigma_text.empty() && sigma_text != "AUTO") opts.sigma = std::stoul(sigma_text);
  Spanner sp = build_spanner(g, f, seed, opts);
  bool pass = true;
  if (verify) {
    auto excess = max_stretch_excess(g, sp.subgraph(g.n()), f);
    pass = excess.has_value() && *excess <= 4;
  }
  if (!out.empty()) {
    write_text(out, serialize_graph(sp.subgraph(g.n())));
    nlohmann::json stats;
    stats["edges"] = sp.edges.size();
    stats["sigma"] = sp.centers.size();
    stats["repeats"] = sp.repeats;
    stats["enumerated_fault_sets"] = sp.fault_sets_enumerated;
    if (verify) stats["oracle_pass"] = pass;
    write_text(out + ".stats.json", stats.dump(2) + "\n");
  } else {
    std::cout << serialize_graph(sp.subgraph(g.n()));
  }
  return pass ? 0 : 1;
}

int cmd_labels_build(const GraphInput& in, int f, std::uint64_t seed, const std::string& dir) {
  UndirectedGraph g = in.load(seed);
  auto labels = with_tie_retry(g, seed, 0,
                               [&](const Rpts& rpts) { return build_labels(rpts, f); });
  std::filesystem::create_directories(dir);
  nlohmann::json manifest;
  manifest["n"] = g.n();
  manifest["f"] = f;
  manifest["seed"] = seed;
  auto sizes = nlohmann::json::array();
  for (const auto& label : labels) {
    auto bytes = label.serialize();
    std::ofstream out(std::filesystem::path(dir) / ("label_" + std::to_string(label.owner) + ".bin"),
                      std::ios::binary);
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    sizes.push_back({{"owner", label.owner},
                     {"edges", label.edges.size()},
                     {"bits", label.bit_size()},
                     {"serialized_bits", 8 * bytes.size()}});
  }
  manifest["labels"] = sizes;
  write_text((std::filesystem::path(dir) / "manifest.json").string(), manifest.dump(2) + "\n");
  return 0;
}

DistanceLabel read_label(const std::string& dir, Vertex v) {
  std::ifstream in(std::filesystem::path(dir) / ("label_" + std::to_string(v) + ".bin"),
                   std::ios::binary);
  if (!in) fail(Errc::invalid_params, "missing label file for vertex " + std::to_string(v));
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return DistanceLabel::deserialize(bytes);
}

int cmd_labels_query(const std::string& dir, Vertex s, Vertex t, const std::string& fails) {
  DistanceLabel ls = read_label(dir, s);
  DistanceLabel lt = read_label(dir, t);
  auto d = query(ls, lt, parse_fault_list(fails));
  if (d)
    std::cout << *d << "\n";
  else
    std::cout << "UNREACHABLE\n";
  return 0;
}

int cmd_lb_gen(int f, std::size_t d, std::size_t sigma, std::size_t x_size, std::size_t n_target,
               const std::string& out, const std::string& weights_out) {
  LbGraph lb = n_target ? build_gstar_for_n(f, d, sigma, n_target)
                        : build_gstar(f, d, sigma, x_size);
  if (out.empty())
    std::cout << serialize_graph(lb.graph);
  else
    write_text(out, serialize_graph(lb.graph));
  if (!weights_out.empty()) {
    std::ostringstream ss;
    write_weights(lb, ss);
    write_text(weights_out, ss.str());
  }
  return 0;
}

int cmd_lb_check(int f, std::size_t d, std::size_t sigma, std::size_t x_size) {
  LbGraph plain = build_gfd(f, d);
  auto lemma = check_path_lemma(plain);
  std::cout << lemma.to_json().dump(2) << "\n";
  LbGraph star = build_gstar(f, d, sigma, x_size);
  auto blowup = certify_blowup(star);
  std::cout << blowup.to_json().dump(2) << "\n";
  return lemma.pass && blowup.pass ? 0 : 1;
}

int cmd_lb_admissible(int f, std::size_t n_max) {
  for (std::size_t d : lb_admissible_ds(f, n_max)) std::cout << d << "\n";
  return 0;
}

int cmd_congest(const std::string& mode, const GraphInput& in, const std::string& sources,
                std::uint64_t seed, const std::string& metrics_out) {
  UndirectedGraph g = in.load(seed);
  auto srcs = parse_vertex_list(sources);
  nlohmann::json j;
  int rc = 0;
  if (mode == "spt") {
    if (srcs.empty()) fail(Errc::invalid_params, "congest spt needs one source");
    PerturbedDigraph pd = perturb(g, seed);
    auto result = run_spt(g, pd, srcs[0]);
    auto central = dijkstra_sssp(pd, srcs[0]);
    bool match = result.tree.parent == central.parent;
    j = result.metrics.to_json();
    j["matches_centralized"] = match;
    rc = match ? 0 : 1;
  } else if (mode == "sxs") {
    auto result = run_distributed_1ft_sxs(g, srcs, seed);
    j = result.schedule.metrics.to_json();
    j["setup_rounds"] = result.setup_rounds;
    j["preserver_edges"] = result.preserver.edges.size();
    j["seed_used"] = result.seed_used;
  } else {
    fail(Errc::invalid_params, "unknown congest mode " + mode);
  }
  std::string text = j.dump(2) + "\n";
  if (metrics_out.empty())
    std::cout << text;
  else
    write_text(metrics_out, text);
  return rc;
}

int cmd_verify(const GraphInput& in, bool c4, int f_max, std::uint64_t seed,
               const std::string& out) {
  auto reports = nlohmann::json::array();
  bool pass = true;
  if (c4) {
    auto r = c4_symmetric_impossibility();
    pass = r.pass;
    reports.push_back(r.to_json());
  } else {
    UndirectedGraph g = in.load(seed);
    with_tie_retry(g, seed, 0, [&](const Rpts& rpts) {
      auto r1 = check_restorable(rpts, f_max);
      auto r2 = check_consistent(rpts, f_max);
      auto r3 = check_stable(rpts, f_max);
      pass = r1.pass && r2.pass && r3.pass;
      reports.push_back(r1.to_json());
      reports.push_back(r2.to_json());
      reports.push_back(r3.to_json());
      return 0;
    });
  }
  std::string text = reports.dump(2) + "\n";
  if (out.empty())
    std::cout << text;
  else
    write_text(out, text);
  return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Restorable shortest-path tiebreaking and fault-tolerant structures"};
  app.require_subcommand(1);
  app.fallthrough();

  std::uint64_t seed = 1;
  std::string out;
  bool verify = true;
  std::size_t threads = 1;
  app.add_option("--seed", seed, "global seed (every randomized step derives from it)")
      ->capture_default_str();
  app.add_option("--out", out, "output path");
  app.add_flag("--verify,!--no-verify", verify, "run oracle verification where supported");
  app.add_option("--threads", threads, "worker threads for sweeps");

  GraphInput gin;

  auto* gen = app.add_subcommand("gen", "emit a generated graph in edge-list format");
  gin.attach(gen, false);
  int lb_f = 1;
  std::size_t lb_d = 4;
  gen->add_option("--f", lb_f, "lb-family fault parameter");
  gen->add_option("--d", lb_d, "lb-family width parameter");

  auto* rew = app.add_subcommand("reweight", "emit the antisymmetric perturbation dump");
  gin.attach(rew, false);
  std::int64_t bound = 0;
  rew->add_option("--k", bound, "per-arc bound (default n^3)");

  auto* srp_cmd = app.add_subcommand("srp", "subset replacement paths");
  gin.attach(srp_cmd, false);
  std::string sources;
  srp_cmd->add_option("--sources", sources, "comma-separated source vertices")->required();

  auto* pres = app.add_subcommand("preserver", "fault-tolerant distance preserver");
  gin.attach(pres, false);
  std::string pres_kind = "sxs";
  int pres_f = 1;
  std::string pres_sources;
  pres->add_option("--kind", pres_kind, "sxv|sxs")->check(CLI::IsMember({"sxv", "sxs"}));
  pres->add_option("--f", pres_f, "fault budget")->required();
  pres->add_option("--sources", pres_sources, "comma-separated sources")->required();

  auto* span = app.add_subcommand("spanner", "fault-tolerant +4 additive spanner");
  gin.attach(span, false);
  int span_f = 1;
  std::string sigma_text = "AUTO";
  span->add_option("--f", span_f, "fault budget");
  span->add_option("--sigma", sigma_text, "cluster center count or AUTO");

  auto* labels_cmd = app.add_subcommand("labels", "fault-tolerant distance labels");
  labels_cmd->require_subcommand(1);
  auto* lb_build = labels_cmd->add_subcommand("build", "build one label file per vertex");
  gin.attach(lb_build, false);
  int labels_f = 1;
  std::string labels_dir = "labels_out";
  lb_build->add_option("--f", labels_f, "build budget");
  lb_build->add_option("--dir", labels_dir, "output directory");
  auto* lb_query = labels_cmd->add_subcommand("query", "answer a replacement distance");
  Vertex q_s = 0, q_t = 0;
  std::string q_fail;
  std::string q_dir = "labels_out";
  lb_query->add_option("--dir", q_dir, "label directory");
  lb_query->add_option("--s", q_s, "first vertex")->required();
  lb_query->add_option("--t", q_t, "second vertex")->required();
  lb_query->add_option("--fail", q_fail, "failed edges, e.g. \"0-1,2-3\"");

  auto* lb_cmd = app.add_subcommand("lb", "hard-instance family");
  lb_cmd->require_subcommand(1);
  auto* lbg = lb_cmd->add_subcommand("gen", "emit the weighted family instance");
  int lbg_f = 1;
  std::size_t lbg_d = 4, lbg_sigma = 1, lbg_x = 6;
  std::string weights_out;
  std::size_t lbg_n = 0;
  lbg->add_option("--f", lbg_f, "fault parameter")->required();
  lbg->add_option("--d", lbg_d, "width parameter")->required();
  lbg->add_option("--sigma", lbg_sigma, "number of source copies");
  lbg->add_option("--x", lbg_x, "terminal set size");
  lbg->add_option("--target-n", lbg_n, "size X so the instance has exactly this many vertices");
  lbg->add_option("--weights", weights_out, "weights output file (u v num den)");
  auto* lbc = lb_cmd->add_subcommand("check", "run the structural checks");
  int lbc_f = 1;
  std::size_t lbc_d = 4, lbc_sigma = 1, lbc_x = 6;
  lbc->add_option("--f", lbc_f, "fault parameter")->required();
  lbc->add_option("--d", lbc_d, "width parameter")->required();
  lbc->add_option("--sigma", lbc_sigma, "number of source copies");
  lbc->add_option("--x", lbc_x, "terminal set size");
  auto* lba = lb_cmd->add_subcommand("admissible", "list usable d values for a size budget");
  int lba_f = 2;
  std::size_t lba_n = 1000;
  lba->add_option("--f", lba_f, "fault parameter")->required();
  lba->add_option("--n", lba_n, "vertex budget");

  auto* congest_cmd = app.add_subcommand("congest", "synchronous message-passing simulation");
  gin.attach(congest_cmd, false);
  std::string congest_mode = "spt";
  std::string congest_sources;
  congest_cmd->add_option("mode", congest_mode, "spt|sxs")->required();
  congest_cmd->add_option("--sources", congest_sources, "comma-separated sources")->required();
  std::string metrics_out;
  congest_cmd->add_option("--metrics", metrics_out, "metrics JSON output path");

  auto* ver = app.add_subcommand("verify", "exhaustive property checks");
  gin.attach(ver, false);
  bool ver_c4 = false;
  int ver_fmax = 2;
  ver->add_flag("--c4", ver_c4, "run the symmetric 4-cycle impossibility check");
  ver->add_option("--fmax", ver_fmax, "fault budget for the checks");

  auto* exp = app.add_subcommand("experiment", "configured sweep with report emission");
  std::string exp_config;
  std::string exp_kind;
  exp->add_option("--config", exp_config, "experiment config JSON file");
  exp->add_option("--kind", exp_kind,
                  "verify-all|spanner-sweep|preserver-sweep|srp-check|congest-rounds");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return cmd_gen(gin, seed, out, lb_f, lb_d);
    if (rew->parsed()) return cmd_reweight(gin, seed, bound, out);
    if (srp_cmd->parsed()) return cmd_srp(gin, sources, seed, verify, out);
    if (pres->parsed())
      return cmd_preserver(gin, pres_kind, pres_f, pres_sources, seed, verify, out);
    if (span->parsed()) return cmd_spanner(gin, span_f, sigma_text, seed, verify, out);
    if (labels_cmd->parsed()) {
      if (lb_build->parsed()) return cmd_labels_build(gin, labels_f, seed, labels_dir);
      return cmd_labels_query(q_dir, q_s, q_t, q_fail);
    }
    if (lb_cmd->parsed()) {
      if (lbg->parsed())
        return cmd_lb_gen(lbg_f, lbg_d, lbg_sigma, lbg_x, lbg_n, out, weights_out);
      if (lbc->parsed()) return cmd_lb_check(lbc_f, lbc_d, lbc_sigma, lbc_x);
      return cmd_lb_admissible(lba_f, lba_n);
    }
    if (congest_cmd->parsed())
      return cmd_congest(congest_mode, gin, congest_sources, seed, metrics_out);
    if (ver->parsed()) return cmd_verify(gin, ver_c4, ver_fmax, seed, out);
    if (exp->parsed()) {
      ExperimentConfig cfg;
      if (!exp_config.empty()) {
        std::ifstream in(exp_config);
        if (!in) fail(Errc::invalid_params, "cannot read config " + exp_config);
        nlohmann::json j;
        in >> j;
        cfg = ExperimentConfig::from_json(j);
      }
      if (!exp_kind.empty()) cfg.kind = exp_kind;
      if (!out.empty()) cfg.out_dir = out;
      cfg.seed = seed;
      cfg.threads = threads;
      cfg.verify = verify;
      return run_experiment(cfg);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(Errc::internal_error);
  }
  return 0;
}
