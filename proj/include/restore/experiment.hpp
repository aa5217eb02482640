#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "restore/graph.hpp"

namespace restore {

/// Declarative description of one experiment run; round-trips through JSON
/// so runs can be reproduced from the emitted config copy.
struct ExperimentConfig {
  std::string kind;  // verify-all | spanner-sweep | preserver-sweep | srp-check | congest-rounds

  std::string graph_file;  // when set, overrides the generator
  std::string generator = "gnp";
  std::size_t n = 20;
  double p = 0.3;
  std::size_t rows = 0, cols = 0;

  std::vector<std::size_t> n_list;
  std::size_t seeds_per_n = 3;
  std::size_t instance_count = 20;
  std::size_t source_count = 4;
  std::size_t sigma = 0;
  int f = 1;
  int f_max = 2;
  std::uint64_t seed = 1;
  bool verify = true;
  std::string out_dir = "reports";
  std::size_t threads = 1;

  nlohmann::json to_json() const;
  static ExperimentConfig from_json(const nlohmann::json& j);
};

UndirectedGraph make_graph(const ExperimentConfig& cfg, std::uint64_t instance_seed);

/// Runs the configured pipeline, writes report files under out_dir, and
/// returns 0 iff every enabled verification passed. Reports are
/// byte-identical across reruns of the same config.
int run_experiment(const ExperimentConfig& cfg);

}  // namespace restore
