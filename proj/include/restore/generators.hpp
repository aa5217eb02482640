#pragma once

#include <cstdint>
#include <string>

#include "restore/graph.hpp"

namespace restore {

/// All generators are pure functions of their parameters and seed; edge
/// membership draws are keyed per pair, so output is independent of
/// iteration order.
UndirectedGraph gen_gnp(std::size_t n, double p, std::uint64_t seed);
UndirectedGraph gen_cycle(std::size_t n);
UndirectedGraph gen_path(std::size_t n);
UndirectedGraph gen_star(std::size_t n);  // center 0, n-1 leaves
UndirectedGraph gen_complete(std::size_t n);
UndirectedGraph gen_grid(std::size_t rows, std::size_t cols);

}  // namespace restore
