#include "restore/rpts.hpp"

#include <list>
#include <mutex>
#include <unordered_map>

namespace restore {

namespace {

struct Key {
  Vertex s;
  std::vector<Edge> faults;
  bool operator==(const Key&) const = default;
};

struct KeyHash {
  std::size_t operator()(const Key& k) const {
    std::uint64_t h = 0x9e3779b97f4a7c15ull ^ k.s;
    for (Edge e : k.faults) {
      h ^= (static_cast<std::uint64_t>(e.u) << 32) | e.v;
      h *= 0x100000001b3ull;
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace

struct Rpts::Cache {
  std::size_t capacity;
  mutable std::mutex mu;
  // LRU: most recent at the front.
  std::list<std::pair<Key, std::shared_ptr<const Spt>>> order;
  std::unordered_map<Key, decltype(order)::iterator, KeyHash> index;
  std::uint64_t hits = 0;
  std::uint64_t misses = 0;
};

Rpts::Rpts(PerturbedDigraph pd, std::size_t cache_capacity)
    : pd_(std::move(pd)), cache_(std::make_unique<Cache>()) {
  cache_->capacity = std::max<std::size_t>(cache_capacity, 1);
}

Rpts::Rpts(Rpts&&) noexcept = default;
Rpts& Rpts::operator=(Rpts&&) noexcept = default;
Rpts::~Rpts() = default;

std::shared_ptr<const Spt> Rpts::spt(Vertex s, const FaultSet& faults) const {
  Key key{s, faults.edges()};
  std::lock_guard<std::mutex> lock(cache_->mu);
  auto it = cache_->index.find(key);
  if (it != cache_->index.end()) {
    ++cache_->hits;
    cache_->order.splice(cache_->order.begin(), cache_->order, it->second);
    return cache_->order.front().second;
  }
  ++cache_->misses;
  auto tree = std::make_shared<const Spt>(dijkstra_sssp(pd_, s, faults));
  cache_->order.emplace_front(key, tree);
  cache_->index[key] = cache_->order.begin();
  if (cache_->order.size() > cache_->capacity) {
    cache_->index.erase(cache_->order.back().first);
    cache_->order.pop_back();
  }
  return tree;
}

std::optional<Path> Rpts::pi(Vertex s, Vertex t, const FaultSet& faults) const {
  if (s >= n() || t >= n()) fail(Errc::invalid_params, "pi endpoint out of range");
  return spt(s, faults)->path_to(t);
}

SchemeFn Rpts::scheme() const {
  return [this](Vertex s, Vertex t, const FaultSet& f) { return pi(s, t, f); };
}

std::uint64_t Rpts::cache_hits() const {
  std::lock_guard<std::mutex> lock(cache_->mu);
  return cache_->hits;
}

std::uint64_t Rpts::cache_misses() const {
  std::lock_guard<std::mutex> lock(cache_->mu);
  return cache_->misses;
}

}  // namespace restore
