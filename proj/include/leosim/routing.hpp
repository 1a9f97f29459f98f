#pragma once

// Shortest-path routing over topology snapshots.
//
// Dijkstra with a binary heap. Among equal-cost alternatives the predecessor
// with the smaller NodeId wins, which makes hop lists reproducible.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "leosim/error.hpp"
#include "leosim/topology.hpp"

namespace leosim {

struct Route {
  NodeId source;
  NodeId destination;
  std::vector<NodeId> hops;  // source first, destination last
  double one_way_delay_ms = 0.0;

  int hop_count() const noexcept { return hops.empty() ? 0 : static_cast<int>(hops.size()) - 1; }
};

inline constexpr double kUnreached = std::numeric_limits<double>::infinity();

struct ShortestPathTree {
  int source = -1;
  std::vector<double> dist;
  std::vector<int> pred;          // -1 for the source and unreached nodes
  std::vector<int> settle_order;  // reachable nodes by non-decreasing distance
};

// Single-source shortest paths into `t`, reusing its storage.
inline void dijkstra_into(const TopologyGraph& g, int source, ShortestPathTree& t) {
  const auto n = g.node_count();
  if (source < 0 || static_cast<std::size_t>(source) >= n) throw InputError("dijkstra: source out of range");
  t.source = source;
  t.dist.assign(n, kUnreached);
  t.pred.assign(n, -1);
  t.settle_order.clear();
  t.settle_order.reserve(n);

  using Item = std::pair<double, int>;
  std::vector<Item> heap;
  heap.reserve(n);
  const auto later = std::greater<>{};
  t.dist[static_cast<std::size_t>(source)] = 0.0;
  heap.emplace_back(0.0, source);
  // A node is settled once it has been popped; its distance is final and
  // stale heap entries for it are skipped.
  std::vector<char> settled(n, 0);
  while (!heap.empty()) {
    std::pop_heap(heap.begin(), heap.end(), later);
    const auto [d, u] = heap.back();
    heap.pop_back();
    if (settled[static_cast<std::size_t>(u)]) continue;
    settled[static_cast<std::size_t>(u)] = 1;
    t.settle_order.push_back(u);
    for (const Neighbor& nb : g.neighbors(u)) {
      const auto v = static_cast<std::size_t>(nb.node);
      if (settled[v]) continue;
      const double nd = d + nb.delay_ms;
      if (nd < t.dist[v]) {
        t.dist[v] = nd;
        t.pred[v] = u;
        heap.emplace_back(nd, nb.node);
        std::push_heap(heap.begin(), heap.end(), later);
      } else if (nd == t.dist[v] && u < t.pred[v]) {
        t.pred[v] = u;
      }
    }
  }
}

inline ShortestPathTree dijkstra(const TopologyGraph& g, int source) {
  ShortestPathTree t;
  dijkstra_into(g, source, t);
  return t;
}

inline std::optional<Route> extract_route(const TopologyGraph& g, const ShortestPathTree& tree, int destination) {
  const auto d = static_cast<std::size_t>(destination);
  if (d >= g.node_count()) throw InputError("route destination out of range");
  if (tree.dist[d] == kUnreached) return std::nullopt;
  Route r;
  r.source = g.nodes()[static_cast<std::size_t>(tree.source)];
  r.destination = g.nodes()[d];
  r.one_way_delay_ms = tree.dist[d];
  for (int v = destination; v != -1; v = tree.pred[static_cast<std::size_t>(v)])
    r.hops.push_back(g.nodes()[static_cast<std::size_t>(v)]);
  std::reverse(r.hops.begin(), r.hops.end());
  return r;
}

// Minimum-delay route, or nullopt when dst is unreachable from src.
inline std::optional<Route> shortest_path(const TopologyGraph& g, NodeId src, NodeId dst) {
  const int s = g.index_of(src);
  const int d = g.index_of(dst);
  return extract_route(g, dijkstra(g, s), d);
}

// Holds the current snapshot and the routes derived from it. Each call to
// reconfigure() throws away everything from the previous snapshot; node
// identities are stable across snapshots.
//
// In on-demand mode shortest-path trees are computed lazily per traffic
// source. In all-pairs mode every node gets a tree and a next-hop table at
// reconfiguration time, like a centralized configurator filling every
// routing table.
class RoutingState {
 public:
  explicit RoutingState(double update_interval_s, bool all_pairs = false)
      : update_interval_s_(update_interval_s), all_pairs_(all_pairs) {
    if (!(update_interval_s > 0.0)) throw InputError("update interval must be > 0 s");
  }

  double update_interval_s() const noexcept { return update_interval_s_; }
  bool all_pairs() const noexcept { return all_pairs_; }
  const TopologyGraph& graph() const noexcept { return graph_; }
  int reconfigurations() const noexcept { return reconfigurations_; }

  void reconfigure(double t_s, TopologyGraph graph) {
    const double k = t_s / update_interval_s_;
    if (t_s < 0.0 || std::abs(k - std::round(k)) > 1e-9)
      throw InputError("reconfiguration time must be a non-negative multiple of the update interval");
    graph_ = std::move(graph);
    trees_.clear();
    next_hop_.clear();
    ++reconfigurations_;
    if (all_pairs_) build_tables();
  }

  std::optional<Route> route(NodeId src, NodeId dst) {
    const int s = graph_.index_of(src);
    const int d = graph_.index_of(dst);
    return extract_route(graph_, tree_for(s), d);
  }

  // Next hop from `at` toward `dst` from the all-pairs tables; nullopt when
  // unreachable or at == dst.
  std::optional<NodeId> next_hop(NodeId at, NodeId dst) const {
    if (!all_pairs_) throw InputError("next-hop tables exist only in all-pairs mode");
    const auto n = graph_.node_count();
    const auto a = static_cast<std::size_t>(graph_.index_of(at));
    const auto d = static_cast<std::size_t>(graph_.index_of(dst));
    const int h = next_hop_[a * n + d];
    if (h < 0) return std::nullopt;
    return graph_.nodes()[static_cast<std::size_t>(h)];
  }

 private:
  const ShortestPathTree& tree_for(int source) {
    auto it = trees_.find(source);
    if (it == trees_.end()) it = trees_.emplace(source, dijkstra(graph_, source)).first;
    return it->second;
  }

  void build_tables() {
    const auto n = graph_.node_count();
    next_hop_.assign(n * n, -1);
    ShortestPathTree t;
    for (std::size_t u = 0; u < n; ++u) {
      dijkstra_into(graph_, static_cast<int>(u), t);
      int* row = next_hop_.data() + u * n;
      for (const int v : t.settle_order) {
        if (static_cast<std::size_t>(v) == u) continue;
        const int p = t.pred[static_cast<std::size_t>(v)];
        row[v] = (static_cast<std::size_t>(p) == u) ? v : row[p];
      }
    }
  }

  double update_interval_s_;
  bool all_pairs_;
  int reconfigurations_ = 0;
  TopologyGraph graph_;
  std::unordered_map<int, ShortestPathTree> trees_;
  std::vector<int> next_hop_;
};

}  // namespace leosim
