#pragma once

// Snapshot topology: which links exist at one instant and what they cost.
//
// Links are unit-disk style: a candidate link either passes its filters or
// does not exist. Satellite-satellite candidates come from the +Grid rule
// and must have a clear line of sight; ground-satellite candidates must clear
// the minimum elevation angle. Ground stations never link to each other.
// Weights are one-way speed-of-light delays in milliseconds.

#include <algorithm>
#include <compare>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "leosim/constellation.hpp"
#include "leosim/error.hpp"
#include "leosim/geodesy.hpp"

namespace leosim {

enum class NodeKind { Satellite = 0, GroundStation = 1 };

// Satellites order before ground stations, then by index.
struct NodeId {
  NodeKind kind = NodeKind::Satellite;
  int index = 0;

  static constexpr NodeId satellite(int i) noexcept { return {NodeKind::Satellite, i}; }
  static constexpr NodeId ground(int i) noexcept { return {NodeKind::GroundStation, i}; }

  friend auto operator<=>(const NodeId&, const NodeId&) = default;
};

inline std::string to_string(NodeId id) {
  return (id.kind == NodeKind::Satellite ? "sat:" : "gs:") + std::to_string(id.index);
}

struct LinkParams {
  double min_elevation_deg = 25.0;
  double isl_los_margin_km = 0.0;
  bool isl_los_check = true;
  std::optional<double> max_gsl_range_km;
  std::optional<double> max_isl_range_km;

  void validate() const {
    if (!(min_elevation_deg >= 0.0 && min_elevation_deg < 90.0))
      throw InputError("min_elevation_deg must lie in [0, 90)");
    if (!(isl_los_margin_km >= 0.0)) throw InputError("isl_los_margin_km must be >= 0");
    if (max_gsl_range_km && !(*max_gsl_range_km > 0.0)) throw InputError("max_gsl_range_km must be > 0");
    if (max_isl_range_km && !(*max_isl_range_km > 0.0)) throw InputError("max_isl_range_km must be > 0");
  }

  friend bool operator==(const LinkParams&, const LinkParams&) = default;
};

// Elevation of the 2018-era filing, kept as a named preset.
inline constexpr double kMinElevation2018Deg = 40.0;

inline bool visible(const CartesianPosition& ground, const CartesianPosition& sat, const LinkParams& params) {
  if (elevation_angle_deg(ground, sat) < params.min_elevation_deg) return false;
  if (params.max_gsl_range_km && chord_distance(ground, sat) > *params.max_gsl_range_km) return false;
  return true;
}

inline bool visible(const GeodeticCoord& ground, const GeodeticCoord& sat, const LinkParams& params) {
  return visible(geodetic_to_cartesian(ground), geodetic_to_cartesian(sat), params);
}

// True when segment ab stays strictly above radius R + margin.
inline bool los_clear(const CartesianPosition& a, const CartesianPosition& b, const LinkParams& params) {
  require_same_frame(a, b);
  const double dx = b.x_km - a.x_km;
  const double dy = b.y_km - a.y_km;
  const double dz = b.z_km - a.z_km;
  const double len2 = dx * dx + dy * dy + dz * dz;
  double u = 0.0;
  if (len2 > 0.0) u = std::clamp(-(a.x_km * dx + a.y_km * dy + a.z_km * dz) / len2, 0.0, 1.0);
  const double px = a.x_km + u * dx;
  const double py = a.y_km + u * dy;
  const double pz = a.z_km + u * dz;
  return std::sqrt(px * px + py * py + pz * pz) > earth::kRadiusKm + params.isl_los_margin_km;
}

struct Edge {
  int u = 0;  // dense node index, u < v
  int v = 0;
  double delay_ms = 0.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Neighbor {
  int node = 0;
  double delay_ms = 0.0;
};

// Immutable undirected graph over a sorted node list. Dense index k refers to
// nodes()[k]; because the list is sorted, comparing dense indices compares
// NodeIds.
class TopologyGraph {
 public:
  TopologyGraph() = default;

  TopologyGraph(double snapshot_time_s, std::vector<NodeId> nodes, std::vector<CartesianPosition> positions,
                std::vector<Edge> edges)
      : time_s_(snapshot_time_s), nodes_(std::move(nodes)), positions_(std::move(positions)), edges_(std::move(edges)) {
    if (!positions_.empty() && positions_.size() != nodes_.size())
      throw InputError("node and position lists differ in length");
    if (!std::is_sorted(nodes_.begin(), nodes_.end()) ||
        std::adjacent_find(nodes_.begin(), nodes_.end()) != nodes_.end())
      throw InputError("graph nodes must be unique and sorted");
    const int n = static_cast<int>(nodes_.size());
    for (auto& e : edges_) {
      if (e.u > e.v) std::swap(e.u, e.v);
      if (e.u < 0 || e.v >= n) throw InputError("edge refers to an unknown node");
      if (e.u == e.v) throw InputError("self-loop at " + to_string(nodes_[e.u]));
      if (!(e.delay_ms > 0.0)) throw InputError("edge delays must be > 0");
      if (nodes_[e.u].kind == NodeKind::GroundStation && nodes_[e.v].kind == NodeKind::GroundStation)
        throw InputError("ground-to-ground edges are not allowed");
    }
    std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
      return a.u != b.u ? a.u < b.u : a.v < b.v;
    });
    if (std::adjacent_find(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
          return a.u == b.u && a.v == b.v;
        }) != edges_.end())
      throw InputError("duplicate edge");
    build_adjacency();
  }

  double snapshot_time_s() const noexcept { return time_s_; }
  std::size_t node_count() const noexcept { return nodes_.size(); }
  std::span<const NodeId> nodes() const noexcept { return nodes_; }
  std::span<const CartesianPosition> positions() const noexcept { return positions_; }
  std::span<const Edge> edges() const noexcept { return edges_; }

  std::span<const Neighbor> neighbors(int dense) const {
    const auto b = offsets_.at(static_cast<std::size_t>(dense));
    const auto e = offsets_.at(static_cast<std::size_t>(dense) + 1);
    return std::span<const Neighbor>(adjacency_).subspan(b, e - b);
  }

  std::optional<int> find(NodeId id) const {
    auto it = std::lower_bound(nodes_.begin(), nodes_.end(), id);
    if (it == nodes_.end() || *it != id) return std::nullopt;
    return static_cast<int>(it - nodes_.begin());
  }

  int index_of(NodeId id) const {
    if (auto k = find(id)) return *k;
    throw InputError("unknown node " + to_string(id));
  }

  std::optional<double> edge_delay(NodeId a, NodeId b) const {
    const auto ia = find(a);
    const auto ib = find(b);
    if (!ia || !ib) return std::nullopt;
    for (const auto& nb : neighbors(*ia))
      if (nb.node == *ib) return nb.delay_ms;
    return std::nullopt;
  }

 private:
  void build_adjacency() {
    offsets_.assign(nodes_.size() + 1, 0);
    for (const auto& e : edges_) {
      ++offsets_[static_cast<std::size_t>(e.u) + 1];
      ++offsets_[static_cast<std::size_t>(e.v) + 1];
    }
    for (std::size_t k = 1; k < offsets_.size(); ++k) offsets_[k] += offsets_[k - 1];
    adjacency_.resize(edges_.size() * 2);
    std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (const auto& e : edges_) {
      adjacency_[fill[static_cast<std::size_t>(e.u)]++] = {e.v, e.delay_ms};
      adjacency_[fill[static_cast<std::size_t>(e.v)]++] = {e.u, e.delay_ms};
    }
  }

  double time_s_ = 0.0;
  std::vector<NodeId> nodes_;
  std::vector<CartesianPosition> positions_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<Neighbor> adjacency_;
};

// Builds the snapshot at t_s from ECEF positions. `spec` is null for
// TLE-driven runs, which have no inter-satellite links.
inline TopologyGraph build_graph(double t_s, std::span<const CartesianPosition> sats,
                                 std::span<const CartesianPosition> grounds, const ConstellationSpec* spec,
                                 const LinkParams& params) {
  params.validate();
  const int n_sat = static_cast<int>(sats.size());
  const int n_gs = static_cast<int>(grounds.size());

  std::vector<NodeId> nodes;
  std::vector<CartesianPosition> positions;
  nodes.reserve(sats.size() + grounds.size());
  positions.reserve(sats.size() + grounds.size());
  for (int i = 0; i < n_sat; ++i) {
    nodes.push_back(NodeId::satellite(i));
    positions.push_back(sats[static_cast<std::size_t>(i)]);
  }
  for (int g = 0; g < n_gs; ++g) {
    nodes.push_back(NodeId::ground(g));
    positions.push_back(grounds[static_cast<std::size_t>(g)]);
  }

  auto link_delay = [&](int a, int b) {
    const double d = chord_distance(positions[static_cast<std::size_t>(a)], positions[static_cast<std::size_t>(b)]);
    if (d == 0.0) throw InputError("coincident positions for " + to_string(nodes[a]) + " and " + to_string(nodes[b]));
    return propagation_delay_ms(d);
  };

  std::vector<Edge> edges;
  if (spec != nullptr && spec->isl_enabled) {
    if (spec->total() != n_sat) throw InputError("satellite count does not match the constellation spec");
    for (int i = 0; i < n_sat; ++i) {
      for (const SatelliteId j : isl_neighbors(SatelliteId{i}, *spec)) {
        if (j.index <= i) continue;
        const auto& a = sats[static_cast<std::size_t>(i)];
        const auto& b = sats[static_cast<std::size_t>(j.index)];
        if (params.isl_los_check && !los_clear(a, b, params)) continue;
        if (params.max_isl_range_km && chord_distance(a, b) > *params.max_isl_range_km) continue;
        edges.push_back({i, j.index, link_delay(i, j.index)});
      }
    }
  }
  for (int i = 0; i < n_sat; ++i) {
    for (int g = 0; g < n_gs; ++g) {
      if (!visible(grounds[static_cast<std::size_t>(g)], sats[static_cast<std::size_t>(i)], params)) continue;
      edges.push_back({i, n_sat + g, link_delay(i, n_sat + g)});
    }
  }
  return TopologyGraph(t_s, std::move(nodes), std::move(positions), std::move(edges));
}

}  // namespace leosim
