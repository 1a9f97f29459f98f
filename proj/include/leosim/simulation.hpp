#pragma once

// Time-stepped ping simulation.
//
// Simulation time advances in whole milliseconds. Every update interval the
// satellites are propagated, the snapshot graph is rebuilt and routes are
// recomputed; reconfiguration at time t happens before any ping sent at t.
// A ping's RTT is twice the one-way delay of the route in force when it is
// sent (the path is frozen for the whole round trip). There is no queueing,
// processing delay or loss.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "leosim/constellation.hpp"
#include "leosim/error.hpp"
#include "leosim/geodesy.hpp"
#include "leosim/orbits.hpp"
#include "leosim/routing.hpp"
#include "leosim/scenario.hpp"
#include "leosim/tle.hpp"
#include "leosim/topology.hpp"

namespace leosim {

struct RttSample {
  double t_s = 0.0;
  std::optional<double> rtt_ms;  // nullopt: destination unreachable
  int hop_count = 0;
  std::vector<NodeId> path;  // only filled when the scenario records paths

  bool reachable() const noexcept { return rtt_ms.has_value(); }
};

struct RttSummary {
  std::optional<double> mean_ms;
  std::optional<double> min_ms;
  std::optional<double> max_ms;
  std::optional<double> stddev_ms;  // sample standard deviation (n - 1)
  int outages = 0;
  int samples = 0;

  friend bool operator==(const RttSummary&, const RttSummary&) = default;
};

inline RttSummary summarize(const std::vector<RttSample>& samples) {
  RttSummary s;
  s.samples = static_cast<int>(samples.size());
  double sum = 0.0;
  int n = 0;
  for (const auto& x : samples) {
    if (!x.rtt_ms) {
      ++s.outages;
      continue;
    }
    sum += *x.rtt_ms;
    ++n;
    s.min_ms = s.min_ms ? std::min(*s.min_ms, *x.rtt_ms) : *x.rtt_ms;
    s.max_ms = s.max_ms ? std::max(*s.max_ms, *x.rtt_ms) : *x.rtt_ms;
  }
  if (n == 0) return s;
  const double mean = sum / n;
  s.mean_ms = mean;
  double ss = 0.0;
  for (const auto& x : samples)
    if (x.rtt_ms) ss += (*x.rtt_ms - mean) * (*x.rtt_ms - mean);
  s.stddev_ms = n > 1 ? std::sqrt(ss / (n - 1)) : 0.0;
  return s;
}

struct RttTrace {
  std::string scenario_digest;
  std::vector<RttSample> samples;
  RttSummary summary;
  int reconfigurations = 0;

  int outage_count() const noexcept { return summary.outages; }
};

// Fiber baseline: light in glass along the great circle, there and back.
inline double great_circle_fiber_rtt_ms(const GeodeticCoord& a, const GeodeticCoord& b,
                                        double refractive_index = 1.468) {
  return 2.0 * propagation_delay_ms(great_circle_distance(a, b)) * refractive_index;
}

// Vacuum light along the great circle; no satellite path can beat it.
inline double great_circle_vacuum_rtt_ms(const GeodeticCoord& a, const GeodeticCoord& b) {
  return great_circle_fiber_rtt_ms(a, b, 1.0);
}

// Satellites of a scenario, ready to propagate. `spec` is empty for TLE runs.
struct SatelliteSet {
  TwoBodyPropagator propagator;
  std::optional<ConstellationSpec> spec;
};

inline SatelliteSet load_satellites(const Scenario& sc) {
  if (const auto* spec = std::get_if<ConstellationSpec>(&sc.constellation))
    return {TwoBodyPropagator(generate(*spec)), *spec};
  const auto& src = std::get<TleSource>(sc.constellation);
  const auto records = read_tle_file(src.path);
  if (records.empty()) throw InputError("TLE file contains no element sets: " + src.path);
  const Instant epoch = src.sim_epoch.value_or(newest_epoch(records));
  std::vector<OrbitalElements> elements;
  elements.reserve(records.size());
  for (const auto& r : records) elements.push_back(tle_to_elements(r, epoch));
  return {TwoBodyPropagator(std::move(elements)), std::nullopt};
}

// Runs the ping workload. Equivalent scenarios give bit-identical traces.
inline RttTrace run(const Scenario& sc, const SatelliteSet& sats) {
  sc.validate();
  const auto update_ms = static_cast<std::int64_t>(std::llround(sc.update_interval_s * 1000.0));
  const auto duration_ms = static_cast<std::int64_t>(std::llround(sc.duration_s * 1000.0));
  const std::int64_t ping_ms = sc.ping_interval_ms;

  std::vector<CartesianPosition> grounds;
  grounds.reserve(sc.ground_stations.size());
  for (const auto& g : sc.ground_stations) grounds.push_back(geodetic_to_cartesian(g.coord));
  const NodeId src = NodeId::ground(sc.station_index(sc.source));
  const NodeId dst = NodeId::ground(sc.station_index(sc.destination));
  const ConstellationSpec* spec = sats.spec ? &*sats.spec : nullptr;

  RttTrace trace;
  trace.scenario_digest = scenario_digest(sc);
  trace.samples.reserve(static_cast<std::size_t>((duration_ms + ping_ms - 1) / ping_ms));

  RoutingState state(sc.update_interval_s, sc.all_pairs);
  std::vector<CartesianPosition> sat_positions;
  std::int64_t next_update = 0;
  std::int64_t next_ping = 0;
  constexpr auto kNever = std::numeric_limits<std::int64_t>::max();
  while (true) {
    const std::int64_t u = next_update < duration_ms ? next_update : kNever;
    const std::int64_t p = next_ping < duration_ms ? next_ping : kNever;
    const std::int64_t now = std::min(u, p);
    if (now == kNever) break;
    const double t_s = static_cast<double>(now) / 1000.0;
    if (now == u) {
      sats.propagator.positions_ecef(t_s, sat_positions);
      state.reconfigure(t_s, build_graph(t_s, sat_positions, grounds, spec, sc.link_params));
      next_update += update_ms;
    }
    if (now == p) {
      RttSample sample;
      sample.t_s = t_s;
      if (auto route = state.route(src, dst)) {
        sample.rtt_ms = 2.0 * route->one_way_delay_ms;
        sample.hop_count = route->hop_count();
        if (sc.record_paths) sample.path = std::move(route->hops);
      }
      trace.samples.push_back(std::move(sample));
      next_ping += ping_ms;
    }
  }
  trace.reconfigurations = state.reconfigurations();
  trace.summary = summarize(trace.samples);
  return trace;
}

inline RttTrace run(const Scenario& sc) { return run(sc, load_satellites(sc)); }

namespace detail {
inline std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}
}  // namespace detail

// One row per sample: t_s,rtt_ms,hop_count. rtt_ms is empty on outage.
inline void write_trace_csv(std::ostream& out, const RttTrace& trace) {
  out << "t_s,rtt_ms,hop_count\n";
  for (const auto& s : trace.samples) {
    out << detail::fixed(s.t_s, 3) << ',';
    if (s.rtt_ms) out << detail::fixed(*s.rtt_ms, 6);
    out << ',' << s.hop_count << '\n';
  }
}

inline void write_summary_csv(std::ostream& out, const RttSummary& s) {
  auto opt = [](const std::optional<double>& v) { return v ? detail::fixed(*v, 6) : std::string(); };
  out << "mean_ms,min_ms,max_ms,stddev_ms,outages,samples\n"
      << opt(s.mean_ms) << ',' << opt(s.min_ms) << ',' << opt(s.max_ms) << ',' << opt(s.stddev_ms) << ','
      << s.outages << ',' << s.samples << '\n';
}

}  // namespace leosim
