#pragma once

// Named experiment scenarios.
//
//   exp1-isl                   24x66, 53 deg, 550 km, +Grid ISLs, London <-> New York
//   exp1-relay-{6,12,24}planes same shell with N planes, no ISLs, 14 corridor relays
//   exp2-N{25,30,35}           NxN polar shell at 550 km, ISLs, Washington DC <-> Frankfurt
//   fig1-granularity-{1,5,10,15}  10x66 shell, ISLs, DC <-> Frankfurt, update every N s
//   fig2-scalability[-{264,660,1056}]  24 (or 4/10/16) planes x 66, all-pairs routing, LA <-> NY
//   tle-relay                  user TLE catalogue, 10 corridor relays, New York <-> Seattle
//
// The tle-relay preset has no catalogue of its own; callers must fill in
// the TleSource path.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "leosim/catalog.hpp"
#include "leosim/constellation.hpp"
#include "leosim/scenario.hpp"

namespace leosim {

namespace detail {

inline ConstellationSpec starlink_shell(int planes) {
  ConstellationSpec spec;
  spec.planes = planes;
  spec.sats_per_plane = 66;
  spec.inclination_deg = 53.0;
  spec.altitude_km = 550.0;
  return spec;
}

inline Scenario endpoints(std::string name, std::string src, std::string dst) {
  Scenario sc;
  sc.name = std::move(name);
  sc.ground_stations = {catalog_station(src), catalog_station(dst)};
  sc.source = std::move(src);
  sc.destination = std::move(dst);
  return sc;
}

inline Scenario exp1_base(std::string name) {
  Scenario sc = endpoints(std::move(name), "London", "New York");
  sc.update_interval_s = 5.0;
  sc.duration_s = 7200.0;
  return sc;
}

inline Scenario fig2(int planes) {
  Scenario sc = endpoints(planes == 24 ? "fig2-scalability" : "fig2-scalability-" + std::to_string(planes * 66),
                          "Los Angeles", "New York");
  sc.constellation = starlink_shell(planes);
  sc.update_interval_s = 1.0;
  sc.duration_s = 300.0;
  sc.all_pairs = true;
  return sc;
}

}  // namespace detail

inline constexpr std::string_view kPresetNames[] = {
    "exp1-isl",
    "exp1-relay-6planes",
    "exp1-relay-12planes",
    "exp1-relay-24planes",
    "exp2-N25",
    "exp2-N30",
    "exp2-N35",
    "fig1-granularity-1",
    "fig1-granularity-5",
    "fig1-granularity-10",
    "fig1-granularity-15",
    "fig2-scalability",
    "fig2-scalability-264",
    "fig2-scalability-660",
    "fig2-scalability-1056",
    "tle-relay",
};

inline std::optional<Scenario> preset(std::string_view name) {
  using namespace detail;
  if (name == "exp1-isl") {
    Scenario sc = exp1_base("exp1-isl");
    sc.constellation = starlink_shell(24);
    return sc;
  }
  for (int planes : {6, 12, 24}) {
    if (name == "exp1-relay-" + std::to_string(planes) + "planes") {
      Scenario sc = exp1_base(std::string(name));
      ConstellationSpec spec = starlink_shell(planes);
      spec.isl_enabled = false;
      sc.constellation = spec;
      const auto relays = corridor_relays(sc.station("London"), sc.station("New York"), 14, "Atlantic relay");
      sc.ground_stations.insert(sc.ground_stations.end(), relays.begin(), relays.end());
      return sc;
    }
  }
  for (int n : {25, 30, 35}) {
    if (name == "exp2-N" + std::to_string(n)) {
      Scenario sc = endpoints(std::string(name), "Washington DC", "Frankfurt");
      ConstellationSpec spec;
      spec.planes = n;
      spec.sats_per_plane = n;
      spec.inclination_deg = 90.0;
      spec.altitude_km = 550.0;
      sc.constellation = spec;
      sc.update_interval_s = 5.0;
      sc.duration_s = 7200.0;
      return sc;
    }
  }
  for (int interval : {1, 5, 10, 15}) {
    if (name == "fig1-granularity-" + std::to_string(interval)) {
      Scenario sc = endpoints(std::string(name), "Washington DC", "Frankfurt");
      sc.constellation = starlink_shell(10);
      sc.update_interval_s = interval;
      sc.duration_s = 1800.0;
      return sc;
    }
  }
  if (name == "fig2-scalability") return fig2(24);
  for (int planes : {4, 10, 16})
    if (name == "fig2-scalability-" + std::to_string(planes * 66)) return fig2(planes);
  if (name == "tle-relay") {
    Scenario sc = endpoints("tle-relay", "New York", "Seattle");
    sc.constellation = TleSource{};
    const auto relays = corridor_relays(sc.station("New York"), sc.station("Seattle"), 10, "Gateway");
    sc.ground_stations.insert(sc.ground_stations.end(), relays.begin(), relays.end());
    sc.update_interval_s = 5.0;
    sc.duration_s = 7200.0;
    return sc;
  }
  return std::nullopt;
}

}  // namespace leosim
