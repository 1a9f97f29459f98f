#pragma once

// Built-in ground station catalogue and relay layouts.
//
// City coordinates are public geodata (city-centre points). Relay layouts are
// approximations: they sit at equal fractions of the great circle between
// the two endpoints, which puts several of them at sea (ship-borne relays).

#include <array>
#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "leosim/error.hpp"
#include "leosim/geodesy.hpp"

namespace leosim {

enum class StationRole { Endpoint, Relay };

inline const char* to_string(StationRole r) noexcept { return r == StationRole::Endpoint ? "endpoint" : "relay"; }

inline StationRole parse_station_role(std::string_view s) {
  if (s == "endpoint") return StationRole::Endpoint;
  if (s == "relay") return StationRole::Relay;
  throw InputError("unknown station role '" + std::string(s) + "' (expected 'endpoint' or 'relay')");
}

struct GroundStation {
  std::string name;
  GeodeticCoord coord;
  StationRole role = StationRole::Endpoint;

  friend bool operator==(const GroundStation&, const GroundStation&) = default;
};

struct CatalogCity {
  std::string_view name;
  double latitude_deg;
  double longitude_deg;
};

inline constexpr std::array<CatalogCity, 6> kCatalogCities{{
    {"London", 51.5074, -0.1278},
    {"New York", 40.7128, -74.0060},
    {"Washington DC", 38.9072, -77.0369},
    {"Frankfurt", 50.1106, 8.6821},
    {"Seattle", 47.6062, -122.3321},
    {"Los Angeles", 34.0522, -118.2437},
}};

inline GroundStation catalog_station(std::string_view name) {
  for (const auto& c : kCatalogCities)
    if (c.name == name) return {std::string(c.name), GeodeticCoord::make(c.latitude_deg, c.longitude_deg, 0.0),
                                StationRole::Endpoint};
  throw InputError("unknown ground station '" + std::string(name) + "' (not in the built-in catalogue)");
}

// Point at `fraction` of the way along the great circle from a to b.
inline GeodeticCoord great_circle_point(const GeodeticCoord& a, const GeodeticCoord& b, double fraction) {
  const double lat1 = deg_to_rad(a.latitude_deg), lon1 = deg_to_rad(a.longitude_deg);
  const double lat2 = deg_to_rad(b.latitude_deg), lon2 = deg_to_rad(b.longitude_deg);
  const double delta = great_circle_distance(a, b) / earth::kRadiusKm;
  if (delta == 0.0) return {a.latitude_deg, a.longitude_deg, 0.0};
  const double wa = std::sin((1.0 - fraction) * delta) / std::sin(delta);
  const double wb = std::sin(fraction * delta) / std::sin(delta);
  const double x = wa * std::cos(lat1) * std::cos(lon1) + wb * std::cos(lat2) * std::cos(lon2);
  const double y = wa * std::cos(lat1) * std::sin(lon1) + wb * std::cos(lat2) * std::sin(lon2);
  const double z = wa * std::sin(lat1) + wb * std::sin(lat2);
  return GeodeticCoord::make(rad_to_deg(std::atan2(z, std::hypot(x, y))), rad_to_deg(std::atan2(y, x)), 0.0);
}

// `count` relays at fractions k/(count+1), k = 1..count, named
// "<prefix> <k>".
inline std::vector<GroundStation> corridor_relays(const GroundStation& a, const GroundStation& b, int count,
                                                  std::string_view prefix) {
  std::vector<GroundStation> out;
  for (int k = 1; k <= count; ++k) {
    const double f = static_cast<double>(k) / (count + 1);
    out.push_back({std::string(prefix) + " " + std::to_string(k), great_circle_point(a.coord, b.coord, f),
                   StationRole::Relay});
  }
  return out;
}

}  // namespace leosim
