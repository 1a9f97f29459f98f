#pragma once

// Spherical Earth model, frame conversions, distances and link delay.
//
// Angles are degrees at the API boundary and radians internally. Every node
// position (ground station or satellite) is handled as latitude, longitude
// and altitude above a sphere of radius earth::kRadiusKm, never as a 2-D
// projection.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "leosim/error.hpp"

namespace leosim {

namespace earth {
inline constexpr double kRadiusKm = 6371.0;
inline constexpr double kRotationRateRadS = 7.2921159e-5;
inline constexpr double kMuKm3S2 = 398600.4418;
inline constexpr double kSpeedOfLightKmS = 299792.458;
}  // namespace earth

inline constexpr double deg_to_rad(double deg) noexcept { return deg * std::numbers::pi / 180.0; }
inline constexpr double rad_to_deg(double rad) noexcept { return rad * 180.0 / std::numbers::pi; }

// Maps any finite longitude into (-180, 180].
inline double normalize_longitude_deg(double lon) {
  double r = std::fmod(lon, 360.0);
  if (r > 180.0) r -= 360.0;
  if (r <= -180.0) r += 360.0;
  return r;
}

struct GeodeticCoord {
  double latitude_deg = 0.0;
  double longitude_deg = 0.0;
  double altitude_km = 0.0;

  // Validating constructor; longitude is normalized, latitude and altitude
  // are range-checked.
  static GeodeticCoord make(double latitude_deg, double longitude_deg, double altitude_km = 0.0) {
    if (!std::isfinite(latitude_deg) || !std::isfinite(longitude_deg) || !std::isfinite(altitude_km))
      throw InputError("geodetic coordinate must be finite");
    if (latitude_deg < -90.0 || latitude_deg > 90.0)
      throw InputError("latitude out of range [-90, 90]: " + std::to_string(latitude_deg));
    if (altitude_km < 0.0)
      throw InputError("altitude must be >= 0 km: " + std::to_string(altitude_km));
    return {latitude_deg, normalize_longitude_deg(longitude_deg), altitude_km};
  }

  friend bool operator==(const GeodeticCoord&, const GeodeticCoord&) = default;
};

enum class Frame { ECI, ECEF };

inline const char* to_string(Frame f) noexcept { return f == Frame::ECI ? "ECI" : "ECEF"; }

struct CartesianPosition {
  double x_km = 0.0;
  double y_km = 0.0;
  double z_km = 0.0;
  Frame frame = Frame::ECEF;

  double norm() const noexcept { return std::sqrt(x_km * x_km + y_km * y_km + z_km * z_km); }
  double dot(const CartesianPosition& o) const noexcept {
    return x_km * o.x_km + y_km * o.y_km + z_km * o.z_km;
  }

  friend bool operator==(const CartesianPosition&, const CartesianPosition&) = default;
};

inline void require_same_frame(const CartesianPosition& a, const CartesianPosition& b) {
  if (a.frame != b.frame)
    throw InputError(std::string("frame mismatch: ") + to_string(a.frame) + " vs " + to_string(b.frame));
}

inline CartesianPosition geodetic_to_cartesian(const GeodeticCoord& g) {
  const double lat = deg_to_rad(g.latitude_deg);
  const double lon = deg_to_rad(g.longitude_deg);
  const double r = earth::kRadiusKm + g.altitude_km;
  return {r * std::cos(lat) * std::cos(lon), r * std::cos(lat) * std::sin(lon), r * std::sin(lat),
          Frame::ECEF};
}

// Inverse of geodetic_to_cartesian for ECEF positions on or above the
// surface. Longitude at the poles is reported as 0. Sub-micrometre negative
// altitudes from rounding are clamped to 0.
inline GeodeticCoord cartesian_to_geodetic(const CartesianPosition& p) {
  if (p.frame != Frame::ECEF) throw InputError("cartesian_to_geodetic expects an ECEF position");
  const double horizontal = std::hypot(p.x_km, p.y_km);
  const double r = p.norm();
  double alt = r - earth::kRadiusKm;
  if (alt < 0.0) {
    if (alt < -1e-9) throw InputError("position lies below the Earth's surface");
    alt = 0.0;
  }
  const double lat = rad_to_deg(std::atan2(p.z_km, horizontal));
  const double lon = horizontal == 0.0 ? 0.0 : rad_to_deg(std::atan2(p.y_km, p.x_km));
  return {lat, normalize_longitude_deg(lon), alt};
}

inline double chord_distance(const CartesianPosition& a, const CartesianPosition& b) {
  require_same_frame(a, b);
  const double dx = a.x_km - b.x_km;
  const double dy = a.y_km - b.y_km;
  const double dz = a.z_km - b.z_km;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

// Haversine arc length on the reference sphere; altitudes are ignored.
inline double great_circle_distance(const GeodeticCoord& a, const GeodeticCoord& b) {
  const double lat1 = deg_to_rad(a.latitude_deg);
  const double lat2 = deg_to_rad(b.latitude_deg);
  const double dlat = lat2 - lat1;
  const double dlon = deg_to_rad(b.longitude_deg - a.longitude_deg);
  const double h = std::sin(dlat / 2) * std::sin(dlat / 2) +
                   std::cos(lat1) * std::cos(lat2) * std::sin(dlon / 2) * std::sin(dlon / 2);
  return 2.0 * earth::kRadiusKm * std::asin(std::sqrt(std::min(1.0, h)));
}

// Elevation of `target` above the local horizon of `observer`, both ECEF.
// The up-vector is the observer's radial direction (spherical Earth).
inline double elevation_angle_deg(const CartesianPosition& observer, const CartesianPosition& target) {
  require_same_frame(observer, target);
  const CartesianPosition los{target.x_km - observer.x_km, target.y_km - observer.y_km,
                              target.z_km - observer.z_km, observer.frame};
  const double r_obs = observer.norm();
  if (los.norm() == 0.0) throw InputError("elevation undefined for coincident positions");
  if (r_obs == 0.0) throw InputError("observer at the Earth's centre");
  // asin(up . los / |los|), evaluated as atan2 so zenith stays exact.
  const double up_x = observer.x_km / r_obs;
  const double up_y = observer.y_km / r_obs;
  const double up_z = observer.z_km / r_obs;
  const double vertical = los.x_km * up_x + los.y_km * up_y + los.z_km * up_z;
  const double cx = los.y_km * up_z - los.z_km * up_y;
  const double cy = los.z_km * up_x - los.x_km * up_z;
  const double cz = los.x_km * up_y - los.y_km * up_x;
  const double horizontal = std::sqrt(cx * cx + cy * cy + cz * cz);
  return rad_to_deg(std::atan2(vertical, horizontal));
}

inline double elevation_angle_deg(const GeodeticCoord& ground, const GeodeticCoord& sat) {
  return elevation_angle_deg(geodetic_to_cartesian(ground), geodetic_to_cartesian(sat));
}

inline double propagation_delay_ms(double distance_km) {
  if (!(distance_km >= 0.0)) throw InputError("distance must be >= 0 km");
  return distance_km / earth::kSpeedOfLightKmS * 1000.0;
}

}  // namespace leosim
