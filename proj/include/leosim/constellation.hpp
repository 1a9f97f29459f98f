#pragma once

// Walker-style constellation generation and the index-based +Grid
// inter-satellite link rule.
//
// Satellites are numbered 0 .. P*S-1, plane-major: index = plane * S + slot.
// Each satellite links to the previous and next slot in its own plane and to
// the same slot in the two neighbouring planes.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "leosim/error.hpp"
#include "leosim/geodesy.hpp"
#include "leosim/orbits.hpp"

namespace leosim {

struct ConstellationSpec {
  int planes = 1;
  int sats_per_plane = 1;
  double inclination_deg = 53.0;
  double altitude_km = 550.0;
  double phase_offset = 0.0;  // Walker phasing factor F, in [0, planes)
  double raan_spread_deg = 360.0;
  double eccentricity = 0.0;
  bool isl_enabled = true;
  bool isl_wrap_seam = true;

  int total() const noexcept { return planes * sats_per_plane; }

  void validate() const {
    if (planes < 1) throw InputError("constellation needs at least one plane");
    if (sats_per_plane < 1) throw InputError("constellation needs at least one satellite per plane");
    if (!(altitude_km > 0.0)) throw InputError("constellation altitude must be > 0 km");
    if (!(inclination_deg >= 0.0 && inclination_deg < 180.0))
      throw InputError("constellation inclination outside [0, 180)");
    if (!(phase_offset >= 0.0 && phase_offset < planes))
      throw InputError("phase offset must lie in [0, planes)");
    if (!(raan_spread_deg > 0.0 && raan_spread_deg <= 360.0))
      throw InputError("RAAN spread must lie in (0, 360]");
    if (!(eccentricity >= 0.0 && eccentricity <= kMaxEccentricity))
      throw InputError("constellation eccentricity outside [0, 0.1]");
  }

  friend bool operator==(const ConstellationSpec&, const ConstellationSpec&) = default;
};

struct SatelliteId {
  int index = 0;
  friend auto operator<=>(const SatelliteId&, const SatelliteId&) = default;
};

struct PlaneSlot {
  int plane = 0;
  int slot = 0;
  friend bool operator==(const PlaneSlot&, const PlaneSlot&) = default;
};

inline PlaneSlot plane_slot(SatelliteId id, const ConstellationSpec& spec) {
  if (id.index < 0 || id.index >= spec.total())
    throw InputError("satellite index " + std::to_string(id.index) + " outside [0, " +
                     std::to_string(spec.total()) + ")");
  return {id.index / spec.sats_per_plane, id.index % spec.sats_per_plane};
}

inline SatelliteId satellite_at(int plane, int slot, const ConstellationSpec& spec) {
  return {plane * spec.sats_per_plane + slot};
}

// Elements for every satellite, in index order.
inline std::vector<OrbitalElements> generate(const ConstellationSpec& spec) {
  spec.validate();
  const int P = spec.planes;
  const int S = spec.sats_per_plane;
  std::vector<OrbitalElements> out;
  out.reserve(static_cast<std::size_t>(spec.total()));
  for (int p = 0; p < P; ++p) {
    for (int s = 0; s < S; ++s) {
      OrbitalElements el;
      el.semi_major_axis_km = earth::kRadiusKm + spec.altitude_km;
      el.eccentricity = spec.eccentricity;
      el.inclination_deg = spec.inclination_deg;
      el.raan_deg = wrap_360(p * spec.raan_spread_deg / P);
      el.arg_perigee_deg = 0.0;
      el.mean_anomaly_epoch_deg =
          wrap_360(s * 360.0 / S + p * spec.phase_offset * 360.0 / (static_cast<double>(P) * S));
      el.epoch_s = 0.0;
      out.push_back(el);
    }
  }
  return out;
}

// Up to four +Grid neighbours, sorted and without duplicates or self.
inline std::vector<SatelliteId> isl_neighbors(SatelliteId id, const ConstellationSpec& spec) {
  if (!spec.isl_enabled) throw InputError("inter-satellite links are disabled for this constellation");
  const auto [p, s] = plane_slot(id, spec);
  const int P = spec.planes;
  const int S = spec.sats_per_plane;
  std::vector<SatelliteId> out;
  out.reserve(4);
  auto add = [&](int plane, int slot) {
    const SatelliteId n = satellite_at(plane, slot, spec);
    if (n == id) return;
    for (const auto& existing : out)
      if (existing == n) return;
    out.push_back(n);
  };
  add(p, (s + 1) % S);
  add(p, (s + S - 1) % S);
  if (spec.isl_wrap_seam) {
    add((p + 1) % P, s);
    add((p + P - 1) % P, s);
  } else {
    if (p + 1 < P) add(p + 1, s);
    if (p > 0) add(p - 1, s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline bool is_inter_satellite_link(SatelliteId a, SatelliteId b, const ConstellationSpec& spec) {
  if (!spec.isl_enabled || a == b) return false;
  plane_slot(b, spec);
  for (const auto& n : isl_neighbors(a, spec))
    if (n == b) return true;
  return false;
}

}  // namespace leosim
