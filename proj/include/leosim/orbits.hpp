#pragma once

// Two-body satellite propagation.
//
// Orbits enter the simulator either generated from constellation parameters
// or ingested from TLE files; both end up as OrbitalElements and are moved
// forward in time by the same Keplerian propagator. Perturbations (J2, drag,
// SGP4/SDP4 secular terms) are not modelled.

#include <array>
#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "leosim/error.hpp"
#include "leosim/geodesy.hpp"

namespace leosim {

inline constexpr double kMaxEccentricity = 0.1;

struct OrbitalElements {
  double semi_major_axis_km = earth::kRadiusKm + 550.0;
  double eccentricity = 0.0;
  double inclination_deg = 0.0;
  double raan_deg = 0.0;
  double arg_perigee_deg = 0.0;
  double mean_anomaly_epoch_deg = 0.0;
  double epoch_s = 0.0;  // relative to simulation start, may be negative

  void validate() const {
    if (!(semi_major_axis_km > earth::kRadiusKm))
      throw InputError("semi-major axis must exceed the Earth radius: " + std::to_string(semi_major_axis_km));
    if (!(eccentricity >= 0.0 && eccentricity <= kMaxEccentricity))
      throw InputError("eccentricity outside [0, 0.1]: " + std::to_string(eccentricity));
    if (!(inclination_deg >= 0.0 && inclination_deg < 180.0))
      throw InputError("inclination outside [0, 180): " + std::to_string(inclination_deg));
    auto in_circle = [](double v) { return v >= 0.0 && v < 360.0; };
    if (!in_circle(raan_deg) || !in_circle(arg_perigee_deg) || !in_circle(mean_anomaly_epoch_deg))
      throw InputError("RAAN, argument of perigee and mean anomaly must lie in [0, 360)");
    if (!std::isfinite(epoch_s)) throw InputError("epoch must be finite");
  }

  friend bool operator==(const OrbitalElements&, const OrbitalElements&) = default;
};

// Wraps an angle in degrees into [0, 360).
inline double wrap_360(double deg) {
  double r = std::fmod(deg, 360.0);
  if (r < 0.0) r += 360.0;
  if (r >= 360.0) r = 0.0;
  return r;
}

inline double mean_motion_rad_s(double semi_major_axis_km) {
  return std::sqrt(earth::kMuKm3S2 / (semi_major_axis_km * semi_major_axis_km * semi_major_axis_km));
}

inline double period_s(const OrbitalElements& el) {
  return 2.0 * std::numbers::pi / mean_motion_rad_s(el.semi_major_axis_km);
}

// Newton iteration on E - e sin E = M starting from E = M.
inline double solve_kepler(double mean_anomaly_rad, double e) {
  if (!(e >= 0.0 && e <= kMaxEccentricity))
    throw InputError("solve_kepler: eccentricity outside [0, 0.1]");
  if (e == 0.0) return mean_anomaly_rad;
  double E = mean_anomaly_rad;
  for (int i = 0; i < 20; ++i) {
    const double f = E - e * std::sin(E) - mean_anomaly_rad;
    if (std::abs(f) < 1e-12) return E;
    E -= f / (1.0 - e * std::cos(E));
  }
  if (std::abs(E - e * std::sin(E) - mean_anomaly_rad) < 1e-10) return E;
  throw ComputationError("Kepler's equation did not converge in 20 iterations");
}

// Position of one satellite in the inertial frame at simulation time t_s.
inline CartesianPosition propagate_eci(const OrbitalElements& el, double t_s) {
  const double a = el.semi_major_axis_km;
  const double e = el.eccentricity;
  const double n = mean_motion_rad_s(a);
  const double two_pi = 2.0 * std::numbers::pi;
  const double M = std::fmod(deg_to_rad(el.mean_anomaly_epoch_deg) + n * (t_s - el.epoch_s), two_pi);
  const double E = solve_kepler(M, e);

  // Perifocal coordinates.
  const double cosE = std::cos(E);
  const double sinE = std::sin(E);
  const double xp = a * (cosE - e);
  const double yp = a * std::sqrt(1.0 - e * e) * sinE;

  const double w = deg_to_rad(el.arg_perigee_deg);
  const double i = deg_to_rad(el.inclination_deg);
  const double O = deg_to_rad(el.raan_deg);
  const double cw = std::cos(w), sw = std::sin(w);
  const double ci = std::cos(i), si = std::sin(i);
  const double cO = std::cos(O), sO = std::sin(O);

  // R3(-raan) * R1(-inc) * R3(-argp) applied to (xp, yp, 0).
  const double x1 = cw * xp - sw * yp;
  const double y1 = sw * xp + cw * yp;
  const double y2 = ci * y1;
  const double z2 = si * y1;
  CartesianPosition p{cO * x1 - sO * y2, sO * x1 + cO * y2, z2, Frame::ECI};
  if (!(p.norm() > earth::kRadiusKm)) throw ComputationError("propagated position is below the surface");
  return p;
}

// Earth rotation angle is zero at simulation start.
inline double earth_rotation_angle_rad(double t_s) { return earth::kRotationRateRadS * t_s; }

inline CartesianPosition eci_to_ecef(const CartesianPosition& p, double t_s) {
  if (p.frame != Frame::ECI) throw InputError("eci_to_ecef expects an ECI position");
  const double th = earth_rotation_angle_rad(t_s);
  const double c = std::cos(th), s = std::sin(th);
  return {c * p.x_km + s * p.y_km, -s * p.x_km + c * p.y_km, p.z_km, Frame::ECEF};
}

// Propagates a fixed set of satellites. Generated constellations and TLE
// catalogues both feed this type; the simulation only sees positions.
class TwoBodyPropagator {
 public:
  TwoBodyPropagator() = default;
  explicit TwoBodyPropagator(std::vector<OrbitalElements> elements) : elements_(std::move(elements)) {
    for (const auto& el : elements_) el.validate();
  }

  std::size_t size() const noexcept { return elements_.size(); }
  std::span<const OrbitalElements> elements() const noexcept { return elements_; }

  CartesianPosition position_eci(std::size_t index, double t_s) const {
    return propagate_eci(elements_.at(index), t_s);
  }
  CartesianPosition position_ecef(std::size_t index, double t_s) const {
    return eci_to_ecef(position_eci(index, t_s), t_s);
  }

  void positions_ecef(double t_s, std::vector<CartesianPosition>& out) const {
    out.resize(elements_.size());
    for (std::size_t k = 0; k < elements_.size(); ++k) out[k] = eci_to_ecef(propagate_eci(elements_[k], t_s), t_s);
  }

 private:
  std::vector<OrbitalElements> elements_;
};

}  // namespace leosim
