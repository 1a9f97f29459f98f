#include <gtest/gtest.h>

#include <array>
#include <random>

#include "leosim/orbits.hpp"
#include "support/oracles.hpp"

namespace leosim {
namespace {

using Mat = std::array<std::array<double, 3>, 3>;

Mat rot_z(double a) { return {{{std::cos(a), -std::sin(a), 0}, {std::sin(a), std::cos(a), 0}, {0, 0, 1}}}; }
Mat rot_x(double a) { return {{{1, 0, 0}, {0, std::cos(a), -std::sin(a)}, {0, std::sin(a), std::cos(a)}}}; }
Mat mul(const Mat& a, const Mat& b) {
  Mat r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) r[i][j] += a[i][k] * b[k][j];
  return r;
}

// Independent propagation: true anomaly from the eccentric anomaly, radius
// from the conic equation, then an explicit rotation-matrix product.
std::array<double, 3> oracle_position(const OrbitalElements& el, double t) {
  const double n = std::sqrt(oracle::kMu / std::pow(el.semi_major_axis_km, 3));
  const double M = oracle::rad(el.mean_anomaly_epoch_deg) + n * (t - el.epoch_s);
  const double E = oracle::kepler_fixed_point(M, el.eccentricity);
  const double e = el.eccentricity;
  const double nu = 2.0 * std::atan2(std::sqrt(1 + e) * std::sin(E / 2), std::sqrt(1 - e) * std::cos(E / 2));
  const double r = el.semi_major_axis_km * (1 - e * std::cos(E));
  const std::array<double, 3> pf{r * std::cos(nu), r * std::sin(nu), 0.0};
  const Mat q = mul(mul(rot_z(oracle::rad(el.raan_deg)), rot_x(oracle::rad(el.inclination_deg))),
                    rot_z(oracle::rad(el.arg_perigee_deg)));
  std::array<double, 3> out{};
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) out[i] += q[i][k] * pf[k];
  return out;
}

double distance(const CartesianPosition& a, const CartesianPosition& b) {
  return std::hypot(a.x_km - b.x_km, a.y_km - b.y_km, a.z_km - b.z_km);
}

OrbitalElements circular(double a, double inc = 0.0) {
  OrbitalElements el;
  el.semi_major_axis_km = a;
  el.inclination_deg = inc;
  return el;
}

TEST(Orbits, Period) {
  const double a = 6371.0 + 550.0;
  const double expected = 2 * std::numbers::pi * std::sqrt(a * a * a / oracle::kMu);
  EXPECT_NEAR(expected, 5730.127089, 1e-5);
  EXPECT_NEAR(period_s(circular(a)), expected, 1e-9);
  EXPECT_NEAR(period_s(circular(2 * a)) / period_s(circular(a)), std::pow(2.0, 1.5), 1e-12);
  EXPECT_NEAR(period_s(circular(42164.140100)), 86164.0, 1e-3);
}

TEST(Orbits, SolveKepler) {
  EXPECT_EQ(solve_kepler(1.234, 0.0), 1.234);
  EXPECT_EQ(solve_kepler(0.0, 0.05), 0.0);
  const double oracle_E = oracle::kepler_fixed_point(1.0, 0.1);
  EXPECT_NEAR(oracle_E, 1.08860, 1e-5);
  EXPECT_NEAR(solve_kepler(1.0, 0.1), oracle_E, 1e-12);
  EXPECT_THROW(solve_kepler(1.0, 0.2), InputError);
}

TEST(Orbits, KeplerResidualProperty) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> M(-2 * std::numbers::pi, 2 * std::numbers::pi), e(0.0, 0.1);
  for (int k = 0; k < 10000; ++k) {
    const double m = M(rng), ecc = e(rng);
    const double E = solve_kepler(m, ecc);
    ASSERT_LT(std::abs(E - ecc * std::sin(E) - m), 1e-10) << "M=" << m << " e=" << ecc;
  }
}

TEST(Orbits, PropagateReferenceGeometry) {
  const double a = 6921.0;
  const auto p0 = propagate_eci(circular(a), 0.0);
  EXPECT_EQ(p0.frame, Frame::ECI);
  EXPECT_NEAR(p0.x_km, a, 1e-9);
  EXPECT_NEAR(p0.y_km, 0.0, 1e-9);
  EXPECT_NEAR(p0.z_km, 0.0, 1e-9);
  EXPECT_LT(distance(propagate_eci(circular(a), period_s(circular(a))), p0), 1e-6);

  const auto polar = circular(a, 90.0);
  const auto top = propagate_eci(polar, period_s(polar) / 4);
  EXPECT_NEAR(top.x_km, 0.0, 1e-6);
  EXPECT_NEAR(top.y_km, 0.0, 1e-6);
  EXPECT_NEAR(top.z_km, a, 1e-6);
}

TEST(Orbits, PropagateMatchesRotationMatrixOracle) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ang(0.0, 359.999), inc(0.0, 179.0), ecc(0.0, 0.1), alt(300, 2000),
      t(0, 20000);
  for (int k = 0; k < 200; ++k) {
    OrbitalElements el;
    el.semi_major_axis_km = 6371.0 + alt(rng) + 1000.0;
    el.eccentricity = ecc(rng);
    el.inclination_deg = inc(rng);
    el.raan_deg = ang(rng);
    el.arg_perigee_deg = ang(rng);
    el.mean_anomaly_epoch_deg = ang(rng);
    el.epoch_s = -t(rng) / 4;
    const double when = t(rng);
    const auto got = propagate_eci(el, when);
    const auto want = oracle_position(el, when);
    EXPECT_NEAR(got.x_km, want[0], 1e-6);
    EXPECT_NEAR(got.y_km, want[1], 1e-6);
    EXPECT_NEAR(got.z_km, want[2], 1e-6);
  }
}

TEST(Orbits, PeriodicityCircularityAndInclinationBound) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ang(0.0, 359.999), inc(0.0, 179.0), ecc(0.0, 0.1), t(0, 86400);
  for (int k = 0; k < 100; ++k) {
    OrbitalElements el;
    el.semi_major_axis_km = 6371.0 + 550.0 + 800.0 * k / 100.0;
    el.eccentricity = k % 2 ? ecc(rng) : 0.0;
    el.inclination_deg = inc(rng);
    el.raan_deg = ang(rng);
    el.arg_perigee_deg = ang(rng);
    el.mean_anomaly_epoch_deg = ang(rng);
    const double when = t(rng);
    EXPECT_LT(distance(propagate_eci(el, when + period_s(el)), propagate_eci(el, when)), 1e-3);
    if (el.eccentricity == 0.0) {
      const auto p = propagate_eci(el, when);
      EXPECT_NEAR(p.norm(), el.semi_major_axis_km, 1e-6);
      EXPECT_LE(std::abs(p.z_km), el.semi_major_axis_km * std::sin(oracle::rad(el.inclination_deg)) + 1e-6);
    }
  }
}

TEST(Orbits, EciToEcef) {
  const CartesianPosition p{6921.0, 0.0, 0.0, Frame::ECI};
  const auto same = eci_to_ecef(p, 0.0);
  EXPECT_EQ(same.frame, Frame::ECEF);
  EXPECT_DOUBLE_EQ(same.x_km, p.x_km);
  const double sidereal = 2 * std::numbers::pi / 7.2921159e-5;
  EXPECT_NEAR(sidereal, 86164.1, 0.01);
  const auto day = eci_to_ecef(p, sidereal);
  EXPECT_NEAR(day.x_km, 6921.0, 1e-6);
  EXPECT_NEAR(day.y_km, 0.0, 1e-6);
  const auto quarter = eci_to_ecef(p, sidereal / 4);
  EXPECT_NEAR(quarter.x_km, 0.0, 1e-6);
  EXPECT_NEAR(quarter.y_km, -6921.0, 1e-6);
  EXPECT_THROW(eci_to_ecef(same, 1.0), InputError);
}

TEST(Orbits, ElementValidation) {
  OrbitalElements el = circular(6000.0);
  EXPECT_THROW(el.validate(), InputError);
  el = circular(7000.0);
  el.eccentricity = 0.11;
  EXPECT_THROW(el.validate(), InputError);
  el.eccentricity = 0.0;
  el.raan_deg = 360.0;
  EXPECT_THROW(el.validate(), InputError);
  EXPECT_THROW(TwoBodyPropagator({el}), InputError);
}

}  // namespace
}  // namespace leosim
