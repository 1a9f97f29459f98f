#include <gtest/gtest.h>

#include <random>

#include "leosim/geodesy.hpp"
#include "support/oracles.hpp"

namespace leosim {
namespace {

const GeodeticCoord kLondon{51.5074, -0.1278, 0.0};
const GeodeticCoord kNewYork{40.7128, -74.0060, 0.0};

void expect_position(const CartesianPosition& p, double x, double y, double z, double tol = 1e-9) {
  EXPECT_NEAR(p.x_km, x, tol);
  EXPECT_NEAR(p.y_km, y, tol);
  EXPECT_NEAR(p.z_km, z, tol);
}

TEST(Geodesy, GeodeticToCartesianAxisPoints) {
  expect_position(geodetic_to_cartesian({0, 0, 0}), 6371.0, 0.0, 0.0);
  expect_position(geodetic_to_cartesian({90, 37, 0}), 0.0, 0.0, 6371.0);
  expect_position(geodetic_to_cartesian({0, 90, 550}), 0.0, 6921.0, 0.0);
  EXPECT_EQ(geodetic_to_cartesian({10, 20, 30}).frame, Frame::ECEF);
}

TEST(Geodesy, MakeValidatesAndNormalizes) {
  EXPECT_THROW(GeodeticCoord::make(90.5, 0), InputError);
  EXPECT_THROW(GeodeticCoord::make(0, 0, -1), InputError);
  EXPECT_DOUBLE_EQ(GeodeticCoord::make(0, 180).longitude_deg, 180.0);
  EXPECT_DOUBLE_EQ(GeodeticCoord::make(0, -180).longitude_deg, 180.0);
  EXPECT_DOUBLE_EQ(GeodeticCoord::make(0, 270).longitude_deg, -90.0);
}

TEST(Geodesy, ChordDistance) {
  const auto a = geodetic_to_cartesian({12, 34, 0});
  EXPECT_EQ(chord_distance(a, a), 0.0);
  EXPECT_NEAR(chord_distance(geodetic_to_cartesian({0, 0, 0}), geodetic_to_cartesian({0, 180, 0})), 12742.0, 1e-9);
  const double oracle = oracle::chord_km(51.5074, -0.1278, 40.7128, -74.0060);
  EXPECT_NEAR(oracle, 5394.494412, 1e-5);
  EXPECT_NEAR(chord_distance(geodetic_to_cartesian(kLondon), geodetic_to_cartesian(kNewYork)), oracle, 1e-6);
}

TEST(Geodesy, ChordDistanceRejectsFrameMismatch) {
  CartesianPosition eci{7000, 0, 0, Frame::ECI};
  CartesianPosition ecef{7000, 0, 0, Frame::ECEF};
  EXPECT_THROW(chord_distance(eci, ecef), InputError);
}

TEST(Geodesy, GreatCircleDistance) {
  EXPECT_EQ(great_circle_distance(kLondon, kLondon), 0.0);
  EXPECT_NEAR(great_circle_distance({0, 0, 0}, {0, 90, 0}), std::numbers::pi * 6371.0 / 2.0, 1e-9);
  EXPECT_NEAR(great_circle_distance({0, 0, 0}, {0, 90, 0}), 10007.5, 0.05);
  const double oracle = oracle::arc_km(51.5074, -0.1278, 40.7128, -74.0060);
  EXPECT_NEAR(oracle, 5570.222180, 1e-5);
  EXPECT_NEAR(great_circle_distance(kLondon, kNewYork), oracle, 1e-6);
}

TEST(Geodesy, ElevationAngle) {
  EXPECT_NEAR(elevation_angle_deg(GeodeticCoord{10, 20, 0}, GeodeticCoord{10, 20, 550}), 90.0, 1e-9);
  EXPECT_LT(elevation_angle_deg(GeodeticCoord{10, 20, 0}, GeodeticCoord{-10, -160, 550}), 0.0);
  // asin(((r_sat - r_gs) . u) / |r_sat - r_gs|) evaluated by hand for a
  // satellite 30 degrees of longitude away: below the horizon.
  const double rs = 6921.0;
  const double dx = rs * std::cos(oracle::rad(30)) - 6371.0;
  const double dy = rs * std::sin(oracle::rad(30));
  const double expected = oracle::deg(std::asin(dx / std::hypot(dx, dy)));
  EXPECT_NEAR(expected, -6.221396293, 1e-8);
  EXPECT_NEAR(elevation_angle_deg(GeodeticCoord{0, 0, 0}, GeodeticCoord{0, 30, 550}), expected, 1e-9);
}

TEST(Geodesy, ElevationRejectsCoincidentPositions) {
  EXPECT_THROW(elevation_angle_deg(GeodeticCoord{1, 2, 0}, GeodeticCoord{1, 2, 0}), InputError);
}

TEST(Geodesy, PropagationDelay) {
  EXPECT_EQ(propagation_delay_ms(0.0), 0.0);
  EXPECT_DOUBLE_EQ(propagation_delay_ms(299792.458), 1000.0);
  EXPECT_NEAR(propagation_delay_ms(1000.0), 3.3356, 1e-4);
  EXPECT_THROW(propagation_delay_ms(-1.0), InputError);
}

class GeodesyProperty : public ::testing::Test {
 protected:
  std::mt19937_64 rng{20240521};
  GeodeticCoord random_coord(double max_alt = 2000.0) {
    std::uniform_real_distribution<double> lat(-89.999, 89.999), lon(-179.999, 180.0), alt(0.0, max_alt);
    return {lat(rng), lon(rng), alt(rng)};
  }
};

TEST_F(GeodesyProperty, RoundTrip) {
  for (int k = 0; k < 1000; ++k) {
    const auto g = random_coord();
    const auto back = cartesian_to_geodetic(geodetic_to_cartesian(g));
    EXPECT_NEAR(back.latitude_deg, g.latitude_deg, 1e-9);
    EXPECT_NEAR(back.longitude_deg, g.longitude_deg, 1e-9);
    EXPECT_NEAR(back.altitude_km, g.altitude_km, 1e-9);
  }
}

TEST_F(GeodesyProperty, ChordBelowArcAndMetric) {
  for (int k = 0; k < 1000; ++k) {
    const auto a = random_coord(0.0), b = random_coord(0.0), c = random_coord(0.0);
    const auto pa = geodetic_to_cartesian(a), pb = geodetic_to_cartesian(b), pc = geodetic_to_cartesian(c);
    EXPECT_LE(chord_distance(pa, pb), great_circle_distance(a, b) + 1e-9);
    EXPECT_EQ(chord_distance(pa, pb), chord_distance(pb, pa));
    EXPECT_LE(chord_distance(pa, pc), chord_distance(pa, pb) + chord_distance(pb, pc) + 1e-9);
  }
}

TEST_F(GeodesyProperty, SubSatellitePointIsZenith) {
  for (int k = 0; k < 1000; ++k) {
    auto sat = random_coord();
    sat.altitude_km += 1.0;
    const GeodeticCoord ground{sat.latitude_deg, sat.longitude_deg, 0.0};
    EXPECT_NEAR(elevation_angle_deg(ground, sat), 90.0, 1e-9);
  }
}

TEST(Geodesy, PoleLongitudeIsZero) {
  const auto g = cartesian_to_geodetic({0, 0, 7000, Frame::ECEF});
  EXPECT_EQ(g.latitude_deg, 90.0);
  EXPECT_EQ(g.longitude_deg, 0.0);
  EXPECT_NEAR(g.altitude_km, 629.0, 1e-9);
}

}  // namespace
}  // namespace leosim
