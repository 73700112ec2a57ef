#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "daylit/error.hpp"
#include "daylit/sky.hpp"
#include "oracles/sky_oracles.hpp"
#include "support/fixtures.hpp"

using namespace daylit;

namespace {

constexpr double pi = std::numbers::pi;

const SkyCondition overcast{SkyModel::cie_overcast, 10000.0};
const SkyCondition uniform{SkyModel::uniform, 10000.0};

// Vertical window in the plane y = 0 facing -y (into a room at y < 0).
Glazing window(double x0, double x1, double z0, double z1, double tau = 1.0) {
  return {"w", Polygon({{x0, 0, z0}, {x1, 0, z0}, {x1, 0, z1}, {x0, 0, z1}}, Vec3{0, -1, 0}), tau, "wall"};
}

oracle::Parallelogram as_parallelogram(double x0, double x1, double z0, double z1) {
  return {{x0, 0, z0}, {x1 - x0, 0, 0}, {0, 0, z1 - z0}};
}

// Vertical screen at y = dist outside the window.
Obstruction screen(double dist, double x0, double x1, double z0, double z1, double rho) {
  return {"screen", Polygon({{x0, dist, z0}, {x1, dist, z0}, {x1, dist, z1}, {x0, dist, z1}}), rho};
}

double overcast_rel(double s) { return (1.0 + 2.0 * s) / 3.0; }

}  // namespace

TEST(SkyLuminance, OvercastAndUniformLaws) {
  EXPECT_DOUBLE_EQ(sky_luminance(SkyModel::cie_overcast, 90.0, 300.0), 300.0);
  EXPECT_DOUBLE_EQ(sky_luminance(SkyModel::cie_overcast, 0.0, 300.0), 100.0);
  EXPECT_NEAR(sky_luminance(SkyModel::cie_overcast, 30.0, 300.0), 200.0, 1e-12);
  for (double g : {0.0, 17.0, 45.0, 90.0}) EXPECT_DOUBLE_EQ(sky_luminance(SkyModel::uniform, g, 7.0), 7.0);
}

TEST(ZenithLuminance, ClosedForms) {
  EXPECT_NEAR(zenith_luminance(SkyModel::cie_overcast, 10000.0), 4092.0, 1.0);
  EXPECT_NEAR(zenith_luminance(SkyModel::cie_overcast, 10000.0), 9e4 / (7 * pi), 1e-9);
  EXPECT_NEAR(zenith_luminance(SkyModel::uniform, pi), 1.0, 1e-15);
}

TEST(ZenithLuminance, HemisphereQuadratureRecoversIlluminance) {
  for (SkyModel m : {SkyModel::cie_overcast, SkyModel::uniform}) {
    for (double e : {1.0, 1e3, 1e5}) {
      const double lz = zenith_luminance(m, e);
      const double recovered =
          oracle::hemisphere_illuminance([&](double g) { return sky_luminance(m, g, lz); }, 2000);
      EXPECT_NEAR(recovered / e, 1.0, 1e-3);
    }
  }
}

TEST(SkyComponent, FullHemisphereGlazingIsNearlyHundred) {
  // Horizontal roof light far larger than its height above the point.
  const double half = 300.0;
  const Glazing roof{"roof", Polygon({{-half, -half, 1}, {half, -half, 1}, {half, half, 1}, {-half, half, 1}}, Vec3{0, 0, -1}),
                     1.0, "ceiling"};
  QuadratureOptions opts;
  opts.patch_n = 64;
  opts.max_refine_depth = 8;
  const double sc = sky_component({0, 0, 0}, roof, {}, overcast, opts);
  EXPECT_NEAR(sc, 100.0, 1.0);
}

TEST(SkyComponent, TinyGlazingIsNearlyZero) {
  const Glazing tiny = window(0.5, 0.5 + 1e-4, 1.0, 1.0 + 1e-4);
  EXPECT_LT(sky_component({0.5, -1.0, 0.85}, tiny, {}, overcast), 1e-5);
}

TEST(SkyComponent, PointInGlazingPlaneIsDegenerate) {
  try {
    (void)sky_component({5.0, 0.0, 0.85}, window(0, 1, 1, 2), {}, overcast);
    FAIL();
  } catch (const GeometryError& e) {
    EXPECT_EQ(e.kind(), GeometryError::Kind::Degenerate);
  }
  QuadratureOptions bad;
  bad.patch_n = 0;
  EXPECT_THROW((void)sky_component({0.5, -1, 0.85}, window(0, 1, 1, 2), {}, overcast, bad), InputError);
}

TEST(SkyComponent, UnitWindowMatchesMonteCarlo) {
  const Point3 q{0.5, -1.0, 0.85};
  const double sc = sky_component(q, window(0, 1, 1, 2, 0.85), {}, overcast);
  const double mc = oracle::mc_sky_component(q, as_parallelogram(0, 1, 1, 2), 0.85, {}, overcast_rel, 9.0 / (7.0 * pi),
                                             2'000'000, 7);
  EXPECT_NEAR(sc / mc, 1.0, 0.02);
}

TEST(SkyComponent, ObstructedWindowMatchesMonteCarlo) {
  const Point3 q{0.5, -1.5, 0.85};
  const Obstruction obs = screen(4.0, -3, 4, 0, 3.0, 0.3);
  const double sc = sky_component(q, window(0, 1, 0.9, 2.1), std::vector{obs}, overcast);
  const double mc = oracle::mc_sky_component(q, as_parallelogram(0, 1, 0.9, 2.1), 1.0,
                                             {{{-3, 4.0, 0}, {7, 0, 0}, {0, 0, 3.0}}}, overcast_rel, 9.0 / (7.0 * pi),
                                             2'000'000, 9);
  EXPECT_NEAR(sc / mc, 1.0, 0.02);
}

TEST(SkyComponent, PatchGridConverges) {
  const Point3 q{0.5, -1.0, 0.85};
  const Glazing w = window(0, 1, 1, 2);
  const Obstruction obs = screen(3.0, -2, 3, 0, 2.5, 0.3);
  for (const auto& obstructions : {std::vector<Obstruction>{}, std::vector<Obstruction>{obs}}) {
    QuadratureOptions o16, o32;
    o16.patch_n = 16;
    o32.patch_n = 32;
    const double a = sky_component(q, w, obstructions, overcast, o16);
    const double b = sky_component(q, w, obstructions, overcast, o32);
    EXPECT_LT(std::abs(a - b) / b, 0.005);
  }
}

TEST(SkyComponent, InvariantToExteriorIlluminance) {
  const Point3 q{0.3, -1.7, 0.85};
  const Glazing w = window(0, 1.2, 0.9, 2.0, 0.7);
  const std::vector obs{screen(5.0, -5, 5, 0, 2.0, 0.4)};
  const auto a = window_components(q, w, obs, {SkyModel::cie_overcast, 1.0});
  const auto b = window_components(q, w, obs, {SkyModel::cie_overcast, 1e4});
  EXPECT_EQ(a.sc, b.sc);
  EXPECT_EQ(a.erc, b.erc);
}

TEST(SkyComponent, MonotoneInObstructionSize) {
  const Point3 q{0.5, -1.2, 0.85};
  const Glazing w = window(0, 1, 1, 2);
  double prev = sky_component(q, w, {}, overcast);
  for (double top = 0.5; top <= 6.0; top += 0.5) {
    const double sc = sky_component(q, w, std::vector{screen(3.0, -4, 5, 0, top, 0.3)}, overcast);
    EXPECT_LE(sc, prev + 1e-12) << top;
    prev = sc;
  }
  EXPECT_LT(prev, 1e-9);
}

TEST(SkyComponent, UniformSkyEqualsConfigurationFactor) {
  const Point3 q{0.2, -1.3, 0.85};
  for (double tau : {1.0, 0.6}) {
    const Glazing w = window(-0.4, 1.1, 0.95, 2.2, tau);
    const double f = oracle::configuration_factor(q, Vec3{0, 0, 1}, w.polygon.vertices());
    QuadratureOptions fine;
    fine.patch_n = 48;
    EXPECT_NEAR(sky_component(q, w, {}, uniform, fine) / (100.0 * tau * f), 1.0, 1e-3);
  }
}

TEST(ExternallyReflected, ZeroWithoutObstructionOrWhenBlack) {
  const Point3 q{0.5, -1.0, 0.85};
  const Glazing w = window(0, 1, 1, 2);
  EXPECT_EQ(externally_reflected_component(q, w, {}, overcast), 0.0);
  EXPECT_EQ(externally_reflected_component(q, w, std::vector{screen(2.0, -3, 4, 0, 3, 0.0)}, overcast), 0.0);
  EXPECT_GT(externally_reflected_component(q, w, std::vector{screen(2.0, -3, 4, 0, 3, 0.5)}, overcast), 0.0);
}

TEST(ExternallyReflected, FullCoverEqualsScaledUniformSkyComponent) {
  const Point3 q{0.5, -1.0, 0.85};
  const Glazing w = window(0, 1, 1, 2, 0.85);
  const double rho = 0.4;
  QuadratureOptions opts;
  opts.obstruction_luminance_factor = 0.2;
  const std::vector cover{screen(0.5, -50, 50, -5, 60, rho)};
  const auto covered = window_components(q, w, cover, overcast, opts);
  const double sc_uniform = sky_component(q, w, {}, uniform, opts);
  EXPECT_EQ(covered.sc, 0.0);
  EXPECT_NEAR(covered.erc, rho * 0.2 * sc_uniform, 1e-9 * sc_uniform);
}

TEST(ExternallyReflected, GroundBelowHorizonDoesNotReachUpwardSensor) {
  // The lower half of this window is below the sensor; those rays point
  // downward and carry no flux onto an upward-facing receiver.
  const Point3 q{0.5, -1.0, 1.5};
  const double erc = externally_reflected_component(q, window(0, 1, 1, 2), {}, overcast);
  EXPECT_EQ(erc, 0.0);
}

TEST(SplitFlux, HandArithmetic) {
  const SplitFluxInputs in{0.85, 2.0, 50.0, 0.5, 0.3, 0.7, 39.0};
  const double expected = 0.85 * 2.0 / (50.0 * 0.5) * (39.0 * 0.3 + 5.0 * 0.7);
  EXPECT_NEAR(split_flux_irc(in), expected, 1e-12);
  EXPECT_NEAR(split_flux_irc(in), 1.0336, 1e-9);
  EXPECT_NEAR(split_flux_irc(in), 1.034, 5e-4);
}

TEST(SplitFlux, DegenerateRooms) {
  SplitFluxInputs no_window{0.85, 0.0, 50.0, 0.5, 0.3, 0.7, 39.0};
  EXPECT_EQ(split_flux_irc(no_window), 0.0);
  SplitFluxInputs black{0.85, 2.0, 50.0, 0.0, 0.0, 0.0, 39.0};
  EXPECT_EQ(split_flux_irc(black), 0.0);
  SplitFluxInputs mirror{0.85, 2.0, 50.0, 1.0, 1.0, 1.0, 39.0};
  EXPECT_THROW((void)split_flux_irc(mirror), ValidationError);
  SplitFluxInputs empty{0.85, 2.0, 0.0, 0.5, 0.3, 0.7, 39.0};
  EXPECT_THROW((void)split_flux_irc(empty), ValidationError);
}

TEST(ObstructionCoefficient, TableAndInterpolation) {
  EXPECT_EQ(obstruction_coefficient(0.0), 39.0);
  EXPECT_EQ(obstruction_coefficient(-5.0), 39.0);
  EXPECT_EQ(obstruction_coefficient(10.0), 35.0);
  EXPECT_NEAR(obstruction_coefficient(15.0), 33.0, 1e-12);
  EXPECT_EQ(obstruction_coefficient(80.0), 5.0);
  EXPECT_EQ(obstruction_coefficient(90.0), 5.0);
  for (double a = 0.0; a < 90.0; a += 0.7) EXPECT_GE(obstruction_coefficient(a), obstruction_coefficient(a + 0.7));
}

TEST(InternallyReflected, BoxRoomMatchesHandSplit) {
  // 4 x 5 x 3 room, 2 x 1 window from z = 1 to 2: mid-height 1.5.
  const Zone zone = fixture::box_room(4, 5, 3, {{1, 3, 1, 2, 0.8}}, 0.2, 0.5, 0.8);
  const double a = 2 * 20 + 2 * 12 + 2 * 15;
  const double r = (20 * 0.2 + 20 * 0.8 + 54 * 0.5) / a;
  const double r_fw = (20 * 0.2 + 27 * 0.5) / 47.0;
  const double r_cw = (20 * 0.8 + 27 * 0.5) / 47.0;
  const double expected = 0.8 * 2.0 / (a * (1 - r)) * (39.0 * r_fw + 5.0 * r_cw);
  EXPECT_NEAR(zone.total_area(), a, 1e-12);
  EXPECT_NEAR(zone.mean_reflectance(), r, 1e-12);
  EXPECT_NEAR(internally_reflected_component(zone, zone.glazings()[0], 0.0), expected, 1e-12);
  // Ground coefficient scales with ground reflectance.
  const double brighter = internally_reflected_component(zone, zone.glazings()[0], 0.0, 0.2);
  EXPECT_NEAR(brighter - expected, 0.8 * 2.0 / (a * (1 - r)) * 5.0 * r_cw, 1e-12);
}

TEST(InternallyReflected, BlackRoomIsZero) {
  const Zone zone = fixture::box_room(4, 5, 3, {{1, 3, 1, 2}}, 0.0, 0.0, 0.0);
  EXPECT_EQ(internally_reflected_component(zone, zone.glazings()[0], 0.0), 0.0);
}

TEST(ObstructionAngle, ScreenInFrontOfWindow) {
  const Glazing w = window(0, 1, 1, 2);
  EXPECT_EQ(obstruction_angle(w, {}), 0.0);
  // Window centre at z = 1.5; screen top 3.5 m further up at 5 m distance.
  const double angle = obstruction_angle(w, std::vector{screen(5.0, -20, 20, 0, 5.0, 0.3)});
  EXPECT_NEAR(angle, std::atan2(3.5, 5.0) * 180.0 / pi, 0.5);
}
