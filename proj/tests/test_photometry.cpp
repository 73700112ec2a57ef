#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "daylit/error.hpp"
#include "daylit/photometry.hpp"

using namespace daylit;

namespace {

WeatherSample sample(double ghi, double dhi) { return {Timestamp{}, ghi, dhi, std::nullopt}; }

SunState sun_at(double altitude) { return {altitude, 0.0, 0.0}; }

}  // namespace

TEST(ToIlluminance, ProductAndZero) {
  EXPECT_DOUBLE_EQ(to_illuminance(100.0, 120.0), 12000.0);
  EXPECT_EQ(to_illuminance(0.0, 120.0), 0.0);
  EXPECT_THROW((void)to_illuminance(-1.0, 120.0), InputError);
}

TEST(ToIlluminance, Linear) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> g(0.0, 1000.0), k(0.0, 250.0);
  for (int i = 0; i < 1000; ++i) {
    const double a = g(rng), b = g(rng), kk = k(rng);
    EXPECT_NEAR(to_illuminance(a + b, kk), to_illuminance(a, kk) + to_illuminance(b, kk),
                1e-12 * to_illuminance(a + b, kk));
  }
}

TEST(SplitWeather, HandArithmetic) {
  const EfficacySet k{120.0, 105.0, 110.0};
  const auto e = split_weather(sample(500, 200), sun_at(30.0), k);
  EXPECT_NEAR(e.beam_normal, 63000.0, 1e-9);
  EXPECT_NEAR(e.diffuse_horizontal, 24000.0, 1e-9);
}

TEST(SplitWeather, OvercastHasNoBeam) {
  const auto e = split_weather(sample(300, 300), sun_at(45.0), EfficacySet{});
  EXPECT_EQ(e.beam_normal, 0.0);
}

TEST(SplitWeather, BeamSuppressedNearHorizon) {
  EXPECT_EQ(split_weather(sample(100, 20), sun_at(2.0), EfficacySet{}).beam_normal, 0.0);
  EXPECT_EQ(split_weather(sample(100, 20), sun_at(3.0), EfficacySet{}).beam_normal, 0.0);
  EXPECT_GT(split_weather(sample(100, 20), sun_at(3.5), EfficacySet{}).beam_normal, 0.0);
  EXPECT_EQ(split_weather(sample(100, 20), sun_at(-10.0), EfficacySet{}).beam_normal, 0.0);
}

TEST(SplitWeather, InconsistentOrNegativeInput) {
  EXPECT_THROW((void)split_weather(sample(100, 120), sun_at(30.0), EfficacySet{}), ValidationError);
  EXPECT_THROW((void)split_weather(sample(-5, -10), sun_at(30.0), EfficacySet{}), InputError);
}

TEST(SplitWeather, OvercastConservesGlobal) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> g(0.0, 800.0), alt(-20.0, 90.0), k(50.0, 200.0);
  for (int i = 0; i < 500; ++i) {
    const double ghi = g(rng);
    const EfficacySet ks{k(rng), k(rng), k(rng)};
    const double a = alt(rng);
    const auto e = split_weather(sample(ghi, ghi), sun_at(a), ks);
    const double total = e.diffuse_horizontal + e.beam_normal * std::max(0.0, std::sin(a * std::numbers::pi / 180.0));
    EXPECT_NEAR(total, ks.k_diffuse * ghi, 1e-9 * (1.0 + ks.k_diffuse * ghi));
  }
}

TEST(SplitWeather, ClearSkyHorizontalBeamRecoversGlobalDifference) {
  const EfficacySet k{120.0, 105.0, 110.0};
  for (double alt : {5.0, 20.0, 60.0, 89.0}) {
    const auto e = split_weather(sample(700, 150), sun_at(alt), k);
    EXPECT_NEAR(e.beam_normal * std::sin(alt * std::numbers::pi / 180.0), 105.0 * 550.0, 1e-8);
  }
}

TEST(EfficacySet, Bounds) {
  EXPECT_NO_THROW(EfficacySet{}.validate());
  EXPECT_THROW((EfficacySet{260.0, 105.0, 110.0}).validate(), ValidationError);
  EXPECT_THROW((EfficacySet{120.0, -1.0, 110.0}).validate(), ValidationError);
}

TEST(PointSource, InverseSquareAndCosine) {
  const Direction3 up(0, 0, 1);
  EXPECT_NEAR(point_source_illuminance({{0, 0, 2}, 1000.0}, {0, 0, 0}, up), 250.0, 1e-12);
  EXPECT_EQ(point_source_illuminance({{0, 0, -2}, 1000.0}, {0, 0, 0}, up), 0.0);
  const double s60 = std::sin(std::numbers::pi / 3.0);
  const double c60 = std::cos(std::numbers::pi / 3.0);
  EXPECT_NEAR(point_source_illuminance({{s60, 0, c60}, 100.0}, {0, 0, 0}, up), 50.0, 1e-12);
  EXPECT_THROW((void)point_source_illuminance({{1, 1, 1}, 10.0}, {1, 1, 1}, up), GeometryError);
}

TEST(PointSource, QuarterAtDoubleDistance) {
  std::mt19937_64 rng(6);
  std::normal_distribution<double> g;
  for (int i = 0; i < 500; ++i) {
    const Vec3 dir = Vec3{g(rng), g(rng), std::abs(g(rng)) + 0.1};
    const Point3 q{g(rng), g(rng), g(rng)};
    const double d = 0.5 + std::abs(g(rng));
    const Vec3 u = dir / norm(dir);
    const double e1 = point_source_illuminance({q + d * u, 300.0}, q, Direction3(0, 0, 1));
    const double e2 = point_source_illuminance({q + 2.0 * d * u, 300.0}, q, Direction3(0, 0, 1));
    EXPECT_NEAR(e2 / e1, 0.25, 1e-12);
  }
}
