#pragma once

// Small scenes shared by the unit and acceptance tests.

#include <string>
#include <vector>

#include "daylit/building.hpp"
#include "daylit/photometry.hpp"
#include "daylit/scene.hpp"
#include "daylit/solar.hpp"
#include "daylit/weather.hpp"

namespace fixture {

inline std::string data_path(const std::string& name) { return std::string(DAYLIT_DATA_DIR) + "/" + name; }

inline daylit::Scene lgi_scene() { return daylit::parse_scene(daylit::read_file(data_path("lgi.scene"))); }

inline daylit::Polygon rect_xz(double x0, double x1, double y, double z0, double z1) {
  return daylit::Polygon({{x0, y, z0}, {x1, y, z0}, {x1, y, z1}, {x0, y, z1}});
}

inline daylit::Polygon rect_xy(double x0, double y0, double x1, double y1, double z) {
  return daylit::Polygon({{x0, y0, z}, {x1, y0, z}, {x1, y1, z}, {x0, y1, z}});
}

struct WindowSpec {
  double x0, x1, z0, z1;
  double tau = 1.0;
};

// Box room [0,w] x [0,d] x [0,h]; windows sit on the north wall y = d.
inline daylit::Zone box_room(double w, double d, double h, const std::vector<WindowSpec>& windows,
                             double r_floor = 0.3, double r_wall = 0.6, double r_ceiling = 0.7) {
  using daylit::SurfaceKind;
  std::vector<daylit::Surface> s;
  s.push_back({"floor", rect_xy(0, 0, w, d, 0), r_floor, SurfaceKind::floor});
  s.push_back({"ceiling", rect_xy(0, 0, w, d, h), r_ceiling, SurfaceKind::ceiling});
  s.push_back({"south_wall", rect_xz(0, w, 0, 0, h), r_wall, SurfaceKind::wall});
  s.push_back({"north_wall", rect_xz(0, w, d, 0, h), r_wall, SurfaceKind::wall});
  s.push_back({"west_wall", daylit::Polygon({{0, 0, 0}, {0, d, 0}, {0, d, h}, {0, 0, h}}), r_wall, SurfaceKind::wall});
  s.push_back({"east_wall", daylit::Polygon({{w, 0, 0}, {w, d, 0}, {w, d, h}, {w, 0, h}}), r_wall, SurfaceKind::wall});
  std::vector<daylit::Glazing> g;
  for (std::size_t i = 0; i < windows.size(); ++i) {
    const auto& ws = windows[i];
    g.push_back({"win" + std::to_string(i), rect_xz(ws.x0, ws.x1, d, ws.z0, ws.z1), ws.tau, "north_wall"});
  }
  return daylit::Zone(std::move(s), std::move(g));
}

inline daylit::Scene box_scene(daylit::Zone zone, std::vector<daylit::SensorPoint> sensors) {
  daylit::Scene sc{daylit::Site{-21.3167, 55.4667, 4.0, 0.2}, std::move(zone), {}, std::move(sensors), {}, {}};
  return sc;
}

inline std::vector<daylit::WeatherSample> weather(const std::string& name) {
  return daylit::parse_weather(daylit::read_file(data_path(name)));
}

inline const char* overcast_day = "lgi_overcast_2008-02-10.csv";
inline const char* mixed_day = "lgi_mixed_2008-06-21.csv";

// Sun state for a sample, with the beam illuminance filled in.
inline daylit::SunState sun_for(const daylit::Scene& scene, const daylit::WeatherSample& s) {
  const auto pos = daylit::solar_position(scene.site, s.timestamp);
  daylit::SunState sun{pos.altitude_deg, pos.azimuth_deg, 0.0};
  sun.direct_normal_illuminance = daylit::split_weather(s, sun, scene.efficacy).beam_normal;
  return sun;
}

}  // namespace fixture
