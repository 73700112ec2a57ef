#include "daylit/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <thread>

#include <fmt/format.h>

#include "daylit/error.hpp"
#include "daylit/photometry.hpp"

namespace daylit {

namespace {

// Runs fn(i) for i in [0, n) on a few worker threads. Results must be
// written by index so the outcome does not depend on scheduling.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  const std::size_t workers = std::min<std::size_t>(n, std::max(1u, std::thread::hardware_concurrency()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

double sin_deg(double deg) { return std::sin(deg * std::numbers::pi / 180.0); }

}  // namespace

DaylightComponents daylight_factor_at(const Scene& scene, const Point3& q) {
  if (!scene.zone.contains(q)) {
    throw ValidationError(fmt::format("point ({}, {}, {}) is outside the zone", q.x, q.y, q.z));
  }
  const SkyCondition overcast{SkyModel::cie_overcast, 0.0};
  const QuadratureOptions quad = scene.quadrature();
  DaylightComponents total;
  for (const auto& g : scene.zone.glazings()) {
    const WindowComponents w = window_components(q, g, scene.obstructions, overcast, quad);
    const double irc = internally_reflected_component(scene.zone, g, obstruction_angle(g, scene.obstructions),
                                                      scene.site.albedo);
    total += DaylightComponents::from(w.sc, w.erc, irc);
  }
  return total;
}

std::vector<Sunspot> sunspot_on_plane(const Scene& scene, const SunState& sun, double z) {
  std::vector<Sunspot> spots;
  if (!sun.above_horizon()) return spots;
  const Direction3 beam = sun_direction(sun.altitude_deg, sun.azimuth_deg);
  const Plane target = Plane::horizontal(z);
  // Only what lies above the plane can cast a downward beam onto it.
  auto above = [&](const Polygon& p) { return clip_to_halfspace(p, target); };

  std::vector<Polygon> floors;
  for (const Surface* f : scene.zone.floors()) {
    const double z_floor = f->polygon.plane().offset / f->polygon.normal().dz();
    floors.push_back(f->polygon.translated({0, 0, z - z_floor}));
  }

  std::vector<Polygon> shadows;
  if (scene.options.enable_overhang_shading) {
    for (const auto& o : scene.obstructions) {
      const auto part = above(o.polygon);
      if (!part) continue;
      if (auto s = project_polygon(*part, beam, target)) shadows.push_back(std::move(*s));
    }
  }

  for (const auto& g : scene.zone.glazings()) {
    if (dot(beam.vec(), g.polygon.normal().vec()) <= 0.0) continue;  // beam hits the inside face
    const auto part = above(g.polygon);
    if (!part) continue;
    const auto image = project_polygon(*part, beam, target);
    if (!image) continue;
    for (const auto& floor : floors) {
      std::vector<Polygon> pieces = clip_polygon(*image, floor);
      for (const auto& shadow : shadows) {
        if (pieces.empty()) break;
        pieces = subtract_polygon(pieces, shadow);
      }
      for (auto& p : pieces) spots.push_back({g.id, g.transmittance, std::move(p)});
    }
  }
  return spots;
}

std::vector<Sunspot> sunspot(const Scene& scene, const SunState& sun) {
  const Surface* floor = scene.zone.floors().front();
  return sunspot_on_plane(scene, sun, floor->polygon.plane().offset / floor->polygon.normal().dz());
}

double direct_illuminance(const Point3& q, std::span<const Sunspot> spots, const SunState& sun) {
  if (!sun.above_horizon() || sun.direct_normal_illuminance <= 0.0) return 0.0;
  double e = 0.0;
  std::vector<const std::string*> lit;
  for (const auto& s : spots) {
    if (std::abs(point_plane_distance(q, s.polygon.plane())) > planarity_tol) continue;
    if (std::find_if(lit.begin(), lit.end(), [&](const std::string* id) { return *id == s.glazing_id; }) != lit.end()) {
      continue;  // pieces of one glazing's spot are disjoint
    }
    if (point_in_polygon(q, s.polygon) != Containment::outside) {
      lit.push_back(&s.glazing_id);
      e += s.transmittance * sun.direct_normal_illuminance * sin_deg(sun.altitude_deg);
    }
  }
  return e;
}

IlluminanceResult illuminance_at(const Scene& scene, const SensorPoint& point, const WeatherSample& sample,
                                 const SunState& sun) {
  const DaylightComponents df = daylight_factor_at(scene, point.position);
  const ExteriorIlluminance ext = split_weather(sample, sun, scene.efficacy);
  SunState lit_sun = sun;
  lit_sun.direct_normal_illuminance = ext.beam_normal;
  double e_direct = 0.0;
  if (ext.beam_normal > 0.0 && sun.above_horizon()) {
    const auto spots = sunspot_on_plane(scene, lit_sun, point.position.z);
    e_direct = direct_illuminance(point.position, spots, lit_sun);
  }
  const double e_diffuse = df.df / 100.0 * ext.diffuse_horizontal;
  return {sample.timestamp, point.id, df, e_diffuse, e_direct, e_diffuse + e_direct};
}

std::vector<IlluminanceResult> simulate(const Scene& scene, std::span<const WeatherSample> weather) {
  if (weather.empty()) throw InputError("weather series is empty");
  const std::vector<SensorPoint> points = scene.sensor_points();

  std::vector<DaylightComponents> df(points.size());
  parallel_for(points.size(), [&](std::size_t i) { df[i] = daylight_factor_at(scene, points[i].position); });

  std::vector<IlluminanceResult> rows(weather.size() * points.size());
  parallel_for(weather.size(), [&](std::size_t t) {
    const WeatherSample& sample = weather[t];
    const SolarPosition pos = solar_position(scene.site, sample.timestamp);
    SunState sun{pos.altitude_deg, pos.azimuth_deg, 0.0};
    const ExteriorIlluminance ext = split_weather(sample, sun, scene.efficacy);
    sun.direct_normal_illuminance = ext.beam_normal;

    std::map<double, std::vector<Sunspot>> spots_by_height;
    for (std::size_t i = 0; i < points.size(); ++i) {
      const Point3& q = points[i].position;
      double e_direct = 0.0;
      if (ext.beam_normal > 0.0 && sun.above_horizon()) {
        auto it = spots_by_height.find(q.z);
        if (it == spots_by_height.end()) it = spots_by_height.emplace(q.z, sunspot_on_plane(scene, sun, q.z)).first;
        e_direct = direct_illuminance(q, it->second, sun);
      }
      const double e_diffuse = df[i].df / 100.0 * ext.diffuse_horizontal;
      rows[t * points.size() + i] = {sample.timestamp, points[i].id, df[i], e_diffuse, e_direct, e_diffuse + e_direct};
    }
  });
  return rows;
}

ValidationReport validate(std::span<const IlluminanceResult> simulated, std::span<const Measurement> measured) {
  std::map<std::string, std::vector<std::pair<Timestamp, double>>> by_point;
  for (const auto& r : simulated) by_point[r.point_id].emplace_back(r.timestamp, r.e_total);
  for (auto& [id, series] : by_point) std::sort(series.begin(), series.end());

  struct Sums {
    double residual = 0.0;
    double residual2 = 0.0;
    double measured = 0.0;
    std::size_t n = 0;
  };
  std::map<std::string, Sums> sums;
  ValidationReport report;
  const auto tolerance = std::chrono::duration<double>(match_tolerance_s);

  for (const auto& m : measured) {
    const auto it = by_point.find(m.point_id);
    if (it == by_point.end()) {
      ++report.unmatched;
      continue;
    }
    const auto& series = it->second;
    auto pos = std::lower_bound(series.begin(), series.end(), m.timestamp,
                                [](const auto& entry, Timestamp t) { return entry.first < t; });
    const std::pair<Timestamp, double>* best = nullptr;
    for (auto cand : {pos, pos == series.begin() ? series.end() : std::prev(pos)}) {
      if (cand == series.end()) continue;
      if (best == nullptr || std::chrono::abs(cand->first - m.timestamp) < std::chrono::abs(best->first - m.timestamp)) {
        best = &*cand;
      }
    }
    if (best == nullptr || std::chrono::abs(best->first - m.timestamp) > tolerance) {
      ++report.unmatched;
      continue;
    }
    Sums& s = sums[m.point_id];
    const double r = best->second - m.illuminance;
    s.residual += r;
    s.residual2 += r * r;
    s.measured += m.illuminance;
    ++s.n;
    ++report.matched;
  }
  if (report.matched == 0) throw ValidationError("no measurement matched a simulated (timestamp, point) pair");

  for (const auto& [id, s] : sums) {
    const double n = static_cast<double>(s.n);
    ErrorMetrics e;
    e.n = s.n;
    e.mbe = s.residual / n;
    e.rmse = std::sqrt(s.residual2 / n);
    const double mean = s.measured / n;
    if (mean > 0.0) {
      e.rmse_rel = e.rmse / mean;
    } else {
      e.rmse_rel = e.rmse == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    }
    report.per_point.emplace(id, e);
  }
  return report;
}

void write_results_csv(std::ostream& out, std::span<const IlluminanceResult> results) {
  out << results_header << '\n';
  std::string line;
  for (const auto& r : results) {
    line = fmt::format("{},{},{:.4f},{:.4f},{:.4f},{:.4f},{:.4f},{:.4f},{:.4f}\n", format_timestamp(r.timestamp),
                       r.point_id, r.components.sc, r.components.erc, r.components.irc, r.components.df, r.e_diffuse,
                       r.e_direct, r.e_total);
    out << line;
  }
}

void write_metrics_report(std::ostream& out, const ValidationReport& report) {
  out << metrics_header << '\n';
  for (const auto& [id, e] : report.per_point) {
    out << fmt::format("{},{},{:.4f},{:.4f},{:.4f}\n", id, e.n, e.mbe, e.rmse, e.rmse_rel);
  }
}

}  // namespace daylit
