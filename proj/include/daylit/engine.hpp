#pragma once

// Per-point illuminance: cached daylight factors for diffuse light, the
// projected sunspot for beam light, time-series simulation and comparison
// against measurements.

#include <map>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "daylit/scene.hpp"
#include "daylit/weather.hpp"

namespace daylit {

struct IlluminanceResult {
  Timestamp timestamp;
  std::string point_id;
  DaylightComponents components;
  double e_diffuse = 0.0;  // lux
  double e_direct = 0.0;
  double e_total = 0.0;
};

struct Sunspot {
  std::string glazing_id;
  double transmittance;
  Polygon polygon;
};

// Sum of SC, ERC and IRC over all glazings at q, for the CIE overcast sky.
// Throws ValidationError when q is outside the zone.
DaylightComponents daylight_factor_at(const Scene& scene, const Point3& q);

// Beam patches on the floor, one or more pieces per sunlit glazing.
std::vector<Sunspot> sunspot(const Scene& scene, const SunState& sun);

// Same, on the horizontal plane at height z with the floor outline lifted
// to it (the work plane of a sensor).
std::vector<Sunspot> sunspot_on_plane(const Scene& scene, const SunState& sun, double z);

// Beam illuminance on a horizontal sensor at q given the sunspots on its
// plane.
double direct_illuminance(const Point3& q, std::span<const Sunspot> spots, const SunState& sun);

IlluminanceResult illuminance_at(const Scene& scene, const SensorPoint& point, const WeatherSample& sample,
                                 const SunState& sun);

// One row per (sample, sensor), samples in input order. Daylight factors
// are computed once per sensor. Throws InputError on an empty series.
std::vector<IlluminanceResult> simulate(const Scene& scene, std::span<const WeatherSample> weather);

inline constexpr double match_tolerance_s = 30.0;

struct ErrorMetrics {
  double mbe = 0.0;       // lux, simulated - measured
  double rmse = 0.0;      // lux
  double rmse_rel = 0.0;  // fraction of the measured mean
  std::size_t n = 0;
};

struct ValidationReport {
  std::map<std::string, ErrorMetrics> per_point;
  std::size_t matched = 0;
  std::size_t unmatched = 0;
};

// Pairs each measurement with the simulated row of the same point closest
// in time (within match_tolerance_s). Throws ValidationError when nothing
// matches.
ValidationReport validate(std::span<const IlluminanceResult> simulated, std::span<const Measurement> measured);

inline constexpr std::string_view results_header =
    "timestamp,point_id,sc_pct,erc_pct,irc_pct,df_pct,e_diffuse_lux,e_direct_lux,e_total_lux";
inline constexpr std::string_view metrics_header = "point_id,n,mbe_lux,rmse_lux,rmse_rel";

void write_results_csv(std::ostream& out, std::span<const IlluminanceResult> results);
void write_metrics_report(std::ostream& out, const ValidationReport& report);

}  // namespace daylit
