#pragma once

// Irradiance to illuminance conversion and isotropic point sources.

#include "daylit/geometry.hpp"
#include "daylit/solar.hpp"
#include "daylit/weather.hpp"

namespace daylit {

inline constexpr double max_efficacy = 250.0;  // lm/W

struct EfficacySet {
  double k_diffuse = 120.0;  // lm/W
  double k_beam = 105.0;
  double k_global = 110.0;

  void validate() const;  // throws ValidationError
};

// Below this solar altitude the beam is dropped.
inline constexpr double beam_cutoff_altitude_deg = 3.0;

double to_illuminance(double irradiance, double efficacy);

struct ExteriorIlluminance {
  double diffuse_horizontal;  // lux, E_dh
  double beam_normal;         // lux
};

// Throws ValidationError when DHI > GHI, InputError on negative values.
ExteriorIlluminance split_weather(const WeatherSample& sample, const SunState& sun, const EfficacySet& k);

struct PointSource {
  Point3 position;
  double intensity;  // cd, isotropic
};

// I cos(theta) / d^2 on a surface with the given normal; zero when the
// source is behind the surface. Throws GeometryError when q coincides
// with the source.
double point_source_illuminance(const PointSource& src, const Point3& q, const Direction3& surface_normal);

}  // namespace daylit
