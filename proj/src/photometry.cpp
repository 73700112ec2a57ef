#include "daylit/photometry.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "daylit/error.hpp"

namespace daylit {

void EfficacySet::validate() const {
  const std::pair<const char*, double> fields[] = {
      {"k_diffuse", k_diffuse}, {"k_beam", k_beam}, {"k_global", k_global}};
  for (const auto& [name, v] : fields) {
    if (!(v >= 0.0 && v <= max_efficacy)) {
      throw ValidationError(fmt::format("efficacy.{} {} outside [0, {}] lm/W", name, v, max_efficacy));
    }
  }
}

double to_illuminance(double irradiance, double efficacy) {
  if (!(irradiance >= 0.0)) throw InputError(fmt::format("irradiance {} W/m2 is negative", irradiance));
  return efficacy * irradiance;
}

ExteriorIlluminance split_weather(const WeatherSample& sample, const SunState& sun, const EfficacySet& k) {
  if (!(sample.dhi >= 0.0) || !(sample.ghi >= 0.0)) {
    throw InputError(fmt::format("negative irradiance (GHI {}, DHI {})", sample.ghi, sample.dhi));
  }
  if (sample.dhi > sample.ghi) {
    throw ValidationError(fmt::format("inconsistent weather: DHI {} exceeds GHI {}", sample.dhi, sample.ghi));
  }
  const double e_dh = to_illuminance(sample.dhi, k.k_diffuse);
  double e_bn = 0.0;
  if (sun.altitude_deg > beam_cutoff_altitude_deg) {
    const double beam_horizontal = sample.ghi - sample.dhi;
    e_bn = to_illuminance(beam_horizontal, k.k_beam) / std::sin(sun.altitude_deg * std::numbers::pi / 180.0);
  }
  return {e_dh, e_bn};
}

double point_source_illuminance(const PointSource& src, const Point3& q, const Direction3& surface_normal) {
  const Vec3 to_source = src.position - q;
  const double d2 = dot(to_source, to_source);
  if (!(d2 > 0.0)) {
    throw GeometryError(GeometryError::Kind::Degenerate, "illuminance point coincides with the point source");
  }
  const double cos_theta = dot(to_source, surface_normal.vec()) / std::sqrt(d2);
  if (cos_theta <= 0.0) return 0.0;
  return src.intensity * cos_theta / d2;
}

}  // namespace daylit
