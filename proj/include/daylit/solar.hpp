#pragma once

// Sun position for a site and local civil time.

#include <chrono>
#include <string>
#include <string_view>

#include "daylit/geometry.hpp"

namespace daylit {

// Local civil (standard) time at the site, to the second.
using Timestamp = std::chrono::local_seconds;

// Parses "YYYY-MM-DDTHH:MM[:SS]" (a space may replace the T).
// Throws ParseError.
Timestamp parse_timestamp(std::string_view text);
std::string format_timestamp(Timestamp t);

struct Site {
  double latitude_deg = 0.0;   // positive north
  double longitude_deg = 0.0;  // positive east
  double tz_offset_h = 0.0;    // local standard time minus UTC
  double albedo = 0.2;

  // Throws ValidationError naming the offending field.
  void validate() const;
};

struct SolarPosition {
  double altitude_deg;
  double azimuth_deg;  // clockwise from north, [0, 360)
};

struct SunState {
  double altitude_deg = -90.0;
  double azimuth_deg = 0.0;
  double direct_normal_illuminance = 0.0;  // lux

  bool above_horizon() const { return altitude_deg > 0.0; }
};

// Apparent sunrise/sunset horizon, accounting for refraction and the disc.
inline constexpr double sunrise_altitude_deg = -0.833;

// Astronomical Almanac low-precision formulas (mean longitude, anomaly,
// sidereal time), good to about 0.01 deg. Years 1950-2100; throws InputError
// outside that range.
SolarPosition solar_position(const Site& site, Timestamp t);

// Beam propagation direction (from the sun toward the scene). North is +y,
// east is +x.
Direction3 sun_direction(double altitude_deg, double azimuth_deg);

// Inverse of sun_direction.
SolarPosition direction_to_angles(const Direction3& beam);

}  // namespace daylit
