#include "daylit/solar.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "daylit/error.hpp"

namespace daylit {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

int parse_field(std::string_view text, std::size_t pos, std::size_t len, std::string_view whole) {
  int value = 0;
  const char* first = text.data() + pos;
  const char* last = first + len;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) throw ParseError(fmt::format("malformed timestamp '{}'", whole));
  return value;
}

double wrap360(double deg) {
  double r = std::fmod(deg, 360.0);
  if (r < 0.0) r += 360.0;
  return r >= 360.0 ? 0.0 : r;
}

}  // namespace

Timestamp parse_timestamp(std::string_view text) {
  using namespace std::chrono;
  // YYYY-MM-DDTHH:MM or YYYY-MM-DDTHH:MM:SS
  const bool has_seconds = text.size() == 19;
  if ((text.size() != 16 && !has_seconds) || text[4] != '-' || text[7] != '-' ||
      (text[10] != 'T' && text[10] != ' ') || text[13] != ':' || (has_seconds && text[16] != ':')) {
    throw ParseError(fmt::format("malformed timestamp '{}'", text));
  }
  const int y = parse_field(text, 0, 4, text);
  const int mo = parse_field(text, 5, 2, text);
  const int d = parse_field(text, 8, 2, text);
  const int h = parse_field(text, 11, 2, text);
  const int mi = parse_field(text, 14, 2, text);
  const int s = has_seconds ? parse_field(text, 17, 2, text) : 0;
  const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
  if (!ymd.ok() || h > 23 || mi > 59 || s > 59) throw ParseError(fmt::format("invalid timestamp '{}'", text));
  return local_days{ymd} + hours{h} + minutes{mi} + seconds{s};
}

std::string format_timestamp(Timestamp t) {
  using namespace std::chrono;
  const auto day_start = floor<days>(t);
  const year_month_day ymd{day_start};
  const hh_mm_ss hms{t - day_start};
  return fmt::format("{:04d}-{:02d}-{:02d}T{:02d}:{:02d}:{:02d}", static_cast<int>(ymd.year()),
                     static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()), hms.hours().count(),
                     hms.minutes().count(), hms.seconds().count());
}

void Site::validate() const {
  if (!(latitude_deg >= -90.0 && latitude_deg <= 90.0)) {
    throw ValidationError(fmt::format("site.latitude_deg {} outside [-90, 90]", latitude_deg));
  }
  if (!(longitude_deg >= -180.0 && longitude_deg <= 180.0)) {
    throw ValidationError(fmt::format("site.longitude_deg {} outside [-180, 180]", longitude_deg));
  }
  if (!(albedo >= 0.0 && albedo <= 1.0)) throw ValidationError(fmt::format("site.albedo {} outside [0, 1]", albedo));
  if (!(tz_offset_h >= -14.0 && tz_offset_h <= 14.0)) {
    throw ValidationError(fmt::format("site.tz_offset_h {} outside [-14, 14]", tz_offset_h));
  }
}

SolarPosition solar_position(const Site& site, Timestamp t) {
  using namespace std::chrono;
  const auto day_start = floor<days>(t);
  const year_month_day ymd{day_start};
  const int yr = static_cast<int>(ymd.year());
  if (yr < 1950 || yr > 2100) throw InputError(fmt::format("timestamp year {} outside 1950-2100", yr));

  // Days from J2000.0 (2000-01-01 12:00 UT).
  const auto utc = t - duration_cast<seconds>(duration<double, std::ratio<3600>>(site.tz_offset_h));
  const double n = duration<double, days::period>(utc - (local_days{year{2000} / January / 1} + hours{12})).count();

  const double mean_long = wrap360(280.460 + 0.9856474 * n);
  const double anomaly = wrap360(357.528 + 0.9856003 * n) * kDeg;
  const double ecl_long = (mean_long + 1.915 * std::sin(anomaly) + 0.020 * std::sin(2.0 * anomaly)) * kDeg;
  const double obliquity = (23.439 - 0.0000004 * n) * kDeg;
  const double ra = std::atan2(std::cos(obliquity) * std::sin(ecl_long), std::cos(ecl_long));
  const double decl = std::asin(std::sin(obliquity) * std::sin(ecl_long));

  const double gmst_h = 6.697375 + 0.0657098242 * n + duration<double, std::ratio<3600>>(utc - floor<days>(utc)).count();
  const double lmst_deg = wrap360(gmst_h * 15.0 + site.longitude_deg);
  double ha_deg = lmst_deg - ra / kDeg;
  ha_deg = std::remainder(ha_deg, 360.0);
  const double hour_angle = ha_deg * kDeg;
  const double lat = site.latitude_deg * kDeg;

  const double sin_alt =
      std::sin(lat) * std::sin(decl) + std::cos(lat) * std::cos(decl) * std::cos(hour_angle);
  const double altitude = std::asin(std::clamp(sin_alt, -1.0, 1.0)) / kDeg;

  const double east = -std::cos(decl) * std::sin(hour_angle);
  const double north = std::cos(lat) * std::sin(decl) - std::sin(lat) * std::cos(decl) * std::cos(hour_angle);
  const double azimuth = (east == 0.0 && north == 0.0) ? 0.0 : wrap360(std::atan2(east, north) / kDeg);
  return {altitude, azimuth};
}

Direction3 sun_direction(double altitude_deg, double azimuth_deg) {
  const double alt = altitude_deg * kDeg;
  const double az = azimuth_deg * kDeg;
  const double horiz = std::cos(alt);
  return Direction3(-horiz * std::sin(az), -horiz * std::cos(az), -std::sin(alt));
}

SolarPosition direction_to_angles(const Direction3& beam) {
  const Vec3 to_sun = -beam.vec();
  const double altitude = std::asin(std::clamp(to_sun.z, -1.0, 1.0)) / kDeg;
  const double horiz = std::hypot(to_sun.x, to_sun.y);
  const double azimuth = horiz > 0.0 ? wrap360(std::atan2(to_sun.x, to_sun.y) / kDeg) : 0.0;
  return {altitude, azimuth};
}

}  // namespace daylit
