#pragma once

// NOAA solar calculator (Meeus-based spreadsheet formulation), geometric
// elevation without refraction. Reference for the solar tests.

#include <chrono>
#include <cmath>
#include <numbers>

namespace oracle {

struct NoaaSun {
  double elevation_deg;
  double azimuth_deg;
};

inline NoaaSun noaa_sun(double lat, double lon, double tz, std::chrono::local_seconds local) {
  using namespace std::chrono;
  constexpr double d2r = std::numbers::pi / 180.0;
  const auto utc = sys_seconds{local.time_since_epoch()} - duration_cast<seconds>(duration<double, std::ratio<3600>>(tz));
  const double jd =
      2451545.0 + duration<double, days::period>(utc - (sys_days{year{2000} / January / 1} + hours{12})).count();
  const double jc = (jd - 2451545.0) / 36525.0;

  const double l0 = std::fmod(280.46646 + jc * (36000.76983 + jc * 0.0003032), 360.0);
  const double m = 357.52911 + jc * (35999.05029 - 0.0001537 * jc);
  const double e = 0.016708634 - jc * (0.000042037 + 0.0000001267 * jc);
  const double c = std::sin(m * d2r) * (1.914602 - jc * (0.004817 + 0.000014 * jc)) +
                   std::sin(2 * m * d2r) * (0.019993 - 0.000101 * jc) + std::sin(3 * m * d2r) * 0.000289;
  const double true_long = l0 + c;
  const double omega = 125.04 - 1934.136 * jc;
  const double app_long = true_long - 0.00569 - 0.00478 * std::sin(omega * d2r);
  const double mean_obliq = 23.0 + (26.0 + (21.448 - jc * (46.815 + jc * (0.00059 - jc * 0.001813))) / 60.0) / 60.0;
  const double obliq = mean_obliq + 0.00256 * std::cos(omega * d2r);
  const double decl = std::asin(std::sin(obliq * d2r) * std::sin(app_long * d2r));

  const double y = std::pow(std::tan(obliq * d2r / 2.0), 2);
  const double eot = 4.0 / d2r *
                     (y * std::sin(2 * l0 * d2r) - 2 * e * std::sin(m * d2r) +
                      4 * e * y * std::sin(m * d2r) * std::cos(2 * l0 * d2r) - 0.5 * y * y * std::sin(4 * l0 * d2r) -
                      1.25 * e * e * std::sin(2 * m * d2r));

  const auto day_start = floor<days>(local);
  const double minutes = duration<double, std::ratio<60>>(local - day_start).count();
  const double tst = std::fmod(minutes + eot + 4.0 * lon - 60.0 * tz + 1440.0 * 4, 1440.0);
  const double ha = tst / 4.0 < 0 ? tst / 4.0 + 180.0 : tst / 4.0 - 180.0;

  const double latr = lat * d2r;
  const double cos_zen = std::sin(latr) * std::sin(decl) + std::cos(latr) * std::cos(decl) * std::cos(ha * d2r);
  const double zen = std::acos(std::fmax(-1.0, std::fmin(1.0, cos_zen)));
  const double az_arg = (std::sin(latr) * std::cos(zen) - std::sin(decl)) / (std::cos(latr) * std::sin(zen));
  const double az_base = std::acos(std::fmax(-1.0, std::fmin(1.0, az_arg))) / d2r;
  const double az = ha > 0 ? std::fmod(az_base + 180.0, 360.0) : std::fmod(540.0 - az_base, 360.0);
  return {90.0 - zen / d2r, az};
}

}  // namespace oracle
