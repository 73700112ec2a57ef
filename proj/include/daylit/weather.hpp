#pragma once

// Weather and measurement time series (CSV ingestion).

#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "daylit/solar.hpp"

namespace daylit {

struct WeatherSample {
  Timestamp timestamp;
  double ghi = 0.0;  // global horizontal irradiance, W/m2
  double dhi = 0.0;  // diffuse horizontal irradiance, W/m2
  std::optional<double> global_illuminance;  // measured exterior, lux
};

struct Measurement {
  Timestamp timestamp;
  std::string point_id;
  double illuminance;  // lux
};

inline constexpr std::string_view weather_header = "timestamp,ghi_wm2,dhi_wm2,eg_lux";
inline constexpr std::string_view measurement_header = "timestamp,point_id,e_lux";

// Malformed rows throw ParseError, DHI > GHI or out-of-order timestamps
// throw ValidationError; messages carry the 1-based line number.
std::vector<WeatherSample> parse_weather(std::string_view text);
std::vector<Measurement> parse_measurements(std::string_view text);

std::string serialize_weather(const std::vector<WeatherSample>& samples);

}  // namespace daylit
