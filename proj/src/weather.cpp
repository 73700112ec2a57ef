#include "daylit/weather.hpp"

#include <charconv>
#include <cmath>

#include <fmt/format.h>

#include "daylit/error.hpp"

namespace daylit {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    out.push_back(trim(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double number(std::string_view field, std::size_t line_no, const char* name) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size() || !std::isfinite(v)) {
    throw ParseError(fmt::format("line {}: {} '{}' is not a number", line_no, name, field));
  }
  return v;
}

Timestamp timestamp(std::string_view field, std::size_t line_no) {
  try {
    return parse_timestamp(field);
  } catch (const ParseError& e) {
    throw ParseError(fmt::format("line {}: {}", line_no, e.what()));
  }
}

// Calls row(fields, line_no) for each data line after checking the header.
template <typename Fn>
void for_each_row(std::string_view text, std::string_view header, std::size_t columns, Fn&& row) {
  std::size_t line_no = 0;
  bool seen_header = false;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = trim(text.substr(start, end - start));
    start = end + 1;
    ++line_no;
    if (line.empty()) continue;
    if (!seen_header) {
      if (line != header) throw ParseError(fmt::format("line {}: expected header '{}'", line_no, header));
      seen_header = true;
      continue;
    }
    const auto fields = split(line, ',');
    if (fields.size() != columns) {
      throw ParseError(fmt::format("line {}: expected {} columns, found {}", line_no, columns, fields.size()));
    }
    row(fields, line_no);
  }
}

}  // namespace

std::vector<WeatherSample> parse_weather(std::string_view text) {
  std::vector<WeatherSample> out;
  for_each_row(text, weather_header, 4, [&](const std::vector<std::string_view>& f, std::size_t line_no) {
    WeatherSample s;
    s.timestamp = timestamp(f[0], line_no);
    s.ghi = number(f[1], line_no, "ghi_wm2");
    s.dhi = number(f[2], line_no, "dhi_wm2");
    if (!f[3].empty()) s.global_illuminance = number(f[3], line_no, "eg_lux");
    if (s.dhi < 0.0 || s.ghi < 0.0) {
      throw ValidationError(fmt::format("line {}: negative irradiance", line_no));
    }
    if (s.dhi > s.ghi) {
      throw ValidationError(fmt::format("line {}: DHI {} exceeds GHI {}", line_no, s.dhi, s.ghi));
    }
    if (s.global_illuminance && *s.global_illuminance < 0.0) {
      throw ValidationError(fmt::format("line {}: negative eg_lux", line_no));
    }
    if (!out.empty() && s.timestamp <= out.back().timestamp) {
      throw ValidationError(fmt::format("line {}: timestamp {} is not after {}", line_no, format_timestamp(s.timestamp),
                                        format_timestamp(out.back().timestamp)));
    }
    out.push_back(s);
  });
  return out;
}

std::vector<Measurement> parse_measurements(std::string_view text) {
  std::vector<Measurement> out;
  for_each_row(text, measurement_header, 3, [&](const std::vector<std::string_view>& f, std::size_t line_no) {
    if (f[1].empty()) throw ParseError(fmt::format("line {}: empty point_id", line_no));
    Measurement m{timestamp(f[0], line_no), std::string(f[1]), number(f[2], line_no, "e_lux")};
    if (m.illuminance < 0.0) throw ValidationError(fmt::format("line {}: negative illuminance", line_no));
    out.push_back(std::move(m));
  });
  return out;
}

std::string serialize_weather(const std::vector<WeatherSample>& samples) {
  std::string out(weather_header);
  out += '\n';
  for (const auto& s : samples) {
    out += fmt::format("{},{},{},", format_timestamp(s.timestamp), s.ghi, s.dhi);
    if (s.global_illuminance) out += fmt::format("{}", *s.global_illuminance);
    out += '\n';
  }
  return out;
}

}  // namespace daylit
