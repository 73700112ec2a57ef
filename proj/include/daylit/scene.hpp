#pragma once

// Scene description: site, zone, exterior obstructions, sensors and run
// options, loaded from a JSON scene file (comments allowed).

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "daylit/building.hpp"
#include "daylit/photometry.hpp"
#include "daylit/sky.hpp"
#include "daylit/solar.hpp"

namespace daylit {

struct SensorPoint {
  std::string id;
  Point3 position;
};

struct GridSpec {
  double height_m = 0.85;
  double spacing_m = 0.5;
  double margin_m = 0.0;
};

struct SceneOptions {
  int patch_n = 16;
  double obstruction_luminance_factor = 0.2;
  bool enable_overhang_shading = false;
};

struct Scene {
  Site site;
  Zone zone;
  std::vector<Obstruction> obstructions;
  std::variant<std::vector<SensorPoint>, GridSpec> sensors;
  EfficacySet efficacy;
  SceneOptions options;

  // Explicit points, or the expanded grid.
  std::vector<SensorPoint> sensor_points() const;
  QuadratureOptions quadrature() const;
};

// Throws ParseError for syntax or schema problems and ValidationError for
// invariant violations; messages name the offending element by path.
Scene parse_scene(std::string_view text);
std::string serialize_scene(const Scene& scene);

// Regular grid over the floor footprint, ids P_<row>_<col> (rows along y).
// Points on the footprint outline are dropped.
// Throws ValidationError when the grid is empty or spacing is not positive.
std::vector<SensorPoint> expand_grid(const Zone& zone, const GridSpec& grid);

// Reads a whole file; throws std::runtime_error when unreadable.
std::string read_file(const std::filesystem::path& path);

}  // namespace daylit
