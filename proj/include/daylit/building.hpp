#pragma once

// Single-zone building model: bounding surfaces with reflectances, glazed
// apertures and exterior obstructions.

#include <string>
#include <vector>

#include "daylit/geometry.hpp"

namespace daylit {

enum class SurfaceKind { floor, ceiling, wall };

const char* to_string(SurfaceKind k);
SurfaceKind surface_kind_from(const std::string& s);  // throws ParseError

struct Surface {
  std::string id;
  Polygon polygon;
  double reflectance;
  SurfaceKind kind;
};

struct Glazing {
  std::string id;
  Polygon polygon;  // normal points into the zone
  double transmittance;
  std::string host_surface;
};

struct Obstruction {
  std::string id;
  Polygon polygon;
  double reflectance;
};

inline constexpr double closure_gap_tol = 1e-3;    // m, silent
inline constexpr double closure_gap_limit = 1e-2;  // m, above this the zone is rejected

// Validated zone. Surface and glazing polygons are reoriented so their
// normals face the zone interior. Throws ValidationError.
class Zone {
 public:
  Zone(std::vector<Surface> surfaces, std::vector<Glazing> glazings);

  const std::vector<Surface>& surfaces() const { return surfaces_; }
  const std::vector<Glazing>& glazings() const { return glazings_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  double total_area() const { return total_area_; }
  double mean_reflectance() const { return mean_reflectance_; }
  // Largest surface-boundary gap found by edge matching.
  double closure_gap() const { return closure_gap_; }

  std::vector<const Surface*> floors() const;
  const Surface* find_surface(const std::string& id) const;

  double min_z() const { return min_z_; }
  double max_z() const { return max_z_; }

  // Vertical projection of q falls on a floor and q lies between the lowest
  // and highest vertex of the zone.
  bool contains(const Point3& q) const;

 private:
  std::vector<Surface> surfaces_;
  std::vector<Glazing> glazings_;
  std::vector<std::string> warnings_;
  double total_area_ = 0.0;
  double mean_reflectance_ = 0.0;
  double closure_gap_ = 0.0;
  double min_z_ = 0.0;
  double max_z_ = 0.0;
};

}  // namespace daylit
