#include "daylit/building.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include <fmt/format.h>

#include "daylit/error.hpp"

namespace daylit {

const char* to_string(SurfaceKind k) {
  switch (k) {
    case SurfaceKind::floor: return "floor";
    case SurfaceKind::ceiling: return "ceiling";
    case SurfaceKind::wall: return "wall";
  }
  return "wall";
}

SurfaceKind surface_kind_from(const std::string& s) {
  if (s == "floor") return SurfaceKind::floor;
  if (s == "ceiling") return SurfaceKind::ceiling;
  if (s == "wall") return SurfaceKind::wall;
  throw ParseError(fmt::format("unknown surface kind '{}' (expected floor, ceiling or wall)", s));
}

namespace {

bool unit_interval(double v) { return v >= 0.0 && v <= 1.0; }

// Boundary gap of one surface against all the others.
double boundary_gap(const Surface& s, const std::vector<Surface>& all) {
  double worst = 0.0;
  const auto& v = s.polygon.vertices();
  for (std::size_t i = 0, n = v.size(); i < n; ++i) {
    const Point3& a = v[i];
    const Point3& b = v[(i + 1) % n];
    for (const Point3& q : {a, 0.5 * (a + b)}) {
      double best = std::numeric_limits<double>::max();
      for (const auto& other : all) {
        if (&other == &s) continue;
        best = std::min(best, point_polygon_distance(q, other.polygon));
      }
      worst = std::max(worst, best);
    }
  }
  return worst;
}

}  // namespace

Zone::Zone(std::vector<Surface> surfaces, std::vector<Glazing> glazings)
    : surfaces_(std::move(surfaces)), glazings_(std::move(glazings)) {
  if (surfaces_.empty()) throw ValidationError("zone has no surfaces");

  std::set<std::string> ids;
  Vec3 sum{};
  std::size_t count = 0;
  min_z_ = std::numeric_limits<double>::max();
  max_z_ = std::numeric_limits<double>::lowest();
  for (const auto& s : surfaces_) {
    if (!ids.insert(s.id).second) throw ValidationError(fmt::format("surface '{}': duplicate id", s.id));
    if (!unit_interval(s.reflectance)) {
      throw ValidationError(fmt::format("surface '{}': reflectance {} outside [0, 1]", s.id, s.reflectance));
    }
    for (const auto& p : s.polygon.vertices()) {
      sum += p;
      ++count;
      min_z_ = std::min(min_z_, p.z);
      max_z_ = std::max(max_z_, p.z);
    }
  }
  const Point3 interior = sum / static_cast<double>(count);

  bool has_floor = false;
  for (auto& s : surfaces_) {
    Vec3 facing = interior - s.polygon.centroid();
    if (s.kind == SurfaceKind::floor) {
      if (std::abs(s.polygon.normal().dz()) < 1.0 - 1e-6) {
        throw ValidationError(fmt::format("surface '{}': floor must be horizontal", s.id));
      }
      facing = {0, 0, 1};
      has_floor = true;
    } else if (s.kind == SurfaceKind::ceiling && std::abs(s.polygon.normal().dz()) > 1e-6) {
      facing = {0, 0, -1};
    }
    if (dot(s.polygon.normal().vec(), facing) < 0.0) s.polygon = s.polygon.reversed();
    total_area_ += s.polygon.area();
    mean_reflectance_ += s.reflectance * s.polygon.area();
  }
  if (!has_floor) throw ValidationError("zone has no floor surface");
  if (!(total_area_ > 0.0)) throw ValidationError("zone surface area is zero");
  mean_reflectance_ /= total_area_;

  std::set<std::string> glazing_ids;
  for (auto& g : glazings_) {
    if (!glazing_ids.insert(g.id).second) throw ValidationError(fmt::format("glazing '{}': duplicate id", g.id));
    if (!unit_interval(g.transmittance)) {
      throw ValidationError(fmt::format("glazing '{}': transmittance {} outside [0, 1]", g.id, g.transmittance));
    }
    const Surface* host = find_surface(g.host_surface);
    if (host == nullptr) {
      throw ValidationError(fmt::format("glazing '{}': unknown host surface '{}'", g.id, g.host_surface));
    }
    for (const auto& p : g.polygon.vertices()) {
      if (std::abs(point_plane_distance(p, host->polygon.plane())) > planarity_tol) {
        throw ValidationError(fmt::format("glazing '{}': not coplanar with host '{}'", g.id, host->id));
      }
      if (point_in_polygon(p, host->polygon) == Containment::outside) {
        throw ValidationError(fmt::format("glazing '{}': extends outside host '{}'", g.id, host->id));
      }
    }
    if (dot(g.polygon.normal().vec(), host->polygon.normal().vec()) < 0.0) g.polygon = g.polygon.reversed();
  }

  if (surfaces_.size() > 1) {
    for (const auto& s : surfaces_) {
      const double gap = boundary_gap(s, surfaces_);
      closure_gap_ = std::max(closure_gap_, gap);
      if (gap > closure_gap_limit) {
        throw ValidationError(
            fmt::format("surface '{}': boundary gap {:.4f} m exceeds {} m, zone is not closed", s.id, gap,
                        closure_gap_limit));
      }
      if (gap > closure_gap_tol) {
        warnings_.push_back(fmt::format("surface '{}': boundary gap {:.4f} m (zone not exactly closed)", s.id, gap));
      }
    }
  } else {
    warnings_.push_back("zone has a single surface and cannot be closed");
  }
}

std::vector<const Surface*> Zone::floors() const {
  std::vector<const Surface*> out;
  for (const auto& s : surfaces_) {
    if (s.kind == SurfaceKind::floor) out.push_back(&s);
  }
  return out;
}

const Surface* Zone::find_surface(const std::string& id) const {
  auto it = std::find_if(surfaces_.begin(), surfaces_.end(), [&](const Surface& s) { return s.id == id; });
  return it == surfaces_.end() ? nullptr : &*it;
}

bool Zone::contains(const Point3& q) const {
  if (q.z < min_z_ - planarity_tol || q.z > max_z_ + planarity_tol) return false;
  for (const Surface* f : floors()) {
    const Plane& pl = f->polygon.plane();
    const Point3 foot{q.x, q.y, pl.offset / pl.normal.dz()};
    if (point_in_polygon(foot, f->polygon) != Containment::outside) return true;
  }
  return false;
}

}  // namespace daylit
