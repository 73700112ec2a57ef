#include "daylit/sky.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include <fmt/format.h>

#include "daylit/error.hpp"

namespace daylit {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDeg = kPi / 180.0;

// What the ray from the reference point through a glazing patch reaches.
struct Target {
  enum class Kind { sky, ground, obstruction } kind;
  std::size_t obstruction = 0;

  bool operator==(const Target&) const = default;
};

Target classify(const Point3& q, const Vec3& dir, std::span<const Obstruction> obstructions) {
  double nearest = std::numeric_limits<double>::max();
  std::optional<std::size_t> hit;
  for (std::size_t i = 0; i < obstructions.size(); ++i) {
    if (auto t = ray_hit(q, dir, obstructions[i].polygon); t && *t < nearest) {
      nearest = *t;
      hit = i;
    }
  }
  if (hit) return {Target::Kind::obstruction, *hit};
  return {dir.z > 0.0 ? Target::Kind::sky : Target::Kind::ground, 0};
}

struct Quadrature {
  const Point3& q;
  const Glazing& glazing;
  std::span<const Obstruction> obstructions;
  const SkyCondition& sky;
  const QuadratureOptions& opts;
  PlaneFrame frame;
  double lz_per_lux;  // zenith luminance per lux of E_dh
  double sc = 0.0;    // before the 100 tau factor
  double erc = 0.0;

  Polygon cell(double u0, double u1, double v0, double v1) const {
    return Polygon({frame.at(u0, v0), frame.at(u1, v0), frame.at(u1, v1), frame.at(u0, v1)},
                   glazing.polygon.normal().vec());
  }

  Vec3 ray_to(const Point3& p) const {
    const Vec3 d = p - q;
    return d / norm(d);
  }

  void accumulate(const Polygon& piece, double omega) {
    const Vec3 dir = ray_to(piece.centroid());
    const double cos_incidence = dir.z;
    const Target t = classify(q, dir, obstructions);
    switch (t.kind) {
      case Target::Kind::sky: {
        const double gamma = std::asin(std::clamp(dir.z, -1.0, 1.0)) / kDeg;
        sc += sky_luminance(sky.model, gamma, lz_per_lux) * cos_incidence * omega;
        break;
      }
      case Target::Kind::obstruction:
        erc += opts.obstruction_luminance_factor * obstructions[t.obstruction].reflectance / kPi *
               std::max(cos_incidence, 0.0) * omega;
        break;
      case Target::Kind::ground:
        erc += opts.albedo / kPi * std::max(cos_incidence, 0.0) * omega;
        break;
    }
  }

  void integrate(double u0, double u1, double v0, double v1, int depth) {
    const Polygon rect = cell(u0, u1, v0, v1);
    const std::vector<Polygon> pieces = clip_polygon(rect, glazing.polygon);
    if (pieces.empty()) return;

    std::vector<double> omegas;
    double omega_total = 0.0;
    for (const auto& p : pieces) {
      omegas.push_back(solid_angle(q, p));
      omega_total += omegas.back();
    }

    bool refine = false;
    if (depth < opts.max_refine_depth) {
      refine = omega_total > opts.max_patch_sr;
      if (!refine) {
        const Target ref = classify(q, ray_to(pieces.front().centroid()), obstructions);
        for (const auto& corner : rect.vertices()) {
          if (!(classify(q, ray_to(corner), obstructions) == ref)) {
            refine = true;
            break;
          }
        }
      }
    }
    if (refine) {
      const double um = 0.5 * (u0 + u1);
      const double vm = 0.5 * (v0 + v1);
      integrate(u0, um, v0, vm, depth + 1);
      integrate(um, u1, v0, vm, depth + 1);
      integrate(u0, um, vm, v1, depth + 1);
      integrate(um, u1, vm, v1, depth + 1);
      return;
    }
    for (std::size_t i = 0; i < pieces.size(); ++i) accumulate(pieces[i], omegas[i]);
  }
};

}  // namespace

double sky_luminance(SkyModel model, double gamma_deg, double lz) {
  switch (model) {
    case SkyModel::cie_overcast: return lz * (1.0 + 2.0 * std::sin(gamma_deg * kDeg)) / 3.0;
    case SkyModel::uniform: return lz;
  }
  return lz;
}

double zenith_luminance(SkyModel model, double e_dh) {
  switch (model) {
    case SkyModel::cie_overcast: return 9.0 * e_dh / (7.0 * kPi);
    case SkyModel::uniform: return e_dh / kPi;
  }
  return e_dh / kPi;
}

WindowComponents window_components(const Point3& q, const Glazing& glazing, std::span<const Obstruction> obstructions,
                                   const SkyCondition& sky, const QuadratureOptions& opts) {
  const Polygon& poly = glazing.polygon;
  if (std::abs(point_plane_distance(q, poly.plane())) < planarity_tol) {
    throw GeometryError(GeometryError::Kind::Degenerate,
                        fmt::format("reference point lies in the plane of glazing '{}'", glazing.id));
  }
  if (opts.patch_n < 1) throw InputError("patch_n must be at least 1");

  Quadrature quad{q, glazing, obstructions, sky, opts, PlaneFrame::of(poly.plane(), poly[0]),
                  zenith_luminance(sky.model, 1.0)};

  double u_lo = std::numeric_limits<double>::max(), v_lo = u_lo;
  double u_hi = std::numeric_limits<double>::lowest(), v_hi = u_hi;
  for (const auto& p : poly.vertices()) {
    u_lo = std::min(u_lo, quad.frame.u_of(p));
    u_hi = std::max(u_hi, quad.frame.u_of(p));
    v_lo = std::min(v_lo, quad.frame.v_of(p));
    v_hi = std::max(v_hi, quad.frame.v_of(p));
  }
  const int n = opts.patch_n;
  const double du = (u_hi - u_lo) / n;
  const double dv = (v_hi - v_lo) / n;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double u0 = u_lo + i * du;
      const double v0 = v_lo + j * dv;
      quad.integrate(u0, i + 1 == n ? u_hi : u0 + du, v0, j + 1 == n ? v_hi : v0 + dv, 0);
    }
  }
  const double scale = 100.0 * glazing.transmittance;
  return {scale * quad.sc, scale * quad.erc};
}

double sky_component(const Point3& q, const Glazing& glazing, std::span<const Obstruction> obstructions,
                     const SkyCondition& sky, const QuadratureOptions& opts) {
  return window_components(q, glazing, obstructions, sky, opts).sc;
}

double externally_reflected_component(const Point3& q, const Glazing& glazing,
                                      std::span<const Obstruction> obstructions, const SkyCondition& sky,
                                      const QuadratureOptions& opts) {
  return window_components(q, glazing, obstructions, sky, opts).erc;
}

double obstruction_coefficient(double obstruction_angle_deg) {
  static constexpr std::array<double, 9> kTable{39, 35, 31, 25, 20, 14, 10, 7, 5};  // every 10 deg from 0
  if (!(obstruction_angle_deg > 0.0)) return kTable.front();
  const double pos = obstruction_angle_deg / 10.0;
  const auto i = static_cast<std::size_t>(pos);
  if (i + 1 >= kTable.size()) return kTable.back();
  const double frac = pos - static_cast<double>(i);
  return kTable[i] + frac * (kTable[i + 1] - kTable[i]);
}

double split_flux_irc(const SplitFluxInputs& in) {
  if (!(in.total_area > 0.0)) throw ValidationError("room surface area must be positive");
  if (!(in.mean_reflectance < 1.0)) {
    throw ValidationError(fmt::format("mean reflectance {} is non-physical (must be < 1)", in.mean_reflectance));
  }
  if (in.glazing_area <= 0.0) return 0.0;
  return in.transmittance * in.glazing_area / (in.total_area * (1.0 - in.mean_reflectance)) *
         (in.obstruction_coefficient * in.lower_reflectance + in.ground_coefficient * in.upper_reflectance);
}

ReflectanceSplit split_reflectance(const Zone& zone, double cut_z) {
  const Plane below{Direction3(0, 0, -1), -cut_z};
  const Plane above{Direction3(0, 0, 1), cut_z};
  double lower_area = 0.0, lower_sum = 0.0, upper_area = 0.0, upper_sum = 0.0;
  for (const auto& s : zone.surfaces()) {
    switch (s.kind) {
      case SurfaceKind::floor:
        lower_area += s.polygon.area();
        lower_sum += s.reflectance * s.polygon.area();
        break;
      case SurfaceKind::ceiling:
        upper_area += s.polygon.area();
        upper_sum += s.reflectance * s.polygon.area();
        break;
      case SurfaceKind::wall:
        if (auto part = clip_to_halfspace(s.polygon, below)) {
          lower_area += part->area();
          lower_sum += s.reflectance * part->area();
        }
        if (auto part = clip_to_halfspace(s.polygon, above)) {
          upper_area += part->area();
          upper_sum += s.reflectance * part->area();
        }
        break;
    }
  }
  return {lower_area > 0.0 ? lower_sum / lower_area : 0.0, upper_area > 0.0 ? upper_sum / upper_area : 0.0};
}

double internally_reflected_component(const Zone& zone, const Glazing& glazing, double obstruction_angle_deg,
                                      double ground_reflectance) {
  double z_lo = std::numeric_limits<double>::max();
  double z_hi = std::numeric_limits<double>::lowest();
  for (const auto& p : glazing.polygon.vertices()) {
    z_lo = std::min(z_lo, p.z);
    z_hi = std::max(z_hi, p.z);
  }
  const ReflectanceSplit split = split_reflectance(zone, 0.5 * (z_lo + z_hi));
  return split_flux_irc({glazing.transmittance, glazing.polygon.area(), zone.total_area(), zone.mean_reflectance(),
                         split.lower, split.upper, obstruction_coefficient(obstruction_angle_deg),
                         50.0 * ground_reflectance});
}

double obstruction_angle(const Glazing& glazing, std::span<const Obstruction> obstructions) {
  const Vec3 outward = -glazing.polygon.normal().vec();
  const Vec3 horizontal{outward.x, outward.y, 0.0};
  if (norm(horizontal) < 1e-6 || obstructions.empty()) return 0.0;
  const Vec3 h = horizontal / norm(horizontal);
  const Point3 c = glazing.polygon.centroid();
  constexpr double step = 0.5;
  for (double e = 0.0; e < 90.0; e += step) {
    const Vec3 dir = std::cos(e * kDeg) * h + Vec3{0, 0, std::sin(e * kDeg)};
    bool blocked = false;
    for (const auto& o : obstructions) {
      if (ray_hit(c, dir, o.polygon)) {
        blocked = true;
        break;
      }
    }
    if (!blocked) return e;
  }
  return 90.0;
}

}  // namespace daylit
