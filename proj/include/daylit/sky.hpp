#pragma once

// Sky luminance and the daylight-factor components: sky component (SC),
// externally reflected component (ERC) and internally reflected
// component (IRC). All components are percentages of the simultaneous
// unobstructed exterior diffuse horizontal illuminance.

#include <span>

#include "daylit/building.hpp"
#include "daylit/geometry.hpp"

namespace daylit {

enum class SkyModel { cie_overcast, uniform };

struct SkyCondition {
  SkyModel model = SkyModel::cie_overcast;
  double diffuse_horizontal_illuminance = 0.0;  // lux, E_dh
};

struct DaylightComponents {
  double sc = 0.0;
  double erc = 0.0;
  double irc = 0.0;
  double df = 0.0;  // always sc + erc + irc

  static DaylightComponents from(double sc, double erc, double irc) { return {sc, erc, irc, sc + erc + irc}; }
  DaylightComponents& operator+=(const DaylightComponents& o) {
    *this = from(sc + o.sc, erc + o.erc, irc + o.irc);
    return *this;
  }
  friend bool operator==(const DaylightComponents&, const DaylightComponents&) = default;
};

// Luminance (cd/m2) at elevation gamma_deg for a sky of zenith luminance lz.
double sky_luminance(SkyModel model, double gamma_deg, double lz);

// Zenith luminance giving horizontal illuminance e_dh from the whole sky.
double zenith_luminance(SkyModel model, double e_dh);

struct QuadratureOptions {
  int patch_n = 16;
  // Patches subtending more than this are split 2x2, as are patches whose
  // corner rays disagree on what they hit.
  double max_patch_sr = 0.005;
  int max_refine_depth = 4;
  double obstruction_luminance_factor = 0.2;
  double albedo = 0.2;
};

struct WindowComponents {
  double sc = 0.0;
  double erc = 0.0;
};

// SC and ERC of one glazing seen from q on a horizontal work plane, in one
// quadrature pass. Throws GeometryError(Degenerate) when q lies in the
// glazing plane.
WindowComponents window_components(const Point3& q, const Glazing& glazing, std::span<const Obstruction> obstructions,
                                   const SkyCondition& sky, const QuadratureOptions& opts = {});

double sky_component(const Point3& q, const Glazing& glazing, std::span<const Obstruction> obstructions,
                     const SkyCondition& sky, const QuadratureOptions& opts = {});

double externally_reflected_component(const Point3& q, const Glazing& glazing,
                                      std::span<const Obstruction> obstructions, const SkyCondition& sky,
                                      const QuadratureOptions& opts = {});

// Obstruction coefficient C, piecewise linear in the obstruction angle
// (degrees above the horizontal seen from the window centre).
double obstruction_coefficient(double obstruction_angle_deg);

struct SplitFluxInputs {
  double transmittance;
  double glazing_area;      // m2
  double total_area;        // m2, all room surfaces
  double mean_reflectance;  // area weighted, all room surfaces
  double lower_reflectance;  // floor and walls below window mid-height
  double upper_reflectance;  // ceiling and walls above window mid-height
  double obstruction_coefficient;
  double ground_coefficient = 5.0;
};

// tau W / (A (1 - R)) * (C R_fw + K R_cw), already in percent.
// Throws ValidationError when R >= 1 or A <= 0.
double split_flux_irc(const SplitFluxInputs& in);

// Ground reflectance for which the ground coefficient is the tabulated 5.
inline constexpr double reference_ground_reflectance = 0.1;

// IRC of one glazing of the zone. R_fw/R_cw split the room at the
// glazing's mid-height; walls straddling it are cut. The ground
// coefficient scales as 50 x ground reflectance.
double internally_reflected_component(const Zone& zone, const Glazing& glazing, double obstruction_angle_deg,
                                      double ground_reflectance = reference_ground_reflectance);

// Reflectances of the zone below and above a horizontal cut.
struct ReflectanceSplit {
  double lower;
  double upper;
};
ReflectanceSplit split_reflectance(const Zone& zone, double cut_z);

// Elevation of the top of the contiguous band of obstruction directly in
// front of the glazing centre, scanning upward from the horizon along the
// outward normal. Zero when the horizon is clear.
double obstruction_angle(const Glazing& glazing, std::span<const Obstruction> obstructions);

}  // namespace daylit
