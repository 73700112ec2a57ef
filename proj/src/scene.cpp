#include "daylit/scene.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "daylit/error.hpp"

namespace daylit {

namespace {

using nlohmann::json;

// Path-tracking view over a JSON node.
class Node {
 public:
  Node(const json& j, std::string path) : j_(j), path_(std::move(path)) {}

  const std::string& path() const { return path_; }
  const json& raw() const { return j_; }

  bool has(const char* key) const { return j_.is_object() && j_.contains(key); }

  Node at(const char* key) const {
    if (!j_.is_object()) throw ParseError(fmt::format("{}: expected an object", path_));
    if (!j_.contains(key)) throw ParseError(fmt::format("{}: missing key '{}'", path_, key));
    return {j_.at(key), child(key)};
  }

  std::vector<Node> items() const {
    if (!j_.is_array()) throw ParseError(fmt::format("{}: expected an array", path_));
    std::vector<Node> out;
    for (std::size_t i = 0; i < j_.size(); ++i) out.emplace_back(j_[i], fmt::format("{}[{}]", path_, i));
    return out;
  }

  double number() const {
    if (!j_.is_number()) throw ParseError(fmt::format("{}: expected a number", path_));
    return j_.get<double>();
  }
  std::string string() const {
    if (!j_.is_string()) throw ParseError(fmt::format("{}: expected a string", path_));
    return j_.get<std::string>();
  }
  bool boolean() const {
    if (!j_.is_boolean()) throw ParseError(fmt::format("{}: expected true or false", path_));
    return j_.get<bool>();
  }

  double number(const char* key) const { return at(key).number(); }
  double number_or(const char* key, double fallback) const { return has(key) ? number(key) : fallback; }

 private:
  std::string child(const char* key) const { return path_.empty() ? key : path_ + "." + key; }

  const json& j_;
  std::string path_;
};

Point3 point(const Node& n) {
  const auto xyz = n.items();
  if (xyz.size() != 3) throw ParseError(fmt::format("{}: expected [x, y, z]", n.path()));
  return {xyz[0].number(), xyz[1].number(), xyz[2].number()};
}

Polygon polygon(const Node& n, const std::string& label) {
  std::vector<Point3> pts;
  const Node verts = n.at("vertices");
  for (const auto& v : verts.items()) pts.push_back(point(v));
  try {
    return Polygon(std::move(pts));
  } catch (const GeometryError& e) {
    throw ValidationError(fmt::format("{}: {}", label, e.what()));
  }
}

std::string label(const Node& n, const std::string& id) { return fmt::format("{} ('{}')", n.path(), id); }

double unit_value(const Node& n, const char* key, const std::string& where) {
  const double v = n.number(key);
  if (!(v >= 0.0 && v <= 1.0)) throw ValidationError(fmt::format("{}: {} {} outside [0, 1]", where, key, v));
  return v;
}

json to_json(const Polygon& p) {
  json arr = json::array();
  for (const auto& v : p.vertices()) arr.push_back({v.x, v.y, v.z});
  return arr;
}

}  // namespace

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error(fmt::format("cannot read '{}'", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Scene parse_scene(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end(), nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw ParseError(fmt::format("scene syntax error: {}", e.what()));
  }
  const Node root(doc, "");
  if (!doc.is_object()) throw ParseError("scene: expected a top-level object");

  const Node site_node = root.at("site");
  Site site{site_node.number("latitude_deg"), site_node.number("longitude_deg"),
            site_node.number_or("tz_offset_h", 0.0), site_node.number_or("albedo", 0.2)};
  site.validate();

  const Node zone_node = root.at("zone");
  std::vector<Surface> surfaces;
  std::set<std::string> surface_ids;
  for (const auto& s : zone_node.at("surfaces").items()) {
    const std::string id = s.at("id").string();
    const std::string where = label(s, id);
    if (!surface_ids.insert(id).second) throw ValidationError(fmt::format("{}: duplicate surface id", where));
    SurfaceKind kind;
    try {
      kind = surface_kind_from(s.at("kind").string());
    } catch (const ParseError& e) {
      throw ParseError(fmt::format("{}: {}", where, e.what()));
    }
    const double rho = unit_value(s, "reflectance", where);
    surfaces.push_back({id, polygon(s, where), rho, kind});
  }

  std::vector<Glazing> glazings;
  if (zone_node.has("glazings")) {
    for (const auto& g : zone_node.at("glazings").items()) {
      const std::string id = g.at("id").string();
      const std::string where = label(g, id);
      const double tau = unit_value(g, "transmittance", where);
      glazings.push_back({id, polygon(g, where), tau, g.at("host").string()});
    }
  }

  std::optional<Zone> zone;
  try {
    zone.emplace(std::move(surfaces), std::move(glazings));
  } catch (const ValidationError& e) {
    throw ValidationError(fmt::format("zone: {}", e.what()));
  }

  std::vector<Obstruction> obstructions;
  if (root.has("obstructions")) {
    for (const auto& o : root.at("obstructions").items()) {
      const std::string id = o.at("id").string();
      const std::string where = label(o, id);
      obstructions.push_back({id, polygon(o, where), unit_value(o, "reflectance", where)});
    }
  }

  std::variant<std::vector<SensorPoint>, GridSpec> sensors;
  const Node sensors_node = root.at("sensors");
  if (sensors_node.has("points")) {
    std::vector<SensorPoint> points;
    std::set<std::string> ids;
    for (const auto& p : sensors_node.at("points").items()) {
      SensorPoint sp{p.at("id").string(), {p.number("x"), p.number("y"), p.number("z")}};
      const std::string where = label(p, sp.id);
      if (!ids.insert(sp.id).second) throw ValidationError(fmt::format("{}: duplicate sensor id", where));
      if (!zone->contains(sp.position)) {
        throw ValidationError(fmt::format("{}: point lies outside the zone floor footprint", where));
      }
      points.push_back(std::move(sp));
    }
    sensors = std::move(points);
  } else if (sensors_node.has("grid")) {
    const Node g = sensors_node.at("grid");
    GridSpec grid{g.number("height_m"), g.number("spacing_m"), g.number_or("margin_m", 0.0)};
    if (grid.height_m < 0.0) throw ValidationError(fmt::format("{}: height_m must be >= 0", g.path()));
    if (!(grid.spacing_m > 0.0)) throw ValidationError(fmt::format("{}: spacing_m must be > 0", g.path()));
    if (grid.margin_m < 0.0) throw ValidationError(fmt::format("{}: margin_m must be >= 0", g.path()));
    sensors = grid;
  } else {
    throw ParseError("sensors: expected 'points' or 'grid'");
  }

  EfficacySet efficacy;
  if (root.has("efficacy")) {
    const Node k = root.at("efficacy");
    efficacy = {k.number_or("k_diffuse", efficacy.k_diffuse), k.number_or("k_beam", efficacy.k_beam),
                k.number_or("k_global", efficacy.k_global)};
  }
  efficacy.validate();

  SceneOptions options;
  if (root.has("options")) {
    const Node o = root.at("options");
    if (o.has("patch_n")) {
      const double n = o.number("patch_n");
      if (!(n >= 1.0 && n <= 4096.0) || n != std::floor(n)) {
        throw ValidationError(fmt::format("options.patch_n {} must be an integer in [1, 4096]", n));
      }
      options.patch_n = static_cast<int>(n);
    }
    options.obstruction_luminance_factor =
        o.number_or("obstruction_luminance_factor", options.obstruction_luminance_factor);
    if (options.obstruction_luminance_factor < 0.0) {
      throw ValidationError("options.obstruction_luminance_factor must be >= 0");
    }
    if (o.has("enable_overhang_shading")) options.enable_overhang_shading = o.at("enable_overhang_shading").boolean();
  }

  Scene scene{site, std::move(*zone), std::move(obstructions), std::move(sensors), efficacy, options};
  if (std::holds_alternative<GridSpec>(scene.sensors)) {
    (void)expand_grid(scene.zone, std::get<GridSpec>(scene.sensors));  // reject empty grids at load time
  }
  return scene;
}

std::string serialize_scene(const Scene& scene) {
  json doc;
  doc["site"] = {{"latitude_deg", scene.site.latitude_deg},
                 {"longitude_deg", scene.site.longitude_deg},
                 {"tz_offset_h", scene.site.tz_offset_h},
                 {"albedo", scene.site.albedo}};
  json surfaces = json::array();
  for (const auto& s : scene.zone.surfaces()) {
    surfaces.push_back({{"id", s.id},
                        {"kind", to_string(s.kind)},
                        {"reflectance", s.reflectance},
                        {"vertices", to_json(s.polygon)}});
  }
  json glazings = json::array();
  for (const auto& g : scene.zone.glazings()) {
    glazings.push_back({{"id", g.id},
                        {"host", g.host_surface},
                        {"transmittance", g.transmittance},
                        {"vertices", to_json(g.polygon)}});
  }
  doc["zone"] = {{"surfaces", surfaces}, {"glazings", glazings}};
  json obstructions = json::array();
  for (const auto& o : scene.obstructions) {
    obstructions.push_back({{"id", o.id}, {"reflectance", o.reflectance}, {"vertices", to_json(o.polygon)}});
  }
  doc["obstructions"] = obstructions;
  if (const auto* points = std::get_if<std::vector<SensorPoint>>(&scene.sensors)) {
    json arr = json::array();
    for (const auto& p : *points) {
      arr.push_back({{"id", p.id}, {"x", p.position.x}, {"y", p.position.y}, {"z", p.position.z}});
    }
    doc["sensors"] = {{"points", arr}};
  } else {
    const auto& g = std::get<GridSpec>(scene.sensors);
    doc["sensors"] = {{"grid", {{"height_m", g.height_m}, {"spacing_m", g.spacing_m}, {"margin_m", g.margin_m}}}};
  }
  doc["efficacy"] = {{"k_diffuse", scene.efficacy.k_diffuse},
                     {"k_beam", scene.efficacy.k_beam},
                     {"k_global", scene.efficacy.k_global}};
  doc["options"] = {{"patch_n", scene.options.patch_n},
                    {"obstruction_luminance_factor", scene.options.obstruction_luminance_factor},
                    {"enable_overhang_shading", scene.options.enable_overhang_shading}};
  return doc.dump(2) + "\n";
}

std::vector<SensorPoint> expand_grid(const Zone& zone, const GridSpec& grid) {
  if (!(grid.spacing_m > 0.0)) throw ValidationError("grid spacing must be positive");
  const auto floors = zone.floors();
  double x_lo = std::numeric_limits<double>::max(), y_lo = x_lo;
  double x_hi = std::numeric_limits<double>::lowest(), y_hi = x_hi;
  for (const Surface* f : floors) {
    for (const auto& v : f->polygon.vertices()) {
      x_lo = std::min(x_lo, v.x);
      x_hi = std::max(x_hi, v.x);
      y_lo = std::min(y_lo, v.y);
      y_hi = std::max(y_hi, v.y);
    }
  }
  if (grid.spacing_m > std::max(x_hi - x_lo, y_hi - y_lo)) {
    throw ValidationError(fmt::format("grid spacing {} m exceeds the floor extent", grid.spacing_m));
  }
  constexpr double slack = 1e-9;
  std::vector<SensorPoint> out;
  const double y0 = y_lo + grid.margin_m;
  const double x0 = x_lo + grid.margin_m;
  for (int r = 0; y0 + r * grid.spacing_m <= y_hi - grid.margin_m + slack; ++r) {
    const double y = y0 + r * grid.spacing_m;
    for (int c = 0; x0 + c * grid.spacing_m <= x_hi - grid.margin_m + slack; ++c) {
      const double x = x0 + c * grid.spacing_m;
      for (const Surface* f : floors) {
        const Plane& pl = f->polygon.plane();
        const double z_floor = pl.offset / pl.normal.dz();
        // points on the outline would sit on the walls (and in any glazing plane)
        if (point_in_polygon({x, y, z_floor}, f->polygon) == Containment::inside) {
          out.push_back({fmt::format("P_{}_{}", r, c), {x, y, z_floor + grid.height_m}});
          break;
        }
      }
    }
  }
  if (out.empty()) throw ValidationError("grid has no points inside the floor footprint");
  return out;
}

std::vector<SensorPoint> Scene::sensor_points() const {
  if (const auto* points = std::get_if<std::vector<SensorPoint>>(&sensors)) return *points;
  return expand_grid(zone, std::get<GridSpec>(sensors));
}

QuadratureOptions Scene::quadrature() const {
  QuadratureOptions q;
  q.patch_n = options.patch_n;
  q.obstruction_luminance_factor = options.obstruction_luminance_factor;
  q.albedo = site.albedo;
  return q;
}

}  // namespace daylit
