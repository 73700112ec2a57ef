#include "daylit/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "daylit/error.hpp"

namespace daylit {

namespace {

struct P2 {
  double x;
  double y;
};

P2 operator-(const P2& a, const P2& b) { return {a.x - b.x, a.y - b.y}; }
double cross2(const P2& a, const P2& b) { return a.x * b.y - a.y * b.x; }
double orient(const P2& a, const P2& b, const P2& c) { return cross2(b - a, c - a); }

using Loop2 = std::vector<P2>;

double signed_area(const Loop2& poly) {
  double s = 0.0;
  for (std::size_t i = 0, n = poly.size(); i < n; ++i) {
    const P2& a = poly[i];
    const P2& b = poly[(i + 1) % n];
    s += a.x * b.y - b.x * a.y;
  }
  return 0.5 * s;
}

double segment_distance(const P2& q, const P2& a, const P2& b) {
  const P2 ab = b - a;
  const P2 aq = q - a;
  const double len2 = ab.x * ab.x + ab.y * ab.y;
  double t = len2 > 0.0 ? (aq.x * ab.x + aq.y * ab.y) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  const double dx = aq.x - t * ab.x;
  const double dy = aq.y - t * ab.y;
  return std::hypot(dx, dy);
}

double segment_distance3(const Point3& q, const Point3& a, const Point3& b) {
  const Vec3 ab = b - a;
  const double len2 = dot(ab, ab);
  double t = len2 > 0.0 ? dot(q - a, ab) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return norm(q - (a + t * ab));
}

Loop2 to_loop(const std::vector<Point3>& pts, const PlaneFrame& f) {
  Loop2 out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.push_back({f.u_of(p), f.v_of(p)});
  return out;
}

// Squared extent of a loop, used to scale the degeneracy thresholds.
double scale2(const Loop2& poly) {
  double lo_x = std::numeric_limits<double>::max(), lo_y = lo_x;
  double hi_x = std::numeric_limits<double>::lowest(), hi_y = hi_x;
  for (const auto& p : poly) {
    lo_x = std::min(lo_x, p.x);
    lo_y = std::min(lo_y, p.y);
    hi_x = std::max(hi_x, p.x);
    hi_y = std::max(hi_y, p.y);
  }
  const double dx = hi_x - lo_x;
  const double dy = hi_y - lo_y;
  return dx * dx + dy * dy;
}

bool convex_ccw(const Loop2& poly) {
  const double tol = 1e-12 * scale2(poly);
  for (std::size_t i = 0, n = poly.size(); i < n; ++i) {
    if (orient(poly[i], poly[(i + 1) % n], poly[(i + 2) % n]) < -tol) return false;
  }
  return true;
}

bool point_in_triangle(const P2& p, const P2& a, const P2& b, const P2& c, double tol) {
  return orient(a, b, p) >= -tol && orient(b, c, p) >= -tol && orient(c, a, p) >= -tol;
}

// Ear clipping of a CCW simple loop.
std::vector<Loop2> ear_clip(Loop2 poly) {
  std::vector<Loop2> tris;
  const double tol = 1e-12 * scale2(poly);
  while (poly.size() > 3) {
    const std::size_t n = poly.size();
    bool clipped = false;
    for (std::size_t i = 0; i < n; ++i) {
      const P2& a = poly[(i + n - 1) % n];
      const P2& b = poly[i];
      const P2& c = poly[(i + 1) % n];
      const double turn = orient(a, b, c);
      if (std::abs(turn) <= tol) {
        // collinear vertex carries no area
        poly.erase(poly.begin() + static_cast<std::ptrdiff_t>(i));
        clipped = true;
        break;
      }
      if (turn < 0.0) continue;
      bool blocked = false;
      for (std::size_t j = 0; j < n && !blocked; ++j) {
        if (j == i || j == (i + 1) % n || j == (i + n - 1) % n) continue;
        const P2& p = poly[j];
        if ((p.x == a.x && p.y == a.y) || (p.x == c.x && p.y == c.y)) continue;
        // a vertex touching the diagonal also blocks the ear
        blocked = point_in_triangle(p, a, b, c, tol);
      }
      if (blocked) continue;
      tris.push_back({a, b, c});
      poly.erase(poly.begin() + static_cast<std::ptrdiff_t>(i));
      clipped = true;
      break;
    }
    if (!clipped) {
      // Numerically stuck: fan the remainder.
      for (std::size_t i = 1; i + 1 < poly.size(); ++i) tris.push_back({poly[0], poly[i], poly[i + 1]});
      return tris;
    }
  }
  if (poly.size() == 3 && std::abs(signed_area(poly)) > 0.5 * tol) tris.push_back(poly);
  return tris;
}

std::vector<Loop2> convex_parts(const Loop2& ccw) {
  if (convex_ccw(ccw)) return {ccw};
  return ear_clip(ccw);
}

Loop2 ccw(Loop2 poly) {
  if (signed_area(poly) < 0.0) std::reverse(poly.begin(), poly.end());
  return poly;
}

// Keeps the part of poly left of the directed line a->b (or right when
// keep_left is false).
Loop2 clip_halfplane(const Loop2& poly, const P2& a, const P2& b, bool keep_left) {
  Loop2 out;
  const std::size_t n = poly.size();
  if (n == 0) return out;
  const double sgn = keep_left ? 1.0 : -1.0;
  auto side = [&](const P2& p) { return sgn * orient(a, b, p); };
  for (std::size_t i = 0; i < n; ++i) {
    const P2& cur = poly[i];
    const P2& nxt = poly[(i + 1) % n];
    const double sc = side(cur);
    const double sn = side(nxt);
    if (sc >= 0.0) out.push_back(cur);
    if ((sc >= 0.0) != (sn >= 0.0)) {
      const double t = sc / (sc - sn);
      out.push_back({cur.x + t * (nxt.x - cur.x), cur.y + t * (nxt.y - cur.y)});
    }
  }
  return out;
}

Loop2 clip_convex(Loop2 subject, const Loop2& clip) {
  for (std::size_t i = 0, n = clip.size(); i < n && !subject.empty(); ++i) {
    subject = clip_halfplane(subject, clip[i], clip[(i + 1) % n], true);
  }
  return subject;
}

// Removes consecutive near-duplicates and reports whether a non-sliver
// region remains.
bool tidy(Loop2& poly, double ref_scale2) {
  Loop2 out;
  for (const auto& p : poly) {
    if (out.empty() || std::hypot(p.x - out.back().x, p.y - out.back().y) > edge_tol) out.push_back(p);
  }
  while (out.size() > 1 && std::hypot(out.front().x - out.back().x, out.front().y - out.back().y) <= edge_tol) {
    out.pop_back();
  }
  poly = std::move(out);
  if (poly.size() < 3) return false;
  return std::abs(signed_area(poly)) > 1e-12 * std::max(ref_scale2, 1e-300);
}

std::vector<Polygon> lift(const std::vector<Loop2>& loops, const PlaneFrame& f, const Vec3& facing, double ref_scale2) {
  std::vector<Polygon> out;
  for (Loop2 loop : loops) {
    if (!tidy(loop, ref_scale2)) continue;
    std::vector<Point3> pts;
    pts.reserve(loop.size());
    for (const auto& p : loop) pts.push_back(f.at(p.x, p.y));
    try {
      out.emplace_back(std::move(pts), facing);
    } catch (const GeometryError&) {
      // sliver below numerical resolution
    }
  }
  return out;
}

void require_coplanar(const Polygon& a, const Polygon& b) {
  for (const auto& v : a.vertices()) {
    if (std::abs(point_plane_distance(v, b.plane())) > planarity_tol) {
      throw GeometryError(GeometryError::Kind::NonCoplanar, "polygons are not coplanar");
    }
  }
}

// Van Oosterom-Strackee signed solid angle of triangle (a, b, c) seen from
// the origin.
double triangle_solid_angle(const Vec3& a, const Vec3& b, const Vec3& c) {
  const double la = norm(a), lb = norm(b), lc = norm(c);
  const double num = dot(a, cross(b, c));
  const double den = la * lb * lc + dot(a, b) * lc + dot(a, c) * lb + dot(b, c) * la;
  return 2.0 * std::atan2(num, den);
}

}  // namespace

bool is_finite(const Vec3& v) { return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z); }

Direction3::Direction3(const Vec3& v) {
  const double len = norm(v);
  if (!(len > 0.0) || !std::isfinite(len)) {
    throw GeometryError(GeometryError::Kind::Degenerate, "direction must be finite and non-zero");
  }
  v_ = v / len;
}

double point_plane_distance(const Point3& q, const Plane& pl) { return dot(pl.normal.vec(), q) - pl.offset; }

PlaneFrame PlaneFrame::of(const Plane& pl, const Point3& origin) {
  const Vec3 n = pl.normal.vec();
  Vec3 u = std::abs(n.z) < 1.0 - 1e-9 ? cross(Vec3{0, 0, 1}, n) : Vec3{1, 0, 0};
  u = u - dot(u, n) * n;
  u = u / norm(u);
  return {origin - point_plane_distance(origin, pl) * n, u, cross(n, u), n};
}

Polygon::Polygon(std::vector<Point3> vertices) : vertices_(std::move(vertices)) {
  using Kind = GeometryError::Kind;
  const std::size_t n = vertices_.size();
  if (n < 3) throw GeometryError(Kind::InvalidPolygon, "polygon needs at least 3 vertices");
  for (const auto& v : vertices_) {
    if (!is_finite(v)) throw GeometryError(Kind::InvalidPolygon, "polygon vertex is not finite");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (distance(vertices_[i], vertices_[(i + 1) % n]) <= edge_tol) {
      throw GeometryError(Kind::InvalidPolygon, "consecutive polygon vertices coincide (vertex " +
                                                    std::to_string((i + 1) % n) + ")");
    }
  }

  // Newell normal, accumulated relative to the first vertex.
  const Point3& o = vertices_[0];
  Vec3 newell{};
  double extent2 = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) newell += cross(vertices_[i] - o, vertices_[i + 1] - o);
  for (const auto& v : vertices_) extent2 = std::max(extent2, dot(v - o, v - o));
  const double len = norm(newell);
  if (len <= 1e-12 * extent2) throw GeometryError(Kind::ZeroArea, "polygon has zero area (collinear vertices)");

  const Direction3 normal(newell);
  double offset = 0.0;
  for (const auto& v : vertices_) offset += dot(normal.vec(), v);
  offset /= static_cast<double>(n);
  plane_ = Plane{normal, offset};
  area_ = 0.5 * len;

  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(point_plane_distance(vertices_[i], plane_)) > planarity_tol) {
      throw GeometryError(Kind::InvalidPolygon, "polygon is not planar (vertex " + std::to_string(i) + ")");
    }
  }

  if (n > 3) {
    const PlaneFrame f = PlaneFrame::of(plane_, o);
    const Loop2 loop = to_loop(vertices_, f);
    const double tol = 1e-12 * scale2(loop);
    for (std::size_t i = 0; i < n; ++i) {
      const P2& a = loop[i];
      const P2& b = loop[(i + 1) % n];
      for (std::size_t j = i + 2; j < n; ++j) {
        if (i == 0 && j == n - 1) continue;  // adjacent through the closing edge
        const P2& c = loop[j];
        const P2& d = loop[(j + 1) % n];
        const double o1 = orient(a, b, c), o2 = orient(a, b, d);
        const double o3 = orient(c, d, a), o4 = orient(c, d, b);
        if (((o1 > tol && o2 < -tol) || (o1 < -tol && o2 > tol)) &&
            ((o3 > tol && o4 < -tol) || (o3 < -tol && o4 > tol))) {
          throw GeometryError(Kind::InvalidPolygon, "polygon is self-intersecting (edges " + std::to_string(i) +
                                                        " and " + std::to_string(j) + ")");
        }
      }
    }
  }
}

Polygon::Polygon(std::vector<Point3> vertices, const Vec3& facing) : Polygon(std::move(vertices)) {
  if (dot(plane_.normal.vec(), facing) < 0.0) {
    std::reverse(vertices_.begin(), vertices_.end());
    plane_ = Plane{-plane_.normal, -plane_.offset};
  }
}

Point3 Polygon::centroid() const {
  const Point3& o = vertices_[0];
  const Vec3 n = plane_.normal.vec();
  Vec3 acc{};
  double total = 0.0;
  for (std::size_t i = 1; i + 1 < vertices_.size(); ++i) {
    const Vec3 a = vertices_[i] - o;
    const Vec3 b = vertices_[i + 1] - o;
    const double w = dot(cross(a, b), n);
    acc += w * (a + b) / 3.0;
    total += w;
  }
  return o + acc / total;
}

bool Polygon::is_convex() const {
  const PlaneFrame f = PlaneFrame::of(plane_, vertices_[0]);
  return convex_ccw(to_loop(vertices_, f));
}

Polygon Polygon::reversed() const {
  std::vector<Point3> v(vertices_.rbegin(), vertices_.rend());
  return Polygon(std::move(v), -plane_.normal.vec());
}

Polygon Polygon::translated(const Vec3& delta) const {
  std::vector<Point3> v = vertices_;
  for (auto& p : v) p += delta;
  return Polygon(std::move(v), plane_.normal.vec());
}

double polygon_area(const Polygon& p) { return p.area(); }

double polygon_perimeter(const Polygon& p) {
  double s = 0.0;
  const auto& v = p.vertices();
  for (std::size_t i = 0, n = v.size(); i < n; ++i) s += distance(v[i], v[(i + 1) % n]);
  return s;
}

Containment point_in_polygon(const Point3& q, const Polygon& p) {
  if (std::abs(point_plane_distance(q, p.plane())) > planarity_tol) {
    throw GeometryError(GeometryError::Kind::OffPlane, "point is off the polygon plane");
  }
  const PlaneFrame f = PlaneFrame::of(p.plane(), p[0]);
  const Loop2 loop = to_loop(p.vertices(), f);
  const P2 pt{f.u_of(q), f.v_of(q)};
  const std::size_t n = loop.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (segment_distance(pt, loop[i], loop[(i + 1) % n]) <= edge_tol) return Containment::on_boundary;
  }
  // Crossing number with a +u ray.
  bool in = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const P2& a = loop[i];
    const P2& b = loop[j];
    if ((a.y > pt.y) != (b.y > pt.y)) {
      const double x_cross = a.x + (pt.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (pt.x < x_cross) in = !in;
    }
  }
  return in ? Containment::inside : Containment::outside;
}

std::optional<Polygon> project_polygon(const Polygon& p, const Direction3& d, const Plane& target) {
  const Vec3 n = target.normal.vec();
  const double denom = dot(d.vec(), n);
  if (std::abs(denom) < parallel_tol) return std::nullopt;
  std::vector<Point3> image;
  image.reserve(p.size());
  for (const auto& v : p.vertices()) {
    const double t = (target.offset - dot(n, v)) / denom;
    if (t < -edge_tol) return std::nullopt;
    Point3 hit = v + t * d.vec();
    hit -= point_plane_distance(hit, target) * n;
    image.push_back(hit);
  }
  try {
    return Polygon(std::move(image));
  } catch (const GeometryError&) {
    return std::nullopt;  // p is edge-on to d
  }
}

std::vector<Polygon> clip_polygon(const Polygon& subject, const Polygon& clip) {
  require_coplanar(subject, clip);
  const PlaneFrame f = PlaneFrame::of(clip.plane(), clip[0]);
  const Loop2 s = ccw(to_loop(subject.vertices(), f));
  const Loop2 c = ccw(to_loop(clip.vertices(), f));
  const double ref = std::min(scale2(s), scale2(c));

  std::vector<Loop2> pieces;
  for (const auto& sp : convex_parts(s)) {
    for (const auto& cp : convex_parts(c)) {
      Loop2 r = clip_convex(sp, cp);
      if (r.size() >= 3) pieces.push_back(std::move(r));
    }
  }
  return lift(pieces, f, subject.normal().vec(), ref);
}

std::vector<Polygon> subtract_polygon(std::span<const Polygon> pieces, const Polygon& mask) {
  if (pieces.empty()) return {};
  const PlaneFrame f = PlaneFrame::of(mask.plane(), mask[0]);
  const Vec3 facing = pieces.front().normal().vec();

  std::vector<Loop2> current;
  double ref = std::numeric_limits<double>::max();
  for (const auto& piece : pieces) {
    require_coplanar(piece, mask);
    const Loop2 loop = ccw(to_loop(piece.vertices(), f));
    ref = std::min(ref, scale2(loop));
    for (auto& part : convex_parts(loop)) current.push_back(std::move(part));
  }

  for (const auto& m : convex_parts(ccw(to_loop(mask.vertices(), f)))) {
    std::vector<Loop2> next;
    for (const auto& piece : current) {
      Loop2 remaining = piece;
      for (std::size_t i = 0, n = m.size(); i < n && remaining.size() >= 3; ++i) {
        Loop2 outside = clip_halfplane(remaining, m[i], m[(i + 1) % n], false);
        if (outside.size() >= 3 && tidy(outside, ref)) next.push_back(std::move(outside));
        remaining = clip_halfplane(remaining, m[i], m[(i + 1) % n], true);
      }
    }
    current = std::move(next);
  }
  return lift(current, f, facing, ref);
}

std::vector<Polygon> subtract_polygon(const Polygon& subject, const Polygon& mask) {
  return subtract_polygon(std::span<const Polygon>(&subject, 1), mask);
}

std::optional<Polygon> clip_to_halfspace(const Polygon& p, const Plane& pl) {
  std::vector<Point3> out;
  const auto& v = p.vertices();
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point3& cur = v[i];
    const Point3& nxt = v[(i + 1) % n];
    const double dc = point_plane_distance(cur, pl);
    const double dn = point_plane_distance(nxt, pl);
    if (dc >= 0.0) out.push_back(cur);
    if ((dc >= 0.0) != (dn >= 0.0)) out.push_back(cur + (dc / (dc - dn)) * (nxt - cur));
  }
  std::vector<Point3> clean;
  for (const auto& q : out) {
    if (clean.empty() || distance(q, clean.back()) > edge_tol) clean.push_back(q);
  }
  while (clean.size() > 1 && distance(clean.front(), clean.back()) <= edge_tol) clean.pop_back();
  if (clean.size() < 3) return std::nullopt;
  try {
    return Polygon(std::move(clean), p.normal().vec());
  } catch (const GeometryError&) {
    return std::nullopt;
  }
}

std::vector<Polygon> triangulate(const Polygon& p) {
  if (p.size() == 3) return {p};
  const PlaneFrame f = PlaneFrame::of(p.plane(), p[0]);
  const Loop2 loop = to_loop(p.vertices(), f);
  std::vector<Loop2> tris;
  if (convex_ccw(loop)) {
    for (std::size_t i = 1; i + 1 < loop.size(); ++i) tris.push_back({loop[0], loop[i], loop[i + 1]});
  } else {
    tris = ear_clip(loop);
  }
  return lift(tris, f, p.normal().vec(), scale2(loop));
}

double solid_angle(const Point3& q, const Polygon& p) {
  if (std::abs(point_plane_distance(q, p.plane())) < planarity_tol) {
    throw GeometryError(GeometryError::Kind::Degenerate, "solid angle undefined for a point in the polygon plane");
  }
  const auto& v = p.vertices();
  double total = 0.0;
  if (p.is_convex()) {
    const Vec3 a = v[0] - q;
    for (std::size_t i = 1; i + 1 < v.size(); ++i) total += triangle_solid_angle(a, v[i] - q, v[i + 1] - q);
  } else {
    for (const auto& t : triangulate(p)) total += triangle_solid_angle(t[0] - q, t[1] - q, t[2] - q);
  }
  return std::abs(total);
}

std::optional<double> ray_hit(const Point3& origin, const Vec3& dir, const Polygon& p) {
  const Vec3 n = p.normal().vec();
  const double denom = dot(dir, n);
  if (std::abs(denom) < parallel_tol) return std::nullopt;
  const double t = (p.plane().offset - dot(n, origin)) / denom;
  if (!(t > 0.0)) return std::nullopt;
  Point3 hit = origin + t * dir;
  hit -= point_plane_distance(hit, p.plane()) * n;
  if (point_in_polygon(hit, p) == Containment::outside) return std::nullopt;
  return t;
}

double point_polygon_distance(const Point3& q, const Polygon& p) {
  const double d = point_plane_distance(q, p.plane());
  const Point3 foot = q - d * p.normal().vec();
  if (point_in_polygon(foot, p) != Containment::outside) return std::abs(d);
  double best = std::numeric_limits<double>::max();
  const auto& v = p.vertices();
  for (std::size_t i = 0, n = v.size(); i < n; ++i) best = std::min(best, segment_distance3(q, v[i], v[(i + 1) % n]));
  return best;
}

}  // namespace daylit
