#pragma once

// Planar-polygon kernel: areas, perimeters, plane distances, inclusion
// tests, projections along a direction, clipping and solid angles.
//
// World frame is right-handed, metres, z up. All functions are pure.

#include <cmath>
#include <optional>
#include <span>
#include <vector>

namespace daylit {

inline constexpr double planarity_tol = 1e-6;  // m
inline constexpr double edge_tol = 1e-9;       // m
inline constexpr double parallel_tol = 1e-9;   // |cos| below which a direction is parallel to a plane

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
  constexpr Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
  constexpr Vec3& operator*=(double s) { x *= s; y *= s; z *= s; return *this; }

  friend constexpr Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
  friend constexpr Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
  friend constexpr Vec3 operator*(Vec3 a, double s) { return a *= s; }
  friend constexpr Vec3 operator*(double s, Vec3 a) { return a *= s; }
  friend constexpr Vec3 operator/(Vec3 a, double s) { return a *= 1.0 / s; }
  friend constexpr Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }
  friend constexpr bool operator==(const Vec3&, const Vec3&) = default;
};

// Positions and displacements share a representation.
using Point3 = Vec3;

constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline double distance(const Point3& a, const Point3& b) { return norm(a - b); }
bool is_finite(const Vec3& v);

// Unit vector. Construction normalizes; a zero or non-finite input throws.
class Direction3 {
 public:
  explicit Direction3(const Vec3& v);
  Direction3(double dx, double dy, double dz) : Direction3(Vec3{dx, dy, dz}) {}

  const Vec3& vec() const { return v_; }
  double dx() const { return v_.x; }
  double dy() const { return v_.y; }
  double dz() const { return v_.z; }
  Direction3 operator-() const { return Direction3(-v_); }
  operator const Vec3&() const { return v_; }

 private:
  Vec3 v_;
};

struct Plane {
  Direction3 normal;
  double offset;  // signed distance of the plane from the origin along normal

  static Plane through(const Point3& p, const Direction3& n) { return {n, dot(n.vec(), p)}; }
  static Plane horizontal(double z) { return {Direction3(0, 0, 1), z}; }
};

double point_plane_distance(const Point3& q, const Plane& pl);

// Ordered planar vertex loop. The vertex order is counter-clockwise seen
// from the normal side; the normal is the Newell normal of the loop, or the
// requested facing side when one is given (the loop is reversed to match).
class Polygon {
 public:
  explicit Polygon(std::vector<Point3> vertices);
  Polygon(std::vector<Point3> vertices, const Vec3& facing);

  const std::vector<Point3>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  const Point3& operator[](std::size_t i) const { return vertices_[i]; }
  const Plane& plane() const { return plane_; }
  const Direction3& normal() const { return plane_.normal; }
  double area() const { return area_; }
  Point3 centroid() const;
  bool is_convex() const;

  Polygon reversed() const;
  Polygon translated(const Vec3& delta) const;

 private:
  std::vector<Point3> vertices_;
  Plane plane_{Direction3(0, 0, 1), 0.0};
  double area_ = 0.0;
};

// Orthonormal in-plane frame: u, v span the plane, u x v = normal.
struct PlaneFrame {
  Point3 origin;
  Vec3 u;
  Vec3 v;
  Vec3 n;

  // u horizontal for non-horizontal planes, +x otherwise.
  static PlaneFrame of(const Plane& pl, const Point3& origin);
  double u_of(const Point3& p) const { return dot(p - origin, u); }
  double v_of(const Point3& p) const { return dot(p - origin, v); }
  Point3 at(double a, double b) const { return origin + a * u + b * v; }
};

enum class Containment { inside, on_boundary, outside };

double polygon_area(const Polygon& p);
double polygon_perimeter(const Polygon& p);

// Throws GeometryError(OffPlane) when q is farther than planarity_tol from p.
Containment point_in_polygon(const Point3& q, const Polygon& p);

// Translates every vertex along d onto target. Empty when d is parallel to
// the target or the target lies behind any vertex.
std::optional<Polygon> project_polygon(const Polygon& p, const Direction3& d, const Plane& target);

// Intersection of two coplanar polygons as a list of disjoint pieces.
std::vector<Polygon> clip_polygon(const Polygon& subject, const Polygon& clip);

// subject minus mask, both coplanar, as disjoint convex pieces.
std::vector<Polygon> subtract_polygon(const Polygon& subject, const Polygon& mask);
std::vector<Polygon> subtract_polygon(std::span<const Polygon> pieces, const Polygon& mask);

// Part of p on the normal side of pl (signed distance >= 0). Empty when
// nothing of p remains.
std::optional<Polygon> clip_to_halfspace(const Polygon& p, const Plane& pl);

std::vector<Polygon> triangulate(const Polygon& p);

// Unsigned solid angle in steradians subtended by p at q.
double solid_angle(const Point3& q, const Polygon& p);

// Distance t > 0 along origin + t*dir (dir unit) at which the ray meets p,
// counting boundary hits.
std::optional<double> ray_hit(const Point3& origin, const Vec3& dir, const Polygon& p);

// Shortest distance from q to the closed polygonal region.
double point_polygon_distance(const Point3& q, const Polygon& p);

}  // namespace daylit
