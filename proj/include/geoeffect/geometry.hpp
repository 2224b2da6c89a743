#pragma once

#include <cmath>
#include <memory>
#include <variant>
#include <vector>

namespace geoeffect {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend bool operator==(Vec2 a, Vec2 b) = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

struct Box {
  Vec2 lo;
  Vec2 hi;
};

struct Disc {
  Vec2 center;
  double radius = 1.0;
};

struct Superellipse {
  Vec2 center;
  double a = 1.0;
  double b = 1.0;
  double exponent = 2.0;  // >= 2
};

struct ConvexPolygon {
  std::vector<Vec2> vertices;
};

/// Bounded convex region of the plane. Construction validates the shape:
/// polygons must be strictly convex (consecutive edge cross products share
/// one sign), radii and semi-axes positive.
class Domain {
public:
  using Shape = std::variant<Disc, Superellipse, ConvexPolygon>;

  static Domain disc(Vec2 center, double radius);
  static Domain superellipse(Vec2 center, double a, double b, double exponent);
  static Domain polygon(std::vector<Vec2> vertices);
  /// Regular n-gon with one vertex at angle `phase` from the +x axis.
  static Domain regular_polygon(Vec2 center, double circumradius, int sides, double phase = 0.0);

  /// Closed-set membership test.
  bool contains(Vec2 p) const;
  Box bounding_box() const;
  Vec2 centroid() const;
  /// Largest distance from the centroid to a point of the domain.
  double circumradius() const;

  const Shape& shape() const { return shape_; }

private:
  explicit Domain(Shape s) : shape_(std::move(s)) {}
  Shape shape_;
  double orientation_ = 1.0;  // polygons: sign of the edge cross products
};

/// True iff the polygon's consecutive edge cross products are all nonzero and
/// share one sign.
bool is_strictly_convex(const std::vector<Vec2>& vertices);

}  // namespace geoeffect
