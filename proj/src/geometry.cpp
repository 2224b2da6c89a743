#include "geoeffect/geometry.hpp"

#include <algorithm>
#include <numbers>

#include "geoeffect/error.hpp"

namespace geoeffect {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::SpacingTooCoarse: return "SpacingTooCoarse";
    case ErrorCode::NonConvexDomain: return "NonConvexDomain";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::EmptyInterior: return "EmptyInterior";
    case ErrorCode::NotRefining: return "NotRefining";
    case ErrorCode::AllMasked: return "AllMasked";
    case ErrorCode::IncompatibleSource: return "IncompatibleSource";
    case ErrorCode::UnsupportedMetric: return "UnsupportedMetric";
    case ErrorCode::DomainTooSmall: return "DomainTooSmall";
    case ErrorCode::CFLViolation: return "CFLViolation";
    case ErrorCode::NumericalBlowup: return "NumericalBlowup";
    case ErrorCode::DegenerateMetric: return "DegenerateMetric";
    case ErrorCode::MalformedInput: return "MalformedInput";
    case ErrorCode::ConfigInvalid: return "ConfigInvalid";
  }
  return "Unknown";
}

bool is_strictly_convex(const std::vector<Vec2>& v) {
  const std::size_t n = v.size();
  if (n < 3) return false;
  double sign = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const Vec2 e0 = v[(k + 1) % n] - v[k];
    const Vec2 e1 = v[(k + 2) % n] - v[(k + 1) % n];
    const double c = cross(e0, e1);
    if (c == 0.0) return false;
    if (sign == 0.0) {
      sign = c > 0 ? 1.0 : -1.0;
    } else if (c * sign < 0) {
      return false;
    }
  }
  // Same-sign turns can still wind more than once (star polygons).
  double winding = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const Vec2 e0 = v[(k + 1) % n] - v[k];
    const Vec2 e1 = v[(k + 2) % n] - v[(k + 1) % n];
    winding += std::atan2(cross(e0, e1), dot(e0, e1));
  }
  return std::abs(std::abs(winding) - 2.0 * std::numbers::pi) < 1e-6;
}

Domain Domain::disc(Vec2 center, double radius) {
  if (!(radius > 0.0)) throw Error(ErrorCode::InvalidArgument, "disc radius must be positive");
  return Domain(Disc{center, radius});
}

Domain Domain::superellipse(Vec2 center, double a, double b, double exponent) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "superellipse semi-axes must be positive");
  }
  if (!(exponent >= 2.0)) throw Error(ErrorCode::InvalidArgument, "superellipse exponent must be >= 2");
  return Domain(Superellipse{center, a, b, exponent});
}

Domain Domain::polygon(std::vector<Vec2> vertices) {
  if (!is_strictly_convex(vertices)) {
    throw Error(ErrorCode::NonConvexDomain, "polygon vertices do not form a strictly convex loop");
  }
  const Vec2 e0 = vertices[1] - vertices[0];
  const Vec2 e1 = vertices[2] - vertices[1];
  Domain d(ConvexPolygon{std::move(vertices)});
  d.orientation_ = cross(e0, e1) > 0 ? 1.0 : -1.0;
  return d;
}

Domain Domain::regular_polygon(Vec2 center, double circumradius, int sides, double phase) {
  if (sides < 3) throw Error(ErrorCode::InvalidArgument, "polygon needs at least 3 sides");
  std::vector<Vec2> v;
  v.reserve(sides);
  for (int k = 0; k < sides; ++k) {
    const double a = phase + 2.0 * std::numbers::pi * k / sides;
    v.push_back({center.x + circumradius * std::cos(a), center.y + circumradius * std::sin(a)});
  }
  return polygon(std::move(v));
}

namespace {

double abs_pow(double v, double p) {
  v = std::abs(v);
  return p == 2.0 ? v * v : std::pow(v, p);
}

}  // namespace

bool Domain::contains(Vec2 p) const {
  return std::visit(
      [&](const auto& s) -> bool {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Disc>) {
          const double dx = p.x - s.center.x;
          const double dy = p.y - s.center.y;
          return dx * dx + dy * dy <= s.radius * s.radius;
        } else if constexpr (std::is_same_v<T, Superellipse>) {
          return abs_pow((p.x - s.center.x) / s.a, s.exponent) +
                     abs_pow((p.y - s.center.y) / s.b, s.exponent) <=
                 1.0;
        } else {
          const auto& v = s.vertices;
          for (std::size_t k = 0; k < v.size(); ++k) {
            const Vec2 e = v[(k + 1) % v.size()] - v[k];
            if (orientation_ * cross(e, p - v[k]) < 0.0) return false;
          }
          return true;
        }
      },
      shape_);
}

Box Domain::bounding_box() const {
  return std::visit(
      [](const auto& s) -> Box {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Disc>) {
          return {{s.center.x - s.radius, s.center.y - s.radius},
                  {s.center.x + s.radius, s.center.y + s.radius}};
        } else if constexpr (std::is_same_v<T, Superellipse>) {
          return {{s.center.x - s.a, s.center.y - s.b}, {s.center.x + s.a, s.center.y + s.b}};
        } else {
          Box b{s.vertices.front(), s.vertices.front()};
          for (const Vec2& v : s.vertices) {
            b.lo.x = std::min(b.lo.x, v.x);
            b.lo.y = std::min(b.lo.y, v.y);
            b.hi.x = std::max(b.hi.x, v.x);
            b.hi.y = std::max(b.hi.y, v.y);
          }
          return b;
        }
      },
      shape_);
}

Vec2 Domain::centroid() const {
  return std::visit(
      [](const auto& s) -> Vec2 {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ConvexPolygon>) {
          // Area-weighted centroid of the fan triangulation.
          const auto& v = s.vertices;
          double area = 0.0;
          Vec2 c{};
          for (std::size_t k = 0; k < v.size(); ++k) {
            const Vec2 a = v[k];
            const Vec2 b = v[(k + 1) % v.size()];
            const double w = cross(a, b);
            area += w;
            c = c + w * (a + b);
          }
          return (1.0 / (3.0 * area)) * c;
        } else {
          return s.center;
        }
      },
      shape_);
}

double Domain::circumradius() const {
  return std::visit(
      [this](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Disc>) {
          return s.radius;
        } else if constexpr (std::is_same_v<T, Superellipse>) {
          // Attained at the corners |x/a| = |y/b| for p > 2, on an axis for p = 2.
          const double t = std::pow(0.5, 1.0 / s.exponent);
          return std::max({s.a, s.b, std::hypot(s.a * t, s.b * t)});
        } else {
          const Vec2 c = centroid();
          double r = 0.0;
          for (const Vec2& v : s.vertices) r = std::max(r, norm(v - c));
          return r;
        }
      },
      shape_);
}

}  // namespace geoeffect
