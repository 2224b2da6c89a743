#include <cmath>
#include <limits>
#include <numbers>

#include "geoeffect/elliptic.hpp"
#include "geoeffect/error.hpp"

namespace geoeffect {

std::string_view to_string(SmpVerdict v) {
  switch (v) {
    case SmpVerdict::MaxOnBoundary: return "MaxOnBoundary";
    case SmpVerdict::ConstantField: return "ConstantField";
    case SmpVerdict::Violation: return "Violation";
  }
  return "Unknown";
}

SMPReport verify_smp(const ScalarField& field, double tol_smp, double tol_const) {
  const Grid2D& g = *field.grid;
  if (g.interior_count() == 0) throw Error(ErrorCode::EmptyInterior, "grid has no interior nodes");
  constexpr double inf = std::numeric_limits<double>::infinity();
  SMPReport rep;
  rep.interior_max.value = rep.boundary_max.value = -inf;
  rep.interior_min.value = rep.boundary_min.value = inf;
  for (std::size_t k = 0; k < g.size(); ++k) {
    const NodeClass c = g.cls(k);
    if (c == NodeClass::Exterior) continue;
    const double v = field.values[k];
    Extremum& mx = c == NodeClass::Interior ? rep.interior_max : rep.boundary_max;
    Extremum& mn = c == NodeClass::Interior ? rep.interior_min : rep.boundary_min;
    // Strict comparisons keep the first (row-major) node on ties.
    if (v > mx.value) mx = {v, k, g.coord(k)};
    if (v < mn.value) mn = {v, k, g.coord(k)};
  }
  rep.margin = rep.boundary_max.value - rep.interior_max.value;
  const double gmax = std::max(rep.interior_max.value, rep.boundary_max.value);
  const double gmin = std::min(rep.interior_min.value, rep.boundary_min.value);
  if (gmax - gmin <= tol_const) {
    rep.verdict = SmpVerdict::ConstantField;
  } else if (rep.interior_max.value > rep.boundary_max.value + tol_smp) {
    rep.verdict = SmpVerdict::Violation;
  } else {
    rep.verdict = SmpVerdict::MaxOnBoundary;
  }
  return rep;
}

double monotone_ray_fraction(const ScalarField& field, const Domain& domain, int rays) {
  const Grid2D& g = *field.grid;
  const Vec2 c = domain.centroid();
  const double h = g.spacing();
  const double ds = 0.5 * h;
  const double reach = 2.0 * domain.circumradius();

  // Bilinear value at p; false if the enclosing cell touches an exterior node.
  auto sample = [&](Vec2 p, double& out) {
    const double fx = (p.x - g.origin().x) / h;
    const double fy = (p.y - g.origin().y) / h;
    const int i = static_cast<int>(std::floor(fx));
    const int j = static_cast<int>(std::floor(fy));
    if (!g.active(i, j) || !g.active(i + 1, j) || !g.active(i, j + 1) || !g.active(i + 1, j + 1)) return false;
    const double sx = fx - i, sy = fy - j;
    out = (1 - sx) * (1 - sy) * field.values[g.index(i, j)] + sx * (1 - sy) * field.values[g.index(i + 1, j)] +
          (1 - sx) * sy * field.values[g.index(i, j + 1)] + sx * sy * field.values[g.index(i + 1, j + 1)];
    return true;
  };

  double scale = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (g.active(k)) scale = std::max(scale, std::abs(field.values[k]));
  }
  const double slack = 1e-12 * scale;

  int monotone = 0;
  for (int r = 0; r < rays; ++r) {
    // Half-step angular offset keeps rays off the grid axes.
    const double a = 2.0 * std::numbers::pi * (r + 0.5) / rays;
    const Vec2 dir{std::cos(a), std::sin(a)};
    double prev = 0.0;
    bool have = false;
    bool ok = true;
    for (double s = 0.0; s <= reach; s += ds) {
      const Vec2 p = c + s * dir;
      if (!domain.contains(p)) break;
      double v = 0.0;
      if (!sample(p, v)) break;
      if (have && v < prev - slack) {
        ok = false;
        break;
      }
      prev = v;
      have = true;
    }
    if (ok && have) ++monotone;
  }
  return rays > 0 ? static_cast<double>(monotone) / rays : 0.0;
}

}  // namespace geoeffect
