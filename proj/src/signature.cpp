#include <cmath>

#include "geoeffect/error.hpp"
#include "geoeffect/kg.hpp"

namespace geoeffect {

std::string_view to_string(SignatureVerdict v) {
  return v == SignatureVerdict::LorentzianMixed ? "LorentzianMixed" : "RiemannianDefinite";
}

SignatureReport signature_check(const std::vector<Vec2>& points, const std::vector<Sym2>& inverse_metrics) {
  if (points.empty() || points.size() != inverse_metrics.size()) {
    throw Error(ErrorCode::InvalidArgument, "need at least one point with one metric per point");
  }
  SignatureReport r;
  r.points = points;
  for (std::size_t n = 0; n < points.size(); ++n) {
    const auto ev = inverse_metrics[n].eigenvalues();
    for (double e : ev) {
      if (!(std::abs(e) >= 1e-12)) {
        throw Error(ErrorCode::DegenerateMetric, "eigenvalue " + format_number(e) + " at (" +
                                                     format_number(points[n].x) + ", " +
                                                     format_number(points[n].y) + ")");
      }
    }
    const std::array<int, 2> signs{ev[0] > 0 ? 1 : -1, ev[1] > 0 ? 1 : -1};
    if (signs[0] != signs[1]) r.verdict = SignatureVerdict::LorentzianMixed;
    r.eigen_signs.push_back(signs);
  }
  return r;
}

SignatureReport signature_check(const SpacetimeMetric1p1& metric, const std::vector<Vec2>& points) {
  std::vector<Sym2> g;
  g.reserve(points.size());
  for (const Vec2& p : points) g.push_back(metric.inverse(p.x, p.y));
  return signature_check(points, g);
}

SignatureReport signature_check(const MetricSpec& metric, const std::vector<Vec2>& points) {
  std::vector<Sym2> g;
  g.reserve(points.size());
  for (const Vec2& p : points) g.push_back(metric.inverse(p));
  return signature_check(points, g);
}

}  // namespace geoeffect
