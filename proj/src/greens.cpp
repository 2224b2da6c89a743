#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "geoeffect/error.hpp"
#include "geoeffect/hydro.hpp"
#include "geoeffect/parallel.hpp"

namespace geoeffect {

namespace {

// Mean of ln|x| over the unit square centred at the origin.
constexpr double kSelfCellLog = -1.0611754268825244;

}  // namespace

VectorField greens_flow_oracle(const DensityFamily& family, double t, const InverseMetricField& metric,
                               const GreensOptions& opts) {
  if (metric.kind != MetricKind::Flat) {
    throw Error(ErrorCode::UnsupportedMetric, "the free-space kernel needs the flat metric");
  }
  const Grid2D& g = *metric.grid;
  const ScalarField rho = family.density(metric, t);
  const ScalarField rate = family.density_rate(metric, t);
  const double h = g.spacing();

  double rmax = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (g.active(k)) rmax = std::max(rmax, rho.values[k]);
  }
  VectorField u = VectorField::zeros(metric.grid, VectorRole::FlowVelocity);
  if (rmax == 0.0) return u;

  const int qx = g.nx() / 4, qy = g.ny() / 4;
  for (std::size_t k = 0; k < g.size(); ++k) {
    const int i = g.i_of(k), j = g.j_of(k);
    const bool inner = i >= qx && i < g.nx() - qx && j >= qy && j < g.ny() - qy;
    if (!inner && g.active(k) && rho.values[k] > 1e-8 * rmax) {
      throw Error(ErrorCode::DomainTooSmall, "density has not decayed outside the inner half of the grid");
    }
  }

  double smax = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (g.active(k)) smax = std::max(smax, std::abs(rate.values[k]));
  }
  if (smax == 0.0) {
    for (std::size_t k = 0; k < g.size(); ++k) u.defined[k] = g.active(k) && rho.values[k] >= opts.target_fraction * rmax;
    return u;
  }

  // Sources below round-off relative to the peak rate contribute nothing.
  std::vector<std::size_t> sources;
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (g.active(k) && std::abs(rate.values[k]) > 1e-16 * smax) sources.push_back(k);
  }
  std::vector<std::uint8_t> target(g.size(), 0), need(g.size(), 0);
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (g.cls(k) == NodeClass::Interior && rho.values[k] >= opts.target_fraction * rmax) target[k] = 1;
  }
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (!target[k]) continue;
    const int i = g.i_of(k), j = g.j_of(k);
    need[g.index(i + 1, j)] = need[g.index(i - 1, j)] = need[g.index(i, j + 1)] = need[g.index(i, j - 1)] = 1;
  }
  std::vector<std::size_t> eval;
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (need[k]) eval.push_back(k);
  }

  const double h2 = h * h;
  const double self = std::log(h) + kSelfCellLog;
  const double kernel = -1.0 / (2.0 * std::numbers::pi);
  std::vector<double> phi(g.size(), 0.0);
  parallel_for(eval.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t n = b; n < e; ++n) {
      const std::size_t k = eval[n];
      const Vec2 x = g.coord(k);
      double acc = 0.0;
      for (std::size_t s : sources) {
        const Vec2 d = x - g.coord(s);
        const double lr = s == k ? self : 0.5 * std::log(dot(d, d));
        acc += rate.values[s] * lr;
      }
      phi[k] = kernel * h2 * acc;
    }
  });

  for (std::size_t k = 0; k < g.size(); ++k) {
    if (!target[k]) continue;
    const int i = g.i_of(k), j = g.j_of(k);
    const double dx = (phi[g.index(i + 1, j)] - phi[g.index(i - 1, j)]) / (2.0 * h);
    const double dy = (phi[g.index(i, j + 1)] - phi[g.index(i, j - 1)]) / (2.0 * h);
    u.x[k] = dx / rho.values[k];
    u.y[k] = dy / rho.values[k];
    u.defined[k] = 1;
  }
  return u;
}

double relative_l2_difference(const VectorField& a, const VectorField& b, const ScalarField& rho, double fraction) {
  double rmax = 0.0;
  for (std::size_t k = 0; k < rho.values.size(); ++k) {
    if (rho.grid->active(k)) rmax = std::max(rmax, rho.values[k]);
  }
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < rho.values.size(); ++k) {
    if (!a.defined[k] || !b.defined[k] || rho.values[k] < fraction * rmax) continue;
    const double ex = a.x[k] - b.x[k], ey = a.y[k] - b.y[k];
    num += ex * ex + ey * ey;
    den += b.x[k] * b.x[k] + b.y[k] * b.y[k];
  }
  if (den == 0.0) return num == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return std::sqrt(num / den);
}

}  // namespace geoeffect
