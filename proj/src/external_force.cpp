#include <algorithm>
#include <cmath>

#include "geoeffect/error.hpp"
#include "geoeffect/hydro.hpp"

namespace geoeffect {

namespace {

// (u . grad) u by central differences; defined where u is defined at the
// node and its four axis neighbours.
VectorField convective(const VectorField& u) {
  const Grid2D& g = *u.grid;
  const double h = g.spacing();
  VectorField out = VectorField::zeros(u.grid, VectorRole::ExternalForce);
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (g.cls(k) != NodeClass::Interior || !u.defined[k]) continue;
    const int i = g.i_of(k), j = g.j_of(k);
    const std::size_t e = g.index(i + 1, j), w = g.index(i - 1, j);
    const std::size_t n = g.index(i, j + 1), s = g.index(i, j - 1);
    if (!u.defined[e] || !u.defined[w] || !u.defined[n] || !u.defined[s]) continue;
    const double ux = u.x[k], uy = u.y[k];
    out.x[k] = ux * (u.x[e] - u.x[w]) / (2.0 * h) + uy * (u.x[n] - u.x[s]) / (2.0 * h);
    out.y[k] = ux * (u.y[e] - u.y[w]) / (2.0 * h) + uy * (u.y[n] - u.y[s]) / (2.0 * h);
    out.defined[k] = 1;
  }
  return out;
}

VectorField quantum_gradient(const DensityFamily& family, const InverseMetricField& metric, double m,
                             double hbar, double t) {
  const QuantumPotentialField Q = quantum_potential(family.amplitude(metric, t), metric, m, hbar);
  return masked_gradient(metric.grid, Q.Q.values, Q.defined, VectorRole::QuantumForce);
}

std::vector<std::uint8_t> region(const ScalarField& rho, double fraction) {
  const Grid2D& g = *rho.grid;
  double rmax = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (g.active(k)) rmax = std::max(rmax, rho.values[k]);
  }
  std::vector<std::uint8_t> in(g.size(), 0);
  for (std::size_t k = 0; k < g.size(); ++k) {
    in[k] = g.cls(k) == NodeClass::Interior && rho.values[k] >= fraction * rmax && rho.values[k] > 0.0;
  }
  return in;
}

}  // namespace

ExternalForceResult external_force(const DensityFamily& family, const InverseMetricField& metric, double m,
                                   double hbar, double t, double dt, const ForceOptions& opts) {
  if (!(m > 0.0) || !(hbar > 0.0)) throw Error(ErrorCode::InvalidArgument, "mass and hbar must be positive");
  if (!(dt > 0.0)) throw Error(ErrorCode::InvalidArgument, "time step must be positive");
  const NeumannPoisson poisson(metric, opts.flow.solver);
  const FlowSolution now = invert_continuity(family, t, poisson, opts.flow);
  const FlowSolution ahead = invert_continuity(family, t + dt, poisson, opts.flow);
  const FlowSolution behind = invert_continuity(family, t - dt, poisson, opts.flow);
  const VectorField conv = convective(now.u);
  const VectorField gq = quantum_gradient(family, metric, m, hbar, t);
  const std::vector<std::uint8_t> in = region(now.rho, opts.region_fraction);

  ExternalForceResult r;
  r.force = VectorField::zeros(metric.grid, VectorRole::ExternalForce);
  r.inertial = VectorField::zeros(metric.grid, VectorRole::ExternalForce);
  r.quantum_gradient = VectorField::zeros(metric.grid, VectorRole::QuantumForce);
  const Grid2D& g = *metric.grid;
  std::size_t interior = 0, kept = 0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (g.cls(k) != NodeClass::Interior) continue;
    ++interior;
    if (!in[k] || !conv.defined[k] || !gq.defined[k] || !ahead.u.defined[k] || !behind.u.defined[k]) continue;
    ++kept;
    const double ax = (ahead.u.x[k] - behind.u.x[k]) / (2.0 * dt) + conv.x[k];
    const double ay = (ahead.u.y[k] - behind.u.y[k]) / (2.0 * dt) + conv.y[k];
    r.inertial.x[k] = m * ax;
    r.inertial.y[k] = m * ay;
    r.quantum_gradient.x[k] = gq.x[k];
    r.quantum_gradient.y[k] = gq.y[k];
    r.force.x[k] = m * ax + gq.x[k];
    r.force.y[k] = m * ay + gq.y[k];
    r.inertial.defined[k] = r.quantum_gradient.defined[k] = r.force.defined[k] = 1;
  }
  if (kept == 0) throw Error(ErrorCode::AllMasked, "no interior node carries enough density");
  r.quantum_gradient_max = r.quantum_gradient.max_norm();
  r.masked_fraction = 1.0 - static_cast<double>(kept) / static_cast<double>(interior);
  return r;
}

double madelung_residual(const DensityFamily& family, const InverseMetricField& metric, double m, double hbar,
                         double t, double dt, const ExternalForceResult& force, const ForceOptions& opts) {
  const NeumannPoisson poisson(metric, opts.flow.solver);
  const FlowSolution now = invert_continuity(family, t, poisson, opts.flow);
  const FlowSolution ahead = invert_continuity(family, t + 0.5 * dt, poisson, opts.flow);
  const FlowSolution behind = invert_continuity(family, t - 0.5 * dt, poisson, opts.flow);
  const VectorField conv = convective(now.u);
  const VectorField gq = quantum_gradient(family, metric, m, hbar, t);
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < force.force.x.size(); ++k) {
    if (!force.force.defined[k]) continue;
    if (!conv.defined[k] || !gq.defined[k] || !ahead.u.defined[k] || !behind.u.defined[k]) continue;
    const double rx = m * ((ahead.u.x[k] - behind.u.x[k]) / dt + conv.x[k]) + gq.x[k] - force.force.x[k];
    const double ry = m * ((ahead.u.y[k] - behind.u.y[k]) / dt + conv.y[k]) + gq.y[k] - force.force.y[k];
    num += rx * rx + ry * ry;
    den += force.force.x[k] * force.force.x[k] + force.force.y[k] * force.force.y[k];
  }
  if (den == 0.0) return std::sqrt(num);
  return std::sqrt(num / den);
}

}  // namespace geoeffect
