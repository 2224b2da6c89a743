#include <algorithm>
#include <cmath>

#include "geoeffect/error.hpp"
#include "geoeffect/hydro.hpp"

namespace geoeffect {

NeumannPoisson::NeumannPoisson(const InverseMetricField& metric, const SolverOptions& opts) : metric_(&metric) {
  if (metric.has_cross_terms()) {
    throw Error(ErrorCode::UnsupportedMetric, "flow inversion needs a metric without g^12 terms");
  }
  const Grid2D& g = *metric.grid;
  row_of_node_.assign(g.size(), -1);
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (!g.active(k)) continue;
    row_of_node_[k] = static_cast<int>(node_of_row_.size());
    node_of_row_.push_back(k);
  }
  const int n = static_cast<int>(node_of_row_.size());
  if (n == 0) throw Error(ErrorCode::EmptyInterior, "grid has no active nodes");

  std::vector<Triplet> t;
  t.reserve(static_cast<std::size_t>(n) * 5);
  for (int r = 0; r < n; ++r) {
    const std::size_t k = node_of_row_[r];
    const int i = g.i_of(k), j = g.j_of(k);
    double diag = 0.0;
    auto face = [&](int ni, int nj, const std::vector<double>& gaa) {
      if (!g.active(ni, nj)) return;
      const std::size_t nb = g.index(ni, nj);
      const double f = 0.5 * (metric.sqrt_det_g[k] * gaa[k] + metric.sqrt_det_g[nb] * gaa[nb]);
      diag += f;
      t.push_back({r, row_of_node_[nb], -f});
    };
    face(i + 1, j, metric.g11);
    face(i - 1, j, metric.g11);
    face(i, j + 1, metric.g22);
    face(i, j - 1, metric.g22);
    t.push_back({r, r, diag});
  }
  full_ = csr_from_triplets(n, t, true);

  // The operator annihilates constants; one identity row removes the null
  // space and the gauge is fixed afterwards.
  pinned_row_ = 0;
  std::vector<Triplet> pinned;
  pinned.reserve(t.size());
  for (const auto& e : t) {
    if (e.row != pinned_row_) pinned.push_back(e);
  }
  pinned.push_back({pinned_row_, pinned_row_, 1.0});
  solver_ = std::make_unique<SparseSolver>(csr_from_triplets(n, std::move(pinned), false), opts);
}

SolveReport NeumannPoisson::solve(const std::vector<double>& source, std::vector<double>& phi) const {
  const InverseMetricField& m = *metric_;
  const Grid2D& g = *m.grid;
  if (source.size() != g.size()) throw Error(ErrorCode::GridMismatch, "source lives on a different grid");
  const double h2 = g.spacing() * g.spacing();
  const std::size_t n = node_of_row_.size();

  double wsum = 0.0, integral = 0.0, l1 = 0.0;
  for (std::size_t k : node_of_row_) {
    const double w = m.sqrt_det_g[k] * h2;
    wsum += w;
    integral += w * source[k];
    l1 += w * std::abs(source[k]);
  }
  phi.assign(g.size(), 0.0);
  if (l1 == 0.0) {
    SolveReport rep;
    rep.degenerate = true;
    return rep;
  }
  if (std::abs(integral) > 1e-6 * l1) {
    throw Error(ErrorCode::IncompatibleSource,
                "source integral " + format_number(integral) + " violates zero-flux solvability");
  }
  const double mean = integral / wsum;
  std::vector<double> b(n);
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t k = node_of_row_[r];
    b[r] = -m.sqrt_det_g[k] * h2 * (source[k] - mean);
  }
  b[pinned_row_] = 0.0;
  std::vector<double> x;
  SolveReport rep = solver_->solve(b, x);
  for (std::size_t r = 0; r < n; ++r) phi[node_of_row_[r]] = x[r];
  phi = project_gauge(std::move(phi));
  return rep;
}

std::vector<double> NeumannPoisson::project_gauge(std::vector<double> phi) const {
  const InverseMetricField& m = *metric_;
  double wsum = 0.0, acc = 0.0;
  for (std::size_t k : node_of_row_) {
    wsum += m.sqrt_det_g[k];
    acc += m.sqrt_det_g[k] * phi[k];
  }
  const double mean = acc / wsum;
  for (std::size_t k = 0; k < phi.size(); ++k) phi[k] = m.grid->active(k) ? phi[k] - mean : 0.0;
  return phi;
}

FaceField NeumannPoisson::fluxes(const std::vector<double>& phi) const {
  const InverseMetricField& m = *metric_;
  const Grid2D& g = *m.grid;
  const double h = g.spacing();
  FaceField f;
  f.x.assign(g.size(), 0.0);
  f.y.assign(g.size(), 0.0);
  f.has_x.assign(g.size(), 0);
  f.has_y.assign(g.size(), 0);
  for (std::size_t k : node_of_row_) {
    const int i = g.i_of(k), j = g.j_of(k);
    if (g.active(i + 1, j)) {
      const std::size_t nb = g.index(i + 1, j);
      const double c = 0.5 * (m.sqrt_det_g[k] * m.g11[k] + m.sqrt_det_g[nb] * m.g11[nb]);
      f.x[k] = c * (phi[nb] - phi[k]) / h;
      f.has_x[k] = 1;
    }
    if (g.active(i, j + 1)) {
      const std::size_t nb = g.index(i, j + 1);
      const double c = 0.5 * (m.sqrt_det_g[k] * m.g22[k] + m.sqrt_det_g[nb] * m.g22[nb]);
      f.y[k] = c * (phi[nb] - phi[k]) / h;
      f.has_y[k] = 1;
    }
  }
  return f;
}

std::vector<double> NeumannPoisson::divergence(const FaceField& flux) const {
  const InverseMetricField& m = *metric_;
  const Grid2D& g = *m.grid;
  const double h = g.spacing();
  std::vector<double> out(g.size(), 0.0);
  for (std::size_t k : node_of_row_) {
    const int i = g.i_of(k), j = g.j_of(k);
    double d = flux.x[k] + flux.y[k];
    if (g.active(i - 1, j)) d -= flux.x[g.index(i - 1, j)];
    if (g.active(i, j - 1)) d -= flux.y[g.index(i, j - 1)];
    out[k] = d / (h * m.sqrt_det_g[k]);
  }
  return out;
}

FlowSolution flow_from_potential(const NeumannPoisson& poisson, std::vector<double> phi, ScalarField rho,
                                 ScalarField rho_rate, double p_floor) {
  const InverseMetricField& m = poisson.metric();
  const Grid2D& g = *m.grid;
  if (p_floor < 0.0) {
    double rmax = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) {
      if (g.active(k)) rmax = std::max(rmax, rho.values[k]);
    }
    p_floor = 1e-6 * std::sqrt(rmax);
  }
  FlowSolution s;
  s.rho_floor = p_floor * p_floor;
  phi = poisson.project_gauge(std::move(phi));
  const FaceField dens = poisson.fluxes(phi);

  s.current = dens;
  s.velocity = dens;
  s.rho_face_x.assign(g.size(), 0.0);
  s.rho_face_y.assign(g.size(), 0.0);
  for (std::size_t k = 0; k < g.size(); ++k) {
    const int i = g.i_of(k), j = g.j_of(k);
    if (dens.has_x[k]) {
      const std::size_t nb = g.index(i + 1, j);
      const double sg = 0.5 * (m.sqrt_det_g[k] + m.sqrt_det_g[nb]);
      s.rho_face_x[k] = 0.5 * (rho.values[k] + rho.values[nb]);
      s.current.x[k] = dens.x[k] / sg;
      s.velocity.x[k] = s.current.x[k] / std::max(s.rho_face_x[k], s.rho_floor);
    }
    if (dens.has_y[k]) {
      const std::size_t nb = g.index(i, j + 1);
      const double sg = 0.5 * (m.sqrt_det_g[k] + m.sqrt_det_g[nb]);
      s.rho_face_y[k] = 0.5 * (rho.values[k] + rho.values[nb]);
      s.current.y[k] = dens.y[k] / sg;
      s.velocity.y[k] = s.current.y[k] / std::max(s.rho_face_y[k], s.rho_floor);
    }
  }

  s.u = VectorField::zeros(m.grid, VectorRole::FlowVelocity);
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (!g.active(k) || !(rho.values[k] >= s.rho_floor)) continue;
    const int i = g.i_of(k), j = g.j_of(k);
    // A missing face is a zero-flux face.
    double jx = s.current.x[k], jy = s.current.y[k];
    if (g.active(i - 1, j)) jx += s.current.x[g.index(i - 1, j)];
    if (g.active(i, j - 1)) jy += s.current.y[g.index(i, j - 1)];
    const double r = std::max(rho.values[k], s.rho_floor);
    s.u.x[k] = 0.5 * jx / r;
    s.u.y[k] = 0.5 * jy / r;
    s.u.defined[k] = 1;
  }
  s.phi = ScalarField{m.grid, std::move(phi), ScalarRole::PoissonPotential};
  s.rho = std::move(rho);
  s.rho_rate = std::move(rho_rate);
  return s;
}

FlowSolution invert_continuity(const DensityFamily& family, double t, const NeumannPoisson& poisson,
                               const FlowOptions& opts) {
  const InverseMetricField& m = poisson.metric();
  ScalarField rho = family.density(m, t);
  ScalarField rate = family.density_rate(m, t);
  std::vector<double> source(rate.values.size());
  for (std::size_t k = 0; k < source.size(); ++k) source[k] = -rate.values[k];
  std::vector<double> phi;
  const SolveReport rep = poisson.solve(source, phi);
  FlowSolution s = flow_from_potential(poisson, std::move(phi), std::move(rho), std::move(rate), opts.p_floor);
  s.report = rep;
  return s;
}

FlowSolution invert_continuity(const DensityFamily& family, double t, const InverseMetricField& metric,
                               const FlowOptions& opts) {
  const NeumannPoisson poisson(metric, opts.solver);
  return invert_continuity(family, t, poisson, opts);
}

double continuity_residual(const FlowSolution& flow, const NeumannPoisson& poisson) {
  const InverseMetricField& m = poisson.metric();
  const Grid2D& g = *m.grid;
  FaceField mass_flux = flow.velocity;
  for (std::size_t k = 0; k < g.size(); ++k) {
    const int i = g.i_of(k), j = g.j_of(k);
    if (mass_flux.has_x[k]) {
      const double sg = 0.5 * (m.sqrt_det_g[k] + m.sqrt_det_g[g.index(i + 1, j)]);
      mass_flux.x[k] = std::max(flow.rho_face_x[k], flow.rho_floor) * flow.velocity.x[k] * sg;
    }
    if (mass_flux.has_y[k]) {
      const double sg = 0.5 * (m.sqrt_det_g[k] + m.sqrt_det_g[g.index(i, j + 1)]);
      mass_flux.y[k] = std::max(flow.rho_face_y[k], flow.rho_floor) * flow.velocity.y[k] * sg;
    }
  }
  const std::vector<double> div = poisson.divergence(mass_flux);
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (g.cls(k) != NodeClass::Interior || !(flow.rho.values[k] >= flow.rho_floor)) continue;
    const double r = div[k] + flow.rho_rate.values[k];
    num += r * r;
    den += flow.rho_rate.values[k] * flow.rho_rate.values[k];
  }
  return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

}  // namespace geoeffect
