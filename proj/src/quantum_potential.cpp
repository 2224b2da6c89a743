#include <algorithm>
#include <cmath>

#include "geoeffect/error.hpp"
#include "geoeffect/hydro.hpp"

namespace geoeffect {

std::size_t QuantumPotentialField::defined_count() const {
  return static_cast<std::size_t>(std::count(defined.begin(), defined.end(), std::uint8_t{1}));
}

double QuantumPotentialField::mean() const {
  double s = 0.0;
  std::size_t n = 0;
  for (std::size_t k = 0; k < defined.size(); ++k) {
    if (defined[k]) {
      s += Q.values[k];
      ++n;
    }
  }
  return n ? s / static_cast<double>(n) : 0.0;
}

double QuantumPotentialField::stddev() const {
  const double mu = mean();
  double s = 0.0;
  std::size_t n = 0;
  for (std::size_t k = 0; k < defined.size(); ++k) {
    if (defined[k]) {
      s += (Q.values[k] - mu) * (Q.values[k] - mu);
      ++n;
    }
  }
  return n ? std::sqrt(s / static_cast<double>(n)) : 0.0;
}

namespace {

double stencil_apply(const Grid2D& g, const Stencil& s, std::size_t k, const std::vector<double>& v) {
  const int i = g.i_of(k), j = g.j_of(k);
  double acc = 0.0;
  for (int n = 0; n < s.size; ++n) acc += s.entries[n].weight * v[g.index(i + s.entries[n].di, j + s.entries[n].dj)];
  return acc;
}

}  // namespace

QuantumPotentialField quantum_potential(const ScalarField& P, const InverseMetricField& metric, double m,
                                        double hbar, double p_floor, QuantumPotentialScheme scheme) {
  if (!(m > 0.0) || !(hbar > 0.0)) throw Error(ErrorCode::InvalidArgument, "mass and hbar must be positive");
  if (P.grid != metric.grid && P.values.size() != metric.grid->size()) {
    throw Error(ErrorCode::GridMismatch, "amplitude and metric live on different grids");
  }
  const Grid2D& g = *metric.grid;
  double pmax = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (g.active(k)) pmax = std::max(pmax, P.values[k]);
  }
  if (p_floor < 0.0) p_floor = 1e-6 * pmax;

  QuantumPotentialField out;
  out.Q = ScalarField::zeros(metric.grid, ScalarRole::QuantumPotential);
  out.defined.assign(g.size(), 0);
  out.m = m;
  out.hbar = hbar;
  out.p_floor = p_floor;
  const double pref = -hbar * hbar / (2.0 * m);
  const double h = g.spacing();

  std::vector<double> rho;
  if (scheme == QuantumPotentialScheme::DensityExpansion) {
    rho.resize(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) rho[k] = P.values[k] * P.values[k];
  }

  std::size_t count = 0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (g.cls(k) != NodeClass::Interior) continue;
    const double p = P.values[k];
    if (!(p >= p_floor) || p <= 0.0) continue;
    const Stencil s = laplace_beltrami_stencil(metric, k, FirstOrderScheme::Central);
    double ratio;
    if (scheme == QuantumPotentialScheme::AmplitudeStencil) {
      ratio = stencil_apply(g, s, k, P.values) / p;
    } else {
      const int i = g.i_of(k), j = g.j_of(k);
      const double r = rho[k];
      const double rx = (rho[g.index(i + 1, j)] - rho[g.index(i - 1, j)]) / (2.0 * h);
      const double ry = (rho[g.index(i, j + 1)] - rho[g.index(i, j - 1)]) / (2.0 * h);
      const Sym2 G = metric.at(k);
      const double grad2 = G.a11 * rx * rx + 2.0 * G.a12 * rx * ry + G.a22 * ry * ry;
      ratio = stencil_apply(g, s, k, rho) / (2.0 * r) - grad2 / (4.0 * r * r);
    }
    out.Q.values[k] = pref * ratio;
    out.defined[k] = 1;
    ++count;
  }
  if (count == 0) throw Error(ErrorCode::AllMasked, "every interior node lies below the amplitude floor");
  return out;
}

void exclude_boundary_layer(QuantumPotentialField& Q, double width) {
  if (!(width >= 0.0)) throw Error(ErrorCode::InvalidArgument, "boundary layer width must be nonnegative");
  const Grid2D& g = *Q.Q.grid;
  const double h = g.spacing();
  const int reach = static_cast<int>(std::ceil(width / h));
  const double w2 = width * width;
  std::vector<std::uint8_t> keep = Q.defined;
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (!Q.defined[k]) continue;
    const int i = g.i_of(k), j = g.j_of(k);
    for (int dj = -reach; dj <= reach && keep[k]; ++dj) {
      for (int di = -reach; di <= reach; ++di) {
        if (g.cls(i + di, j + dj) != NodeClass::Boundary) continue;
        if ((di * di + dj * dj) * h * h < w2) {
          keep[k] = 0;
          break;
        }
      }
    }
  }
  std::size_t left = 0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (!keep[k]) Q.Q.values[k] = 0.0;
    left += keep[k];
  }
  if (left == 0) throw Error(ErrorCode::AllMasked, "boundary layer covers every interior node");
  Q.defined = std::move(keep);
}

VectorField masked_gradient(const GridPtr& grid, const std::vector<double>& values,
                            const std::vector<std::uint8_t>& defined, VectorRole role) {
  const Grid2D& g = *grid;
  VectorField out = VectorField::zeros(grid, role);
  const double h = g.spacing();
  auto on = [&](int i, int j) { return g.in_range(i, j) && defined[g.index(i, j)]; };
  auto partial = [&](int i, int j, int di, int dj, double& d) {
    const bool fwd = on(i + di, j + dj), bwd = on(i - di, j - dj);
    const double c = values[g.index(i, j)];
    if (fwd && bwd) {
      d = (values[g.index(i + di, j + dj)] - values[g.index(i - di, j - dj)]) / (2.0 * h);
    } else if (fwd) {
      d = (values[g.index(i + di, j + dj)] - c) / h;
    } else if (bwd) {
      d = (c - values[g.index(i - di, j - dj)]) / h;
    } else {
      return false;
    }
    return true;
  };
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (!defined[k]) continue;
    const int i = g.i_of(k), j = g.j_of(k);
    double dx = 0.0, dy = 0.0;
    if (partial(i, j, 1, 0, dx) && partial(i, j, 0, 1, dy)) {
      out.x[k] = dx;
      out.y[k] = dy;
      out.defined[k] = 1;
    }
  }
  return out;
}

VectorField quantum_force(const QuantumPotentialField& Q) {
  VectorField f = masked_gradient(Q.Q.grid, Q.Q.values, Q.defined, VectorRole::QuantumForce);
  for (std::size_t k = 0; k < f.x.size(); ++k) {
    if (!f.defined[k]) continue;
    f.x[k] = -f.x[k];
    f.y[k] = -f.y[k];
  }
  return f;
}

}  // namespace geoeffect
