#include "geoeffect/elliptic.hpp"

#include <cmath>

#include "geoeffect/error.hpp"

namespace geoeffect {

void Stencil::add(int di, int dj, double w) {
  for (int n = 0; n < size; ++n) {
    if (entries[n].di == di && entries[n].dj == dj) {
      entries[n].weight += w;
      return;
    }
  }
  entries[size++] = {di, dj, w};
}

Stencil laplace_beltrami_stencil(const InverseMetricField& metric, std::size_t node, FirstOrderScheme scheme) {
  const Grid2D& g = *metric.grid;
  const int i = g.i_of(node);
  const int j = g.j_of(node);
  const double h = g.spacing();
  const double h2 = h * h;
  const Sym2 G = metric.at(node);
  const double bx = metric.drift_x[node];
  const double by = metric.drift_y[node];

  Stencil s;
  s.add(0, 0, -2.0 * (G.a11 + G.a22) / h2);
  s.add(1, 0, G.a11 / h2);
  s.add(-1, 0, G.a11 / h2);
  s.add(0, 1, G.a22 / h2);
  s.add(0, -1, G.a22 / h2);

  if (G.a12 != 0.0) {
    const bool ne = g.active(i + 1, j + 1), sw = g.active(i - 1, j - 1);
    const bool nw = g.active(i - 1, j + 1), se = g.active(i + 1, j - 1);
    const double c = 2.0 * G.a12;  // coefficient of d_xy
    if (ne && sw && nw && se) {
      s.cross = CrossStencil::FourPoint;
      const double w = c / (4.0 * h2);
      s.add(1, 1, w);
      s.add(-1, -1, w);
      s.add(-1, 1, -w);
      s.add(1, -1, -w);
    } else if (ne && sw) {
      s.cross = CrossStencil::NortheastSouthwest;
      const double w = c / (2.0 * h2);
      s.add(1, 1, w);
      s.add(-1, -1, w);
      s.add(1, 0, -w);
      s.add(-1, 0, -w);
      s.add(0, 1, -w);
      s.add(0, -1, -w);
      s.add(0, 0, 2.0 * w);
    } else if (nw && se) {
      s.cross = CrossStencil::NorthwestSoutheast;
      const double w = -c / (2.0 * h2);
      s.add(-1, 1, w);
      s.add(1, -1, w);
      s.add(1, 0, -w);
      s.add(-1, 0, -w);
      s.add(0, 1, -w);
      s.add(0, -1, -w);
      s.add(0, 0, 2.0 * w);
    } else {
      s.cross = CrossStencil::Dropped;
    }
  }

  const double bound = 2.0 * G.min_eigenvalue();
  auto first_order = [&](double b, int dx, int dy, bool& upwind) {
    if (b == 0.0) return;
    if (scheme == FirstOrderScheme::Central || h * std::abs(b) <= bound) {
      s.add(dx, dy, b / (2.0 * h));
      s.add(-dx, -dy, -b / (2.0 * h));
      return;
    }
    upwind = true;
    if (b > 0.0) {
      s.add(dx, dy, b / h);
      s.add(0, 0, -b / h);
    } else {
      s.add(0, 0, b / h);
      s.add(-dx, -dy, -b / h);
    }
  };
  first_order(bx, 1, 0, s.upwind_x);
  first_order(by, 0, 1, s.upwind_y);
  return s;
}

std::vector<double> apply_laplace_beltrami(const InverseMetricField& metric, std::span<const double> values,
                                           FirstOrderScheme scheme) {
  const Grid2D& g = *metric.grid;
  std::vector<double> out(g.size(), 0.0);
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (g.cls(k) != NodeClass::Interior) continue;
    const Stencil s = laplace_beltrami_stencil(metric, k, scheme);
    const int i = g.i_of(k), j = g.j_of(k);
    double acc = 0.0;
    for (int n = 0; n < s.size; ++n) {
      acc += s.entries[n].weight * values[g.index(i + s.entries[n].di, j + s.entries[n].dj)];
    }
    out[k] = acc;
  }
  return out;
}

LinearSystem assemble_eq17(const InverseMetricField& metric, const Eq17Params& params) {
  if (!(params.m > 0.0) || !(params.hbar > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "mass and hbar must be positive");
  }
  LinearSystem sys;
  sys.grid = metric.grid;
  sys.params = params;
  const Grid2D& g = *metric.grid;
  sys.row_of_node.assign(g.size(), -1);
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (!g.active(k)) continue;
    sys.row_of_node[k] = static_cast<int>(sys.node_of_row.size());
    sys.node_of_row.push_back(k);
    sys.dirichlet.push_back(g.cls(k) == NodeClass::Boundary ? 1 : 0);
  }
  const int n = static_cast<int>(sys.node_of_row.size());
  sys.rhs.assign(n, 0.0);

  const double shift = params.screening();
  const bool cross = metric.has_cross_terms();
  const double h2 = g.spacing() * g.spacing();
  sys.interior_scale = h2;
  std::vector<Triplet> t;
  t.reserve(static_cast<std::size_t>(n) * 7);
  AssemblyStats& st = sys.stats;
  for (int r = 0; r < n; ++r) {
    const std::size_t k = sys.node_of_row[r];
    if (sys.dirichlet[r]) {
      t.push_back({r, r, 1.0});
      ++st.boundary_rows;
      continue;
    }
    ++st.interior_rows;
    const Stencil s = laplace_beltrami_stencil(metric, k, FirstOrderScheme::Auto);
    const int i = g.i_of(k), j = g.j_of(k);
    double diag = 0.0;
    double off_sum = 0.0;
    bool off_signs_ok = true;
    for (int e = 0; e < s.size; ++e) {
      const auto& en = s.entries[e];
      const int c = sys.row_of_node[g.index(i + en.di, j + en.dj)];
      const double a = -en.weight * h2;
      if (en.di == 0 && en.dj == 0) {
        diag = a - shift * h2;
        t.push_back({r, c, diag});
      } else {
        t.push_back({r, c, a});
        off_sum += std::abs(a);
        if (a > 0.0) off_signs_ok = false;
      }
    }
    const int upwind_axes = (s.upwind_x ? 1 : 0) + (s.upwind_y ? 1 : 0);
    if (upwind_axes) {
      ++st.upwind_rows;
      st.upwind_axis_terms += upwind_axes;
    } else {
      ++st.central_rows;
    }
    if (s.cross == CrossStencil::NortheastSouthwest || s.cross == CrossStencil::NorthwestSoutheast) {
      ++st.cross_variant_rows;
    }
    if (s.cross == CrossStencil::Dropped) ++st.cross_dropped_rows;
    // Row-wise M-matrix test; the off-diagonal sum is exact up to rounding of
    // the +-b/2h pairs, hence the relative slack.
    if (!cross && shift <= 0.0) {
      const bool dominant = diag >= off_sum * (1.0 - 1e-12);
      if (!(diag > 0.0) || !off_signs_ok || !dominant) ++st.m_matrix_violations;
    }
  }
  st.mesh_peclet_ok = st.upwind_rows == 0;
  st.m_matrix = !cross && shift <= 0.0 && st.m_matrix_violations == 0;
  sys.A = csr_from_triplets(n, std::move(t), true);
  return sys;
}

Eq17Solution solve_eq17(const LinearSystem& system, const ScalarField& bdata, const SolverOptions& opts) {
  if (!(opts.tol >= 1e-14 && opts.tol <= 1e-6)) {
    throw Error(ErrorCode::InvalidArgument, "solver tolerance must lie in [1e-14, 1e-6]");
  }
  if (bdata.values.size() != system.grid->size()) {
    throw Error(ErrorCode::GridMismatch, "boundary data lives on a different grid");
  }
  Eq17Solution out{ScalarField::zeros(system.grid, ScalarRole::Amplitude), {}};
  std::vector<double> rhs = system.rhs;
  for (std::size_t r = 0; r < rhs.size(); ++r) {
    if (system.dirichlet[r]) rhs[r] = bdata.values[system.node_of_row[r]];
  }
  if (system.stats.interior_rows == 0) {
    // Thin domain: every active node is a Dirichlet node.
    for (std::size_t r = 0; r < rhs.size(); ++r) out.P.values[system.node_of_row[r]] = rhs[r];
    out.report.degenerate = true;
    out.report.converged = true;
    return out;
  }
  std::vector<double> x;
  out.report = solve_sparse(system.A, rhs, x, opts);
  for (std::size_t r = 0; r < x.size(); ++r) out.P.values[system.node_of_row[r]] = x[r];
  return out;
}

ScalarField boundary_data(const GridPtr& grid, const std::function<double(Vec2)>& f) {
  ScalarField b = ScalarField::zeros(grid, ScalarRole::Amplitude);
  for (std::size_t k = 0; k < grid->size(); ++k) {
    if (grid->cls(k) == NodeClass::Boundary) b.values[k] = f(grid->coord(k));
  }
  return b;
}

}  // namespace geoeffect
