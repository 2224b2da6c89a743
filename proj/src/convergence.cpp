#include <algorithm>
#include <cmath>
#include <numbers>

#include "geoeffect/elliptic.hpp"
#include "geoeffect/error.hpp"

namespace geoeffect {

ManufacturedSolution sine_product_solution() {
  constexpr double pi = std::numbers::pi;
  return {"sin(pi x) sin(pi y)",
          [](Vec2 p) { return std::sin(pi * p.x) * std::sin(pi * p.y); },
          [](Vec2 p) {
            return Vec2{pi * std::cos(pi * p.x) * std::sin(pi * p.y), pi * std::sin(pi * p.x) * std::cos(pi * p.y)};
          },
          [](Vec2 p) {
            const double s = std::sin(pi * p.x) * std::sin(pi * p.y);
            return Sym2{-pi * pi * s, pi * pi * std::cos(pi * p.x) * std::cos(pi * p.y), -pi * pi * s};
          }};
}

ManufacturedSolution linear_solution(double a, double bx, double by) {
  return {"linear", [=](Vec2 p) { return a + bx * p.x + by * p.y; }, [=](Vec2) { return Vec2{bx, by}; },
          [](Vec2) { return Sym2{}; }};
}

ManufacturedSolution mixed_solution() {
  return {"x y + exp(x/2) cos(y)",
          [](Vec2 p) { return p.x * p.y + std::exp(0.5 * p.x) * std::cos(p.y); },
          [](Vec2 p) {
            const double e = std::exp(0.5 * p.x);
            return Vec2{p.y + 0.5 * e * std::cos(p.y), p.x - e * std::sin(p.y)};
          },
          [](Vec2 p) {
            const double e = std::exp(0.5 * p.x);
            return Sym2{0.25 * e * std::cos(p.y), 1.0 - 0.5 * e * std::sin(p.y), -e * std::cos(p.y)};
          }};
}

ManufacturedError manufactured_error(const ConvergenceProblem& pb, double h, const SolverOptions& opts) {
  const GridPtr grid = build_grid(pb.domain, h);
  const InverseMetricField metric = sample_metric(pb.metric, grid);
  LinearSystem sys = assemble_eq17(metric, pb.params);
  const double shift = pb.params.screening();
  // Manufactured source f = L P* + (2m/hbar^2) C P*; interior rows read A P = -h^2 f.
  for (std::size_t r = 0; r < sys.node_of_row.size(); ++r) {
    if (sys.dirichlet[r]) continue;
    const std::size_t k = sys.node_of_row[r];
    const Vec2 p = grid->coord(k);
    const Sym2 H = pb.exact.hessian(p);
    const Vec2 d = pb.exact.gradient(p);
    const double f = metric.g11[k] * H.a11 + 2.0 * metric.g12[k] * H.a12 + metric.g22[k] * H.a22 +
                     metric.drift_x[k] * d.x + metric.drift_y[k] * d.y + shift * pb.exact.value(p);
    sys.rhs[r] = -sys.interior_scale * f;
  }
  const ScalarField bd = boundary_data(grid, pb.exact.value);
  const Eq17Solution sol = solve_eq17(sys, bd, opts);
  ManufacturedError out;
  for (std::size_t k = 0; k < grid->size(); ++k) {
    if (!grid->active(k)) continue;
    const double ex = pb.exact.value(grid->coord(k));
    out.scale = std::max(out.scale, std::abs(ex));
    out.error_linf = std::max(out.error_linf, std::abs(sol.P.values[k] - ex));
  }
  out.report = sol.report;
  return out;
}

ConvergenceResult convergence_study(const ConvergenceProblem& pb, std::span<const double> h_list,
                                    const SolverOptions& opts) {
  if (h_list.size() < 3) throw Error(ErrorCode::InvalidArgument, "convergence study needs at least 3 spacings");
  for (std::size_t k = 1; k < h_list.size(); ++k) {
    if (std::abs(h_list[k] - 0.5 * h_list[k - 1]) > 1e-12 * h_list[k - 1]) {
      throw Error(ErrorCode::InvalidArgument, "each spacing must halve the previous one");
    }
  }
  ConvergenceResult res;
  double scale = 0.0;
  for (double h : h_list) {
    const ManufacturedError e = manufactured_error(pb, h, opts);
    scale = std::max(scale, e.scale);
    res.h.push_back(h);
    res.error_linf.push_back(e.error_linf);
  }

  const double roundoff = 1e-10 * std::max(1.0, scale);
  res.exact = true;
  for (double e : res.error_linf) res.exact = res.exact && e <= roundoff;
  if (res.exact) return res;

  for (std::size_t k = 1; k < res.h.size(); ++k) {
    if (!(res.error_linf[k] < res.error_linf[k - 1])) {
      throw Error(ErrorCode::NotRefining, "L-infinity error did not decrease under refinement");
    }
    res.pairwise_order.push_back(std::log(res.error_linf[k - 1] / res.error_linf[k]) /
                                 std::log(res.h[k - 1] / res.h[k]));
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(res.h.size());
  for (std::size_t k = 0; k < res.h.size(); ++k) {
    const double x = std::log(res.h[k]);
    const double y = std::log(res.error_linf[k]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  res.order = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return res;
}

}  // namespace geoeffect
