#pragma once

#include <array>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "geoeffect/fields.hpp"
#include "geoeffect/metric.hpp"
#include "geoeffect/sparse.hpp"

namespace geoeffect {

/// Physical constants of the classicality equation
///   g^{ij} d_i d_j P + b^j d_j P + (2m / hbar^2) C P = 0.
struct Eq17Params {
  double C = 0.0;
  double m = 1.0;
  double hbar = 1.0;

  double screening() const { return 2.0 * m / (hbar * hbar) * C; }
};

enum class FirstOrderScheme { Auto, Central };
enum class CrossStencil { None, FourPoint, NortheastSouthwest, NorthwestSoutheast, Dropped };

struct StencilEntry {
  int di = 0;
  int dj = 0;
  double weight = 0.0;
};

/// Discrete Laplace-Beltrami operator at one node, as weights on P.
struct Stencil {
  std::array<StencilEntry, 9> entries{};
  int size = 0;
  bool upwind_x = false;
  bool upwind_y = false;
  CrossStencil cross = CrossStencil::None;

  void add(int di, int dj, double w);
};

/// Stencil of g^{ij} d_i d_j + b^j d_j at an Interior node: second-order
/// central differences for the second derivatives, the 4-point corner
/// stencil for the mixed derivative (7-point variants when a corner is
/// exterior), and central first-order terms unless `Auto` finds the axis
/// violates the mesh-Peclet bound h |b^j| <= 2 lambda_min(g^{-1}), in which
/// case that axis is upwinded.
Stencil laplace_beltrami_stencil(const InverseMetricField& metric, std::size_t node, FirstOrderScheme scheme);

/// Applies the stencil at every Interior node; other nodes get 0.
std::vector<double> apply_laplace_beltrami(const InverseMetricField& metric, std::span<const double> values,
                                           FirstOrderScheme scheme);

struct AssemblyStats {
  std::size_t interior_rows = 0;
  std::size_t boundary_rows = 0;
  std::size_t central_rows = 0;
  std::size_t upwind_rows = 0;
  std::size_t upwind_axis_terms = 0;
  std::size_t cross_variant_rows = 0;
  std::size_t cross_dropped_rows = 0;
  std::size_t m_matrix_violations = 0;
  bool mesh_peclet_ok = true;
  bool m_matrix = true;
};

/// Assembled Dirichlet problem. Row r holds node node_of_row[r]; Interior rows
/// carry -h^2 (L_g + 2mC/hbar^2), Boundary rows are identity rows.
struct LinearSystem {
  GridPtr grid;
  CsrMatrix A;
  std::vector<double> rhs;
  std::vector<int> row_of_node;
  std::vector<std::size_t> node_of_row;
  std::vector<std::uint8_t> dirichlet;
  Eq17Params params;
  AssemblyStats stats;
  double interior_scale = 1.0;  // h^2, the factor applied to Interior rows
};

LinearSystem assemble_eq17(const InverseMetricField& metric, const Eq17Params& params);

struct Eq17Solution {
  ScalarField P;
  SolveReport report;
};

/// Solves the assembled system with `boundary_data` on Boundary nodes.
/// Interior entries of system.rhs (zero unless a source was folded in) are
/// kept. tol must lie in [1e-14, 1e-6].
Eq17Solution solve_eq17(const LinearSystem& system, const ScalarField& boundary_data,
                        const SolverOptions& opts = {});

/// Boundary data sampled from a function of position (zero off the boundary).
ScalarField boundary_data(const GridPtr& grid, const std::function<double(Vec2)>& f);

// ---- strong maximum principle -------------------------------------------

enum class SmpVerdict { MaxOnBoundary, ConstantField, Violation };
std::string_view to_string(SmpVerdict v);

struct Extremum {
  double value = 0.0;
  std::size_t node = 0;
  Vec2 where{};
};

struct SMPReport {
  Extremum interior_max;
  Extremum boundary_max;
  Extremum interior_min;
  Extremum boundary_min;
  double margin = 0.0;  // boundary_max - interior_max
  SmpVerdict verdict = SmpVerdict::MaxOnBoundary;
};

/// Scans Interior vs Boundary nodes. ConstantField iff global max - min <=
/// tol_const; Violation iff interior max exceeds boundary max by more than
/// tol_smp. Ties resolve to the first node in row-major order. Throws
/// EmptyInterior when the grid has no Interior node.
SMPReport verify_smp(const ScalarField& field, double tol_smp, double tol_const);

/// Fraction of `rays` rays from the domain centroid along which the
/// bilinearly interpolated field is nonincreasing from the boundary inward.
double monotone_ray_fraction(const ScalarField& field, const Domain& domain, int rays);

// ---- manufactured-solution convergence ----------------------------------

struct ManufacturedSolution {
  std::string name;
  std::function<double(Vec2)> value;
  std::function<Vec2(Vec2)> gradient;
  std::function<Sym2(Vec2)> hessian;
};

ManufacturedSolution sine_product_solution();                  // sin(pi x) sin(pi y)
ManufacturedSolution linear_solution(double a, double bx, double by);  // a + bx x + by y
ManufacturedSolution mixed_solution();                         // x y + exp(x/2) cos(y)

struct ConvergenceProblem {
  Domain domain;
  MetricSpec metric;
  Eq17Params params;
  ManufacturedSolution exact;
};

struct ConvergenceResult {
  std::vector<double> h;
  std::vector<double> error_linf;
  std::vector<double> pairwise_order;
  double order = 0.0;  // least-squares slope of log error against log h
  bool exact = false;  // errors at round-off level; order undefined
};

struct ManufacturedError {
  double error_linf = 0.0;
  double scale = 0.0;  // max |P*| over active nodes
  SolveReport report;
};

/// L-infinity error of the manufactured problem at one spacing.
ManufacturedError manufactured_error(const ConvergenceProblem& problem, double h, const SolverOptions& opts = {});

/// Solves the manufactured problem (source folded into the right-hand side,
/// exact Dirichlet data) on each spacing and estimates the L-infinity order.
/// Needs >= 3 spacings, each half the previous. Throws NotRefining if the
/// error fails to decrease.
ConvergenceResult convergence_study(const ConvergenceProblem& problem, std::span<const double> h_list,
                                    const SolverOptions& opts = {});

}  // namespace geoeffect
