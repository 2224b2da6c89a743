#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "geoeffect/elliptic.hpp"
#include "geoeffect/fields.hpp"
#include "geoeffect/metric.hpp"
#include "geoeffect/sparse.hpp"

namespace geoeffect {

// ---- quantum potential and force ----------------------------------------

enum class QuantumPotentialScheme {
  /// Q from the density rho = P^2 through
  ///   Delta_g sqrt(rho) / sqrt(rho) = Delta_g rho / (2 rho) - |grad rho|_g^2 / (4 rho^2),
  /// all derivatives central. Carries an O(h^2) truncation error relative to
  /// the assembly stencil, which is what grid-refinement studies observe.
  DensityExpansion,
  /// The assembly stencil applied to P directly; on a discrete solution of the
  /// classicality equation this returns C to solver round-off.
  AmplitudeStencil,
};

struct QuantumPotentialField {
  ScalarField Q;
  std::vector<std::uint8_t> defined;  // Interior nodes with P >= p_floor
  double m = 1.0;
  double hbar = 1.0;
  double p_floor = 0.0;

  std::size_t defined_count() const;
  double mean() const;
  double stddev() const;
};

/// Q = -(hbar^2 / 2m) Delta_g P / P on Interior nodes with P >= p_floor.
/// A negative p_floor selects the default 1e-6 max(P). Throws AllMasked if
/// no Interior node survives the floor.
QuantumPotentialField quantum_potential(const ScalarField& P, const InverseMetricField& metric, double m,
                                        double hbar, double p_floor = -1.0,
                                        QuantumPotentialScheme scheme = QuantumPotentialScheme::DensityExpansion);

/// Masks Q at Interior nodes closer than `width` to a Boundary node. The
/// staircase boundary leaves O(1) grid-scale roughness in Q within a few
/// cells of the boundary, so refinement studies compare fields on a layer of
/// fixed physical width.
void exclude_boundary_layer(QuantumPotentialField& Q, double width);

/// F = -grad Q (coordinate gradient), central where both neighbours carry Q,
/// one-sided at the edge of the defined set.
VectorField quantum_force(const QuantumPotentialField& Q);

/// Coordinate gradient of `values` over the nodes flagged in `defined`.
VectorField masked_gradient(const GridPtr& grid, const std::vector<double>& values,
                            const std::vector<std::uint8_t>& defined, VectorRole role);

// ---- density families ----------------------------------------------------

/// rho = M / (2 pi sigma(t)^2) exp(-|x - c|^2 / (2 sigma(t)^2)),
/// sigma(t) = sigma0 (1 + amplitude sin(omega t)).
struct BreathingGaussian {
  Vec2 center{};
  double sigma0 = 0.15;
  double amplitude = 0.1;
  double omega = 6.283185307179586;
  double mass = 1.0;

  double sigma(double t) const;
  double sigma_rate(double t) const;
};

/// Fixed-width Gaussian whose centre moves as c + v t.
struct TranslatingGaussian {
  Vec2 center{};
  Vec2 velocity{0.5, 0.0};
  double sigma = 0.15;
  double mass = 1.0;
};

enum class DensityKind { Static, BreathingGaussian, TranslatingGaussian, SolvedClassical };
enum class TimeDerivativePolicy { Analytic, CentralDifference };

/// Time-dependent density on a grid. Analytic families are densities with
/// respect to the Riemannian volume: the coordinate Gaussian is divided by
/// sqrt(g), so the mass integral of rho sqrt(g) dx is time independent for
/// every metric.
class DensityFamily {
public:
  static DensityFamily static_density(ScalarField rho);
  static DensityFamily solved_classical(ScalarField amplitude);
  static DensityFamily breathing(const BreathingGaussian& p);
  static DensityFamily translating(const TranslatingGaussian& p);

  /// Same family with d rho / dt taken by central differences over `dt`.
  DensityFamily with_central_difference(double dt) const;

  DensityKind kind() const { return kind_; }
  TimeDerivativePolicy policy() const { return policy_; }
  double difference_step() const { return dt_; }
  const BreathingGaussian& breathing_params() const { return std::get<BreathingGaussian>(data_); }
  const TranslatingGaussian& translating_params() const { return std::get<TranslatingGaussian>(data_); }

  ScalarField density(const InverseMetricField& metric, double t) const;
  ScalarField density_rate(const InverseMetricField& metric, double t) const;
  /// sqrt(rho), the amplitude P.
  ScalarField amplitude(const InverseMetricField& metric, double t) const;
  /// Sum of rho sqrt(g) h^2 over active nodes.
  double mass(const InverseMetricField& metric, double t) const;

private:
  using Data = std::variant<ScalarField, BreathingGaussian, TranslatingGaussian>;
  DensityFamily(DensityKind k, Data d) : kind_(k), data_(std::move(d)) {}
  ScalarField analytic_rate(const InverseMetricField& metric, double t) const;

  DensityKind kind_;
  Data data_;
  TimeDerivativePolicy policy_ = TimeDerivativePolicy::Analytic;
  double dt_ = 0.0;
};

// ---- continuity inversion -------------------------------------------------

/// Face-centred values: x-faces join (i, j)-(i+1, j) and are stored at (i, j);
/// y-faces join (i, j)-(i, j+1) and are stored at (i, j). A face exists when
/// both endpoints are active.
struct FaceField {
  std::vector<double> x, y;
  std::vector<std::uint8_t> has_x, has_y;
};

/// Zero-flux Poisson operator div_g(g grad phi) in conservative (face flux)
/// form on the active nodes, factorized once.
class NeumannPoisson {
public:
  NeumannPoisson(const InverseMetricField& metric, const SolverOptions& opts = {});

  /// Solves Delta_g phi = source, after projecting the source onto the
  /// solvable subspace. Throws IncompatibleSource when the source's weighted
  /// integral exceeds 1e-6 of its weighted L1 norm.
  SolveReport solve(const std::vector<double>& source, std::vector<double>& phi) const;

  /// Face fluxes J = sqrt(g) g^{ij} d_j phi / sqrt(g) evaluated consistently
  /// with the operator (div of these fluxes reproduces the operator exactly).
  FaceField fluxes(const std::vector<double>& phi) const;
  /// Discrete div_g of face fluxes at active nodes.
  std::vector<double> divergence(const FaceField& flux) const;
  /// Weighted mean-zero projection (weights sqrt(g) h^2 over active nodes).
  std::vector<double> project_gauge(std::vector<double> phi) const;

  const InverseMetricField& metric() const { return *metric_; }

private:
  const InverseMetricField* metric_;
  CsrMatrix full_;  // singular Neumann operator
  std::vector<int> row_of_node_;
  std::vector<std::size_t> node_of_row_;
  int pinned_row_ = 0;
  std::unique_ptr<SparseSolver> solver_;
};

struct FlowOptions {
  /// Amplitude floor; negative selects 1e-6 max sqrt(rho). Velocities divide
  /// by max(rho, p_floor^2).
  double p_floor = -1.0;
  SolverOptions solver{};
};

struct FlowSolution {
  VectorField u;  // nodal velocity
  ScalarField phi;
  ScalarField rho;
  ScalarField rho_rate;
  FaceField current;   // J on faces
  FaceField velocity;  // u on faces, J / max(rho_face, floor^2)
  std::vector<double> rho_face_x, rho_face_y;
  SolveReport report;
  double rho_floor = 0.0;
};

/// Irrotational flow reconstruction: Delta_g phi = -d rho/dt with zero-flux
/// boundaries and zero-mean gauge, J = g grad phi, u = J / rho.
FlowSolution invert_continuity(const DensityFamily& family, double t, const InverseMetricField& metric,
                               const FlowOptions& opts = {});
FlowSolution invert_continuity(const DensityFamily& family, double t, const NeumannPoisson& poisson,
                               const FlowOptions& opts = {});

/// Builds the flow fields from an (ungauged) potential.
FlowSolution flow_from_potential(const NeumannPoisson& poisson, std::vector<double> phi, ScalarField rho,
                                 ScalarField rho_rate, double p_floor);

/// ||div_g(rho u) + d rho/dt||_2 / ||d rho/dt||_2 over Interior nodes with
/// rho >= rho_floor, using the face representation of rho u.
double continuity_residual(const FlowSolution& flow, const NeumannPoisson& poisson);

// ---- Green's-function oracle ---------------------------------------------

struct GreensOptions {
  /// Velocities are produced on nodes with rho >= target_fraction max(rho).
  double target_fraction = 1e-6;
};

/// Free-space flow by direct summation with the 2D kernel -(1/2 pi) ln r:
/// phi(x) = sum d rho/dt(x') G(x - x') h^2 (cell-averaged self term),
/// u = grad phi / rho by central differences. Flat metric only; requires rho
/// below 1e-8 max(rho) outside the inner half of the grid.
VectorField greens_flow_oracle(const DensityFamily& family, double t, const InverseMetricField& metric,
                               const GreensOptions& opts = {});

/// ||a - b||_2 / ||b||_2 over nodes where both are defined and rho >= fraction max(rho).
double relative_l2_difference(const VectorField& a, const VectorField& b, const ScalarField& rho, double fraction);

// ---- external force --------------------------------------------------------

struct ExternalForceResult {
  VectorField force;             // m (du/dt + (u.grad)u) + grad Q
  VectorField inertial;          // m (du/dt + (u.grad)u)
  VectorField quantum_gradient;  // grad Q_g(sqrt(rho))
  double quantum_gradient_max = 0.0;
  double masked_fraction = 0.0;
};

struct ForceOptions {
  FlowOptions flow{};
  /// Forces are reported on Interior nodes with rho >= region_fraction max(rho).
  double region_fraction = 1e-3;
};

/// External force that makes (rho, u) a solution of the Madelung momentum
/// equation. du/dt by central differences over dt.
ExternalForceResult external_force(const DensityFamily& family, const InverseMetricField& metric, double m,
                                   double hbar, double t, double dt, const ForceOptions& opts = {});

/// Relative residual of the discrete momentum equation for (rho, u, F):
/// ||m (du/dt + (u.grad)u) + grad Q - F|| / ||F||, where du/dt is re-derived
/// from independent inversions at t -+ dt/2.
double madelung_residual(const DensityFamily& family, const InverseMetricField& metric, double m, double hbar,
                         double t, double dt, const ExternalForceResult& force, const ForceOptions& opts = {});

}  // namespace geoeffect
