#pragma once

#include <array>
#include <string_view>
#include <vector>

#include "geoeffect/elliptic.hpp"
#include "geoeffect/metric.hpp"

namespace geoeffect {

// Coordinates are (t, x), index 0 = t, index 1 = x. Signature (+, -):
// Minkowski is g_{mu nu} = diag(c^2, -1), g^{mu nu} = diag(1/c^2, -1).

enum class SpacetimeKind { Minkowski, ConformalMinkowski };

/// omega(t, x) = amplitude sin(kt t + kx x + phase).
struct ConformalWave {
  double amplitude = 0.1;
  double kt = 0.0;
  double kx = 1.0;
  double phase = 0.0;
};

/// Gamma[s][m][n] = Gamma^s_{mn}.
using Christoffel = std::array<std::array<std::array<double, 2>, 2>, 2>;

/// 1+1 spacetime metric: Minkowski, or exp(2 omega) times Minkowski.
class SpacetimeMetric1p1 {
public:
  static SpacetimeMetric1p1 minkowski(double c = 1.0);
  static SpacetimeMetric1p1 conformal(const ConformalWave& w, double c = 1.0);

  SpacetimeKind kind() const { return kind_; }
  double c() const { return c_; }
  const ConformalWave& wave() const { return wave_; }

  double omega(double t, double x) const;
  /// (d_t omega, d_x omega).
  std::array<double, 2> omega_gradient(double t, double x) const;

  /// Covariant components g_{mu nu}; a11 = g_tt, a12 = g_tx, a22 = g_xx.
  Sym2 lower(double t, double x) const;
  /// Contravariant components g^{mu nu}.
  Sym2 inverse(double t, double x) const;
  /// Largest coordinate light speed |dx/dt| = sqrt(-g^xx / g^tt).
  double wave_speed(double t, double x) const;

private:
  SpacetimeKind kind_ = SpacetimeKind::Minkowski;
  double c_ = 1.0;
  ConformalWave wave_{0.0, 0.0, 0.0, 0.0};
};

/// Analytic Christoffel symbols.
Christoffel christoffel(const SpacetimeMetric1p1& metric, double t, double x);
/// Christoffel symbols from central differences of g_{mu nu} with step `step`.
Christoffel christoffel_fd(const SpacetimeMetric1p1& metric, double t, double x, double step);
/// g^{mu nu} Gamma^s_{mu nu} for s = t, x.
std::array<double, 2> christoffel_contraction(const SpacetimeMetric1p1& metric, double t, double x);

enum class KGBoundary { Dirichlet0, Absorbing };
std::string_view to_string(KGBoundary b);

struct KGState {
  double x0 = 0.0;
  double h = 1.0;
  std::vector<double> P;
  std::vector<double> dPdt;
  double t = 0.0;
  KGBoundary boundary = KGBoundary::Dirichlet0;

  double x(std::size_t i) const { return x0 + static_cast<double>(i) * h; }
};

struct EvolutionSeries {
  std::vector<KGState> slices;
  std::vector<double> times;
  std::vector<double> energy;
  double dt = 0.0;
  double cfl = 0.0;
  double cfl_bound = 0.9;
  int record_every = 1;
};

struct KGOptions {
  double m_eff = 0.0;
  double hbar = 1.0;
  KGBoundary boundary = KGBoundary::Dirichlet0;
  int record_every = 1;
  double cfl_bound = 0.9;
};

/// Leapfrog evolution of g^{mu nu}(d_mu d_nu P - Gamma^s_{mu nu} d_s P) + (m_eff c / hbar)^2 P = 0
/// from `initial` for `steps` steps. The first step is a second-order Taylor
/// step. Throws CFLViolation when c dt / h exceeds the bound and
/// NumericalBlowup when max |P| grows beyond 1e6 times its initial value.
EvolutionSeries evolve_kg(const SpacetimeMetric1p1& metric, const KGState& initial, double dt, int steps,
                          const KGOptions& opts);

/// Discrete energy sum of h sqrt(-g) (g^tt P_t^2 - g^xx P_x^2 + mu^2 P^2) / 2.
double kg_energy(const SpacetimeMetric1p1& metric, const KGState& s, double m_eff, double hbar);

/// Maximum-principle scan over the spacetime cylinder of |P|: the boundary
/// is the first slice, the last slice and both spatial ends of every slice.
/// Throws InvalidArgument with fewer than 3 slices.
SMPReport detect_interior_max(const EvolutionSeries& series, double tol_smp = 1e-12, double tol_const = 1e-12);

struct RelativisticQReport {
  double target = 0.0;  // -m_eff^2 c^2 / (2 m0)
  double mean = 0.0;
  double max_deviation = 0.0;
  double relative_deviation = 0.0;  // max_deviation / |target|; infinite when target = 0
  std::size_t count = 0;
  bool comparable = true;  // false when m0 != m_eff
};

/// Q = (hbar^2 / 2 m0) g^{mu nu}(d_mu d_nu P - Gamma^s_{mu nu} d_s P) / P on the
/// interior of the recorded slices where |P| >= p_floor (negative: 1e-6 max |P|),
/// with the sign fixed so that amplitudes of the massive equation give the target.
/// Throws AllMasked when no node qualifies.
RelativisticQReport relativistic_qpotential_check(const EvolutionSeries& series, const SpacetimeMetric1p1& metric,
                                                  double m_eff, double m0, double hbar = 1.0,
                                                  double p_floor = -1.0);

/// Spatial part -(hbar^2 / 2 m0) g^xx P_xx / P on one slice (interior nodes; 0 where P = 0).
std::vector<double> spatial_qpotential(const KGState& s, const SpacetimeMetric1p1& metric, double m0,
                                       double hbar = 1.0);

// ---- signature ------------------------------------------------------------

enum class SignatureVerdict { RiemannianDefinite, LorentzianMixed };
std::string_view to_string(SignatureVerdict v);

struct SignatureReport {
  std::vector<Vec2> points;
  std::vector<std::array<int, 2>> eigen_signs;  // ascending eigenvalues
  SignatureVerdict verdict = SignatureVerdict::RiemannianDefinite;
};

/// Eigenvalue signs of each 2x2 inverse metric. Throws DegenerateMetric when
/// an eigenvalue magnitude is below 1e-12, InvalidArgument when empty.
SignatureReport signature_check(const std::vector<Vec2>& points, const std::vector<Sym2>& inverse_metrics);
/// Points are (t, x).
SignatureReport signature_check(const SpacetimeMetric1p1& metric, const std::vector<Vec2>& points);
SignatureReport signature_check(const MetricSpec& metric, const std::vector<Vec2>& points);

}  // namespace geoeffect
