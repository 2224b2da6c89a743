#pragma once

#include <array>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "geoeffect/grid.hpp"

namespace geoeffect {

/// Symmetric 2x2 matrix (upper triangle).
struct Sym2 {
  double a11 = 0.0;
  double a12 = 0.0;
  double a22 = 0.0;

  double trace() const { return a11 + a22; }
  double det() const { return a11 * a22 - a12 * a12; }
  std::array<double, 2> eigenvalues() const;  // ascending
  double min_eigenvalue() const { return eigenvalues()[0]; }
};

enum class MetricKind { Flat, Conformal, DiagonalAnisotropic, SampledSPD };

/// Omega(x, y) = scale * (exp(-((x - mu_x)/width)^2) + exp(-((y - mu_y)/width)^2)) + offset,
/// inverse metric Omega * I.
struct ConformalParams {
  Vec2 mu{2.5, 2.5};
  double scale = 1.0;
  double width = 1.0;
  double offset = 0.0;
};

/// g^11 = a1 (1 + e1 sin(k1 x + p1) cos(k1 y)),
/// g^22 = a2 (1 + e2 cos(k2 x) sin(k2 y + p2)), g^12 = 0.
struct DiagonalParams {
  double a1 = 1.0, a2 = 1.0;
  double e1 = 0.0, e2 = 0.0;
  double k1 = 1.0, k2 = 1.0;
  double p1 = 0.0, p2 = 0.0;
};

/// Inverse-metric samples on a regular lattice, row-major (y outer).
struct SampledMetric {
  Vec2 origin;
  double h = 1.0;
  int nx = 0;
  int ny = 0;
  std::vector<double> g11, g12, g22;
};

/// Inverse metric and its first partial derivatives at a point.
struct MetricJet {
  Sym2 g;
  Sym2 dx;
  Sym2 dy;
};

class MetricSpec {
public:
  static MetricSpec flat();
  static MetricSpec conformal(const ConformalParams& p = {});
  static MetricSpec diagonal(const DiagonalParams& p);
  static MetricSpec sampled(SampledMetric table);

  MetricKind kind() const { return kind_; }
  int dimension() const { return 2; }
  const ConformalParams& conformal_params() const { return conformal_; }
  const DiagonalParams& diagonal_params() const { return diagonal_; }
  const SampledMetric& table() const { return table_; }

  /// Conformal factor; only meaningful for Flat (1) and Conformal kinds.
  double omega(Vec2 p) const;

  /// Analytic inverse metric and derivatives; Flat, Conformal and
  /// DiagonalAnisotropic only.
  MetricJet jet(Vec2 p) const;
  /// Inverse metric value for any kind (bilinear for SampledSPD).
  Sym2 inverse(Vec2 p) const;

  /// Same metric with the conformal factor multiplied by `c` (Conformal only).
  MetricSpec scaled(double c) const;

  /// Lattice samples of an analytic metric on the nodes of `grid`.
  SampledMetric tabulate(const Grid2D& grid) const;

private:
  MetricKind kind_ = MetricKind::Flat;
  ConformalParams conformal_{};
  DiagonalParams diagonal_{};
  SampledMetric table_{};
};

/// Per-node inverse metric g^{ij}, sqrt(det g_ij) and first-order coefficient
/// b^j = (1/sqrt g) d_i(sqrt g g^{ij}) of the Laplace-Beltrami operator.
struct InverseMetricField {
  GridPtr grid;
  MetricKind kind = MetricKind::Flat;
  std::vector<double> g11, g12, g22;
  std::vector<double> sqrt_det_g;
  std::vector<double> drift_x, drift_y;

  Sym2 at(std::size_t k) const { return {g11[k], g12[k], g22[k]}; }
  bool has_cross_terms() const;
};

/// Samples `spec` at every node of `grid` (interior, boundary and exterior).
/// Throws NotPositiveDefinite naming the first offending node.
InverseMetricField sample_metric(const MetricSpec& spec, const GridPtr& grid);

/// Metric CSV: header `x,y,g11,g12,g22`, row-major (y outer, x inner).
SampledMetric read_metric_csv(std::istream& in);
SampledMetric read_metric_csv(const std::filesystem::path& path);
void write_metric_csv(std::ostream& out, const SampledMetric& table);

}  // namespace geoeffect
