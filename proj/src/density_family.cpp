#include <cmath>
#include <numbers>

#include "geoeffect/error.hpp"
#include "geoeffect/hydro.hpp"

namespace geoeffect {

double BreathingGaussian::sigma(double t) const { return sigma0 * (1.0 + amplitude * std::sin(omega * t)); }

double BreathingGaussian::sigma_rate(double t) const { return sigma0 * amplitude * omega * std::cos(omega * t); }

DensityFamily DensityFamily::static_density(ScalarField rho) {
  for (std::size_t k = 0; k < rho.values.size(); ++k) {
    if (rho.grid->active(k) && !(rho.values[k] >= 0.0)) {
      throw Error(ErrorCode::InvalidArgument, "density must be nonnegative");
    }
  }
  rho.role = ScalarRole::Density;
  return DensityFamily(DensityKind::Static, std::move(rho));
}

DensityFamily DensityFamily::solved_classical(ScalarField amplitude) {
  amplitude.role = ScalarRole::Amplitude;
  return DensityFamily(DensityKind::SolvedClassical, std::move(amplitude));
}

DensityFamily DensityFamily::breathing(const BreathingGaussian& p) {
  if (!(p.sigma0 > 0.0) || !(std::abs(p.amplitude) < 1.0) || !(p.mass > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "breathing Gaussian needs sigma0 > 0, |amplitude| < 1, mass > 0");
  }
  return DensityFamily(DensityKind::BreathingGaussian, p);
}

DensityFamily DensityFamily::translating(const TranslatingGaussian& p) {
  if (!(p.sigma > 0.0) || !(p.mass > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "translating Gaussian needs sigma > 0, mass > 0");
  }
  return DensityFamily(DensityKind::TranslatingGaussian, p);
}

DensityFamily DensityFamily::with_central_difference(double dt) const {
  if (!(dt > 0.0)) throw Error(ErrorCode::InvalidArgument, "difference step must be positive");
  DensityFamily f = *this;
  f.policy_ = TimeDerivativePolicy::CentralDifference;
  f.dt_ = dt;
  return f;
}

namespace {

void check_grid(const ScalarField& f, const InverseMetricField& metric) {
  if (f.values.size() != metric.grid->size()) {
    throw Error(ErrorCode::GridMismatch, "density family and metric live on different grids");
  }
}

// Coordinate Gaussian divided by sqrt(g), and the factor d ln rho / dt.
template <class Rate>
ScalarField gaussian(const InverseMetricField& metric, Vec2 c, double sigma, double mass, Rate rate_factor,
                     bool want_rate) {
  const Grid2D& g = *metric.grid;
  ScalarField out = ScalarField::zeros(metric.grid, want_rate ? ScalarRole::Source : ScalarRole::Density);
  const double scale = mass / (2.0 * std::numbers::pi * sigma * sigma);
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (!g.active(k)) continue;
    const Vec2 d = g.coord(k) - c;
    const double rho = scale * std::exp(-dot(d, d) / (2.0 * sigma * sigma)) / metric.sqrt_det_g[k];
    out.values[k] = want_rate ? rho * rate_factor(d) : rho;
  }
  return out;
}

}  // namespace

ScalarField DensityFamily::density(const InverseMetricField& metric, double t) const {
  switch (kind_) {
    case DensityKind::Static: {
      const auto& f = std::get<ScalarField>(data_);
      check_grid(f, metric);
      return f;
    }
    case DensityKind::SolvedClassical: {
      const auto& P = std::get<ScalarField>(data_);
      check_grid(P, metric);
      ScalarField rho = ScalarField::zeros(metric.grid, ScalarRole::Density);
      for (std::size_t k = 0; k < rho.values.size(); ++k) {
        if (metric.grid->active(k)) rho.values[k] = P.values[k] * P.values[k];
      }
      return rho;
    }
    case DensityKind::BreathingGaussian: {
      const auto& p = std::get<BreathingGaussian>(data_);
      return gaussian(metric, p.center, p.sigma(t), p.mass, [](Vec2) { return 0.0; }, false);
    }
    case DensityKind::TranslatingGaussian: {
      const auto& p = std::get<TranslatingGaussian>(data_);
      return gaussian(metric, p.center + t * p.velocity, p.sigma, p.mass, [](Vec2) { return 0.0; }, false);
    }
  }
  return {};
}

ScalarField DensityFamily::analytic_rate(const InverseMetricField& metric, double t) const {
  switch (kind_) {
    case DensityKind::Static:
    case DensityKind::SolvedClassical:
      return ScalarField::zeros(metric.grid, ScalarRole::Source);
    case DensityKind::BreathingGaussian: {
      const auto& p = std::get<BreathingGaussian>(data_);
      const double s = p.sigma(t);
      const double a = p.sigma_rate(t) / s;
      return gaussian(metric, p.center, s, p.mass, [&](Vec2 d) { return a * (dot(d, d) / (s * s) - 2.0); }, true);
    }
    case DensityKind::TranslatingGaussian: {
      const auto& p = std::get<TranslatingGaussian>(data_);
      const double s2 = p.sigma * p.sigma;
      return gaussian(metric, p.center + t * p.velocity, p.sigma, p.mass,
                      [&](Vec2 d) { return dot(d, p.velocity) / s2; }, true);
    }
  }
  return {};
}

ScalarField DensityFamily::density_rate(const InverseMetricField& metric, double t) const {
  if (policy_ == TimeDerivativePolicy::Analytic) return analytic_rate(metric, t);
  const ScalarField a = density(metric, t + dt_);
  const ScalarField b = density(metric, t - dt_);
  ScalarField out = ScalarField::zeros(metric.grid, ScalarRole::Source);
  for (std::size_t k = 0; k < out.values.size(); ++k) out.values[k] = (a.values[k] - b.values[k]) / (2.0 * dt_);
  return out;
}

ScalarField DensityFamily::amplitude(const InverseMetricField& metric, double t) const {
  if (kind_ == DensityKind::SolvedClassical) {
    const auto& P = std::get<ScalarField>(data_);
    check_grid(P, metric);
    return P;
  }
  ScalarField rho = density(metric, t);
  for (double& v : rho.values) v = std::sqrt(std::max(v, 0.0));
  rho.role = ScalarRole::Amplitude;
  return rho;
}

double DensityFamily::mass(const InverseMetricField& metric, double t) const {
  const ScalarField rho = density(metric, t);
  const Grid2D& g = *metric.grid;
  const double h2 = g.spacing() * g.spacing();
  double m = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (g.active(k)) m += rho.values[k] * metric.sqrt_det_g[k] * h2;
  }
  return m;
}

}  // namespace geoeffect
