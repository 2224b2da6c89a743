#pragma once

#include <algorithm>
#include <cmath>

#include "geoeffect/hydro.hpp"

namespace geoeffect::oracle {

// Radial oracle for a flat-space breathing Gaussian:
//   u_r(r) = -(1 / (r rho)) d/dt int_0^r rho(r', t) r' dr',
// the time derivative taken under the integral and the integral evaluated by
// composite Gauss-Legendre quadrature.
inline double radial_speed(const BreathingGaussian& b, double t, double r) {
  constexpr double two_pi = 6.283185307179586;
  auto rho = [&](double s, double sig) { return b.mass / (two_pi * sig * sig) * std::exp(-s * s / (2 * sig * sig)); };
  const double sig = b.sigma0 * (1 + b.amplitude * std::sin(b.omega * t));
  const double dsig = b.sigma0 * b.amplitude * b.omega * std::cos(b.omega * t);
  auto drho_dt = [&](double s) {
    return rho(s, sig) * (s * s / (sig * sig * sig) - 2.0 / sig) * dsig;
  };
  const double xg[5] = {-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831, 0.9061798459386640};
  const double wg[5] = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889, 0.4786286704993665,
                        0.2369268850561891};
  const int panels = 200;
  const double w = r / panels;
  double integral = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = (p + 0.5) * w;
    for (int q = 0; q < 5; ++q) {
      const double s = mid + 0.5 * w * xg[q];
      integral += 0.5 * w * wg[q] * drho_dt(s) * s;
    }
  }
  return -integral / (r * rho(r, sig));
}

inline double rho_max(const ScalarField& rho) {
  double m = 0.0;
  for (double v : rho.values) m = std::max(m, v);
  return m;
}

inline double radial_oracle_error(const FlowSolution& f, const BreathingGaussian& b, double t) {
  const Grid2D& g = *f.u.grid;
  const double floor = 1e-3 * rho_max(f.rho);
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (g.cls(k) != NodeClass::Interior || !f.u.defined[k] || f.rho[k] < floor) continue;
    const Vec2 p = g.coord(k) - b.center;
    const double r = norm(p);
    double ex = 0.0, ey = 0.0;
    if (r > 0.0) {
      const double ur = radial_speed(b, t, r);
      ex = ur * p.x / r;
      ey = ur * p.y / r;
    }
    num += (f.u.x[k] - ex) * (f.u.x[k] - ex) + (f.u.y[k] - ey) * (f.u.y[k] - ey);
    den += ex * ex + ey * ey;
  }
  return std::sqrt(num / den);
}

}  // namespace geoeffect::oracle
