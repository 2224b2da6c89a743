#include "geoeffect/kg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "geoeffect/error.hpp"

namespace geoeffect {

SpacetimeMetric1p1 SpacetimeMetric1p1::minkowski(double c) {
  if (!(c > 0.0)) throw Error(ErrorCode::InvalidArgument, "light speed must be positive");
  SpacetimeMetric1p1 m;
  m.c_ = c;
  return m;
}

SpacetimeMetric1p1 SpacetimeMetric1p1::conformal(const ConformalWave& w, double c) {
  SpacetimeMetric1p1 m = minkowski(c);
  m.kind_ = SpacetimeKind::ConformalMinkowski;
  m.wave_ = w;
  return m;
}

double SpacetimeMetric1p1::omega(double t, double x) const {
  if (kind_ == SpacetimeKind::Minkowski) return 0.0;
  return wave_.amplitude * std::sin(wave_.kt * t + wave_.kx * x + wave_.phase);
}

std::array<double, 2> SpacetimeMetric1p1::omega_gradient(double t, double x) const {
  if (kind_ == SpacetimeKind::Minkowski) return {0.0, 0.0};
  const double c = wave_.amplitude * std::cos(wave_.kt * t + wave_.kx * x + wave_.phase);
  return {wave_.kt * c, wave_.kx * c};
}

Sym2 SpacetimeMetric1p1::lower(double t, double x) const {
  const double e = std::exp(2.0 * omega(t, x));
  return {e * c_ * c_, 0.0, -e};
}

Sym2 SpacetimeMetric1p1::inverse(double t, double x) const {
  const double e = std::exp(-2.0 * omega(t, x));
  return {e / (c_ * c_), 0.0, -e};
}

double SpacetimeMetric1p1::wave_speed(double t, double x) const {
  const Sym2 g = inverse(t, x);
  return std::sqrt(-g.a22 / g.a11);
}

Christoffel christoffel(const SpacetimeMetric1p1& metric, double t, double x) {
  Christoffel G{};
  const auto [wt, wx] = metric.omega_gradient(t, x);
  const double c2 = metric.c() * metric.c();
  G[0][0][0] = wt;
  G[0][0][1] = G[0][1][0] = wx;
  G[0][1][1] = wt / c2;
  G[1][0][0] = c2 * wx;
  G[1][0][1] = G[1][1][0] = wt;
  G[1][1][1] = wx;
  return G;
}

Christoffel christoffel_fd(const SpacetimeMetric1p1& metric, double t, double x, double step) {
  auto comp = [](const Sym2& s, int a, int b) { return a == 0 && b == 0 ? s.a11 : (a == 1 && b == 1 ? s.a22 : s.a12); };
  const Sym2 dt_g = [&] {
    const Sym2 p = metric.lower(t + step, x), m = metric.lower(t - step, x);
    return Sym2{(p.a11 - m.a11) / (2 * step), (p.a12 - m.a12) / (2 * step), (p.a22 - m.a22) / (2 * step)};
  }();
  const Sym2 dx_g = [&] {
    const Sym2 p = metric.lower(t, x + step), m = metric.lower(t, x - step);
    return Sym2{(p.a11 - m.a11) / (2 * step), (p.a12 - m.a12) / (2 * step), (p.a22 - m.a22) / (2 * step)};
  }();
  const Sym2* d[2] = {&dt_g, &dx_g};
  const Sym2 ginv = metric.inverse(t, x);
  Christoffel G{};
  for (int s = 0; s < 2; ++s) {
    for (int m = 0; m < 2; ++m) {
      for (int n = m; n < 2; ++n) {
        double acc = 0.0;
        for (int b = 0; b < 2; ++b) {
          acc += comp(ginv, s, b) * (comp(*d[m], b, n) + comp(*d[n], b, m) - comp(*d[b], m, n));
        }
        G[s][m][n] = G[s][n][m] = 0.5 * acc;
      }
    }
  }
  return G;
}

std::array<double, 2> christoffel_contraction(const SpacetimeMetric1p1& metric, double t, double x) {
  const Christoffel G = christoffel(metric, t, x);
  const Sym2 g = metric.inverse(t, x);
  std::array<double, 2> k{};
  for (int s = 0; s < 2; ++s) k[s] = g.a11 * G[s][0][0] + 2.0 * g.a12 * G[s][0][1] + g.a22 * G[s][1][1];
  return k;
}

std::string_view to_string(KGBoundary b) { return b == KGBoundary::Absorbing ? "Absorbing" : "Dirichlet0"; }

double kg_energy(const SpacetimeMetric1p1& metric, const KGState& s, double m_eff, double hbar) {
  const double mu = m_eff * metric.c() / hbar;
  const std::size_t n = s.P.size();
  double e = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Sym2 g = metric.inverse(s.t, s.x(i));
    const double vol = 1.0 / std::sqrt(-g.det());
    e += s.h * vol * 0.5 * (g.a11 * s.dPdt[i] * s.dPdt[i] + mu * mu * s.P[i] * s.P[i]);
  }
  // Gradient energy on cell faces.
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double xm = s.x0 + (static_cast<double>(i) + 0.5) * s.h;
    const Sym2 g = metric.inverse(s.t, xm);
    const double vol = 1.0 / std::sqrt(-g.det());
    const double px = (s.P[i + 1] - s.P[i]) / s.h;
    e += s.h * vol * 0.5 * (-g.a22) * px * px;
  }
  return e;
}

EvolutionSeries evolve_kg(const SpacetimeMetric1p1& metric, const KGState& initial, double dt, int steps,
                          const KGOptions& opts) {
  const std::size_t n = initial.P.size();
  if (n < 3 || initial.dPdt.size() != n) throw Error(ErrorCode::InvalidArgument, "state needs >= 3 nodes and matching P_t");
  if (!(dt > 0.0) || steps < 1 || opts.record_every < 1) {
    throw Error(ErrorCode::InvalidArgument, "need dt > 0, steps >= 1, record_every >= 1");
  }
  if (!(opts.m_eff >= 0.0) || !(opts.hbar > 0.0)) throw Error(ErrorCode::InvalidArgument, "need m_eff >= 0, hbar > 0");
  const double h = initial.h;
  double speed = 0.0;
  for (std::size_t i = 0; i < n; ++i) speed = std::max(speed, metric.wave_speed(initial.t, initial.x(i)));
  const double cfl = speed * dt / h;
  if (cfl > opts.cfl_bound * (1.0 + 1e-12)) {
    throw Error(ErrorCode::CFLViolation, "Courant number " + format_number(cfl) + " exceeds " + format_number(opts.cfl_bound));
  }
  const double mu2 = std::pow(opts.m_eff * metric.c() / opts.hbar, 2);

  double pmax0 = 0.0;
  for (double v : initial.P) pmax0 = std::max(pmax0, std::abs(v));
  const double blowup = 1e6 * std::max(pmax0, std::numeric_limits<double>::min());

  // Right-hand side pieces at time t: g^tt P_tt = A + K^t P_t.
  auto accel_terms = [&](double t, const std::vector<double>& P, std::size_t i, double& A, double& Kt, double& gtt) {
    const double x = initial.x(i);
    const Sym2 g = metric.inverse(t, x);
    const auto K = christoffel_contraction(metric, t, x);
    const double pxx = (P[i + 1] - 2.0 * P[i] + P[i - 1]) / (h * h);
    const double px = (P[i + 1] - P[i - 1]) / (2.0 * h);
    A = -g.a22 * pxx + K[1] * px - mu2 * P[i];
    Kt = K[0];
    gtt = g.a11;
  };
  auto apply_boundary = [&](double t, const std::vector<double>& cur, std::vector<double>& next) {
    if (opts.boundary == KGBoundary::Dirichlet0) {
      next[0] = next[n - 1] = 0.0;
      return;
    }
    // Mur: P_t -+ c P_x = 0 centred at the half cell and half step.
    const double sl = metric.wave_speed(t, initial.x(0)) * dt / h;
    const double sr = metric.wave_speed(t, initial.x(n - 1)) * dt / h;
    next[0] = cur[1] + (sl - 1.0) / (sl + 1.0) * (next[1] - cur[0]);
    next[n - 1] = cur[n - 2] + (sr - 1.0) / (sr + 1.0) * (next[n - 2] - cur[n - 1]);
  };

  std::vector<double> prev = initial.P, cur(n), next(n);
  if (opts.boundary == KGBoundary::Dirichlet0) prev[0] = prev[n - 1] = 0.0;
  const double t0 = initial.t;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    double A, Kt, gtt;
    accel_terms(t0, prev, i, A, Kt, gtt);
    const double ptt = (A + Kt * initial.dPdt[i]) / gtt;
    cur[i] = prev[i] + dt * initial.dPdt[i] + 0.5 * dt * dt * ptt;
  }
  apply_boundary(t0, prev, cur);

  EvolutionSeries series;
  series.dt = dt;
  series.cfl = cfl;
  series.cfl_bound = opts.cfl_bound;
  series.record_every = opts.record_every;
  auto record = [&](int step, const std::vector<double>& P, std::vector<double> Pt) {
    KGState s{initial.x0, h, P, std::move(Pt), t0 + step * dt, opts.boundary};
    series.energy.push_back(kg_energy(metric, s, opts.m_eff, opts.hbar));
    series.times.push_back(s.t);
    series.slices.push_back(std::move(s));
  };
  {
    std::vector<double> pt0 = initial.dPdt;
    if (opts.boundary == KGBoundary::Dirichlet0) pt0[0] = pt0[n - 1] = 0.0;
    record(0, prev, std::move(pt0));
  }

  // prev = P^{k-1}, cur = P^k; compute P^{k+1} so slice k gets its central P_t.
  for (int k = 1; k <= steps; ++k) {
    const double t = t0 + k * dt;
    for (std::size_t i = 1; i + 1 < n; ++i) {
      double A, Kt, gtt;
      accel_terms(t, cur, i, A, Kt, gtt);
      const double beta = dt * Kt / (2.0 * gtt);
      next[i] = (2.0 * cur[i] - (1.0 + beta) * prev[i] + dt * dt * A / gtt) / (1.0 - beta);
    }
    apply_boundary(t, cur, next);
    double pmax = 0.0;
    for (double v : next) pmax = std::max(pmax, std::abs(v));
    if (!(pmax <= blowup)) {
      throw Error(ErrorCode::NumericalBlowup, "max |P| reached " + format_number(pmax) + " at t = " + format_number(t));
    }
    if (k % opts.record_every == 0) {
      std::vector<double> pt(n);
      for (std::size_t i = 0; i < n; ++i) pt[i] = (next[i] - prev[i]) / (2.0 * dt);
      record(k, cur, std::move(pt));
    }
    std::swap(prev, cur);
    std::swap(cur, next);
  }
  return series;
}

SMPReport detect_interior_max(const EvolutionSeries& series, double tol_smp, double tol_const) {
  const std::size_t ns = series.slices.size();
  if (ns < 3) throw Error(ErrorCode::InvalidArgument, "spacetime scan needs at least 3 slices");
  SMPReport r;
  bool have_i = false, have_b = false;
  double gmin = std::numeric_limits<double>::infinity(), gmax = -gmin;
  std::size_t flat = 0;
  for (std::size_t s = 0; s < ns; ++s) {
    const KGState& st = series.slices[s];
    const std::size_t n = st.P.size();
    for (std::size_t i = 0; i < n; ++i, ++flat) {
      const double v = std::abs(st.P[i]);
      gmin = std::min(gmin, v);
      gmax = std::max(gmax, v);
      const Extremum e{v, flat, Vec2{st.x(i), st.t}};
      const bool boundary = s == 0 || s + 1 == ns || i == 0 || i + 1 == n;
      if (boundary) {
        if (!have_b || v > r.boundary_max.value) r.boundary_max = e;
        if (!have_b || v < r.boundary_min.value) r.boundary_min = e;
        have_b = true;
      } else {
        if (!have_i || v > r.interior_max.value) r.interior_max = e;
        if (!have_i || v < r.interior_min.value) r.interior_min = e;
        have_i = true;
      }
    }
  }
  if (!have_i) throw Error(ErrorCode::EmptyInterior, "spacetime cylinder has no interior nodes");
  r.margin = r.boundary_max.value - r.interior_max.value;
  if (gmax - gmin <= tol_const) {
    r.verdict = SmpVerdict::ConstantField;
  } else if (r.interior_max.value > r.boundary_max.value + tol_smp) {
    r.verdict = SmpVerdict::Violation;
  } else {
    r.verdict = SmpVerdict::MaxOnBoundary;
  }
  return r;
}

RelativisticQReport relativistic_qpotential_check(const EvolutionSeries& series, const SpacetimeMetric1p1& metric,
                                                  double m_eff, double m0, double hbar, double p_floor) {
  if (!(m0 > 0.0) || !(m_eff >= 0.0) || !(hbar > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "need m0 > 0, m_eff >= 0, hbar > 0");
  }
  const std::size_t ns = series.slices.size();
  if (ns < 3) throw Error(ErrorCode::InvalidArgument, "need at least 3 slices");
  RelativisticQReport r;
  r.target = -m_eff * m_eff * metric.c() * metric.c() / (2.0 * m0);
  r.comparable = m0 == m_eff;
  if (p_floor < 0.0) {
    double pmax = 0.0;
    for (const auto& s : series.slices) {
      for (double v : s.P) pmax = std::max(pmax, std::abs(v));
    }
    p_floor = 1e-6 * pmax;
  }
  const double pref = hbar * hbar / (2.0 * m0);
  double sum = 0.0;
  for (std::size_t s = 1; s + 1 < ns; ++s) {
    const KGState& a = series.slices[s - 1];
    const KGState& b = series.slices[s];
    const KGState& c = series.slices[s + 1];
    const double dt1 = b.t - a.t, dt2 = c.t - b.t;
    const double dt = 0.5 * (dt1 + dt2);
    const double h = b.h;
    for (std::size_t i = 1; i + 1 < b.P.size(); ++i) {
      const double p = b.P[i];
      if (!(std::abs(p) >= p_floor) || p == 0.0) continue;
      const Sym2 g = metric.inverse(b.t, b.x(i));
      const auto K = christoffel_contraction(metric, b.t, b.x(i));
      const double ptt = ((c.P[i] - p) / dt2 - (p - a.P[i]) / dt1) / dt;
      const double pt = (c.P[i] - a.P[i]) / (dt1 + dt2);
      const double pxx = (b.P[i + 1] - 2.0 * p + b.P[i - 1]) / (h * h);
      const double px = (b.P[i + 1] - b.P[i - 1]) / (2.0 * h);
      const double box = g.a11 * ptt + g.a22 * pxx - K[0] * pt - K[1] * px;
      const double q = pref * box / p;
      sum += q;
      r.max_deviation = std::max(r.max_deviation, std::abs(q - r.target));
      ++r.count;
    }
  }
  if (r.count == 0) throw Error(ErrorCode::AllMasked, "no node lies above the amplitude floor");
  r.mean = sum / static_cast<double>(r.count);
  r.relative_deviation =
      r.target != 0.0 ? r.max_deviation / std::abs(r.target) : std::numeric_limits<double>::infinity();
  return r;
}

std::vector<double> spatial_qpotential(const KGState& s, const SpacetimeMetric1p1& metric, double m0, double hbar) {
  std::vector<double> q(s.P.size(), 0.0);
  for (std::size_t i = 1; i + 1 < s.P.size(); ++i) {
    if (s.P[i] == 0.0) continue;
    const Sym2 g = metric.inverse(s.t, s.x(i));
    const double pxx = (s.P[i + 1] - 2.0 * s.P[i] + s.P[i - 1]) / (s.h * s.h);
    q[i] = -hbar * hbar / (2.0 * m0) * g.a22 * pxx / s.P[i];
  }
  return q;
}

}  // namespace geoeffect
