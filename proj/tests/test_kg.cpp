#include <cmath>

#include <gtest/gtest.h>

#include "geoeffect/error.hpp"
#include "geoeffect/kg.hpp"

using namespace geoeffect;

namespace {

struct Pulse {
  double centre;
  double direction;  // +1 right-moving, -1 left-moving
};

KGState pulses(double h, double x0, double x1, const std::vector<Pulse>& ps, double width, double c = 1.0,
               KGBoundary b = KGBoundary::Dirichlet0) {
  KGState s;
  s.x0 = x0;
  s.h = h;
  s.boundary = b;
  const auto n = static_cast<std::size_t>(std::lround((x1 - x0) / h)) + 1;
  s.P.assign(n, 0.0);
  s.dPdt.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (const Pulse& p : ps) {
      const double z = (s.x(i) - p.centre) / width;
      const double f = std::exp(-0.5 * z * z);
      s.P[i] += f;
      s.dPdt[i] += p.direction * c * z / width * f;
    }
  }
  return s;
}

double advection_error(double h, double T, double x0, double x1, double start, double width) {
  const SpacetimeMetric1p1 mk = SpacetimeMetric1p1::minkowski();
  const double dt = 0.5 * h;
  const int steps = static_cast<int>(std::lround(T / dt));
  KGOptions o;
  o.record_every = steps;
  const EvolutionSeries s = evolve_kg(mk, pulses(h, x0, x1, {{start, 1.0}}, width), dt, steps, o);
  const KGState& last = s.slices.back();
  double e = 0.0;
  for (std::size_t i = 0; i < last.P.size(); ++i) {
    const double z = (last.x(i) - last.t - start) / width;
    e = std::max(e, std::abs(last.P[i] - std::exp(-0.5 * z * z)));
  }
  return e;
}

double max_abs(const Christoffel& a) {
  double m = 0.0;
  for (const auto& s : a)
    for (const auto& r : s)
      for (double v : r) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

TEST(Spacetime, MinkowskiComponents) {
  const SpacetimeMetric1p1 m = SpacetimeMetric1p1::minkowski(2.0);
  const Sym2 gi = m.inverse(0.3, -0.1), g = m.lower(0.3, -0.1);
  EXPECT_DOUBLE_EQ(gi.a11, 0.25);
  EXPECT_EQ(gi.a12, 0.0);
  EXPECT_DOUBLE_EQ(gi.a22, -1.0);
  EXPECT_DOUBLE_EQ(g.a11, 4.0);
  EXPECT_DOUBLE_EQ(g.a22, -1.0);
  EXPECT_DOUBLE_EQ(m.wave_speed(0, 0), 2.0);
  EXPECT_EQ(max_abs(christoffel(m, 0.4, 0.2)), 0.0);
}

TEST(Spacetime, ConformalChristoffelHandTable) {
  // g = exp(2 w) diag(c^2, -1):
  //   G^t_tt = w_t, G^t_tx = w_x, G^t_xx = w_t / c^2,
  //   G^x_tt = c^2 w_x, G^x_tx = w_t, G^x_xx = w_x.
  ConformalWave w;
  w.amplitude = 0.3;
  w.kt = 0.7;
  w.kx = 1.3;
  w.phase = 0.2;
  for (double c : {1.0, 2.5}) {
    const SpacetimeMetric1p1 m = SpacetimeMetric1p1::conformal(w, c);
    const double t = 0.4, x = -0.6;
    const double arg = w.kt * t + w.kx * x + w.phase;
    const double wt = w.amplitude * w.kt * std::cos(arg), wx = w.amplitude * w.kx * std::cos(arg);
    const Christoffel G = christoffel(m, t, x);
    EXPECT_NEAR(G[0][0][0], wt, 1e-15);
    EXPECT_NEAR(G[0][0][1], wx, 1e-15);
    EXPECT_NEAR(G[0][1][1], wt / (c * c), 1e-15);
    EXPECT_NEAR(G[1][0][0], c * c * wx, 1e-14);
    EXPECT_NEAR(G[1][0][1], wt, 1e-15);
    EXPECT_NEAR(G[1][1][1], wx, 1e-15);
    for (int s = 0; s < 2; ++s) EXPECT_EQ(G[s][0][1], G[s][1][0]);
    // In 1+1 dimensions the conformal contraction g^{mn} G^s_{mn} vanishes.
    const auto k = christoffel_contraction(m, t, x);
    EXPECT_NEAR(k[0], 0.0, 1e-15);
    EXPECT_NEAR(k[1], 0.0, 1e-14);
    const Sym2 gi = m.inverse(t, x);
    EXPECT_NEAR(gi.a11, std::exp(-2 * m.omega(t, x)) / (c * c), 1e-15);
  }
}

TEST(Spacetime, FiniteDifferenceChristoffelSecondOrder) {
  ConformalWave w;
  w.amplitude = 0.1;
  w.kx = 1.0;
  const SpacetimeMetric1p1 m = SpacetimeMetric1p1::conformal(w);
  std::vector<double> err;
  for (double step : {2e-2, 1e-2, 5e-3}) {
    const Christoffel a = christoffel(m, 0.3, 0.7), b = christoffel_fd(m, 0.3, 0.7, step);
    double e = 0.0;
    for (int s = 0; s < 2; ++s)
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
          e = std::max(e, std::abs(a[s][i][j] - b[s][i][j]));
          EXPECT_EQ(b[s][i][j], b[s][j][i]);
        }
    err.push_back(e);
  }
  EXPECT_NEAR(std::log2(err[0] / err[1]), 2.0, 0.1);
  EXPECT_NEAR(std::log2(err[1] / err[2]), 2.0, 0.1);
}

TEST(EvolveKg, AdvectedPulseOneDomainLength) {
  // Pulse travels the length of [-1, 1] inside a wider Dirichlet box.
  EXPECT_LE(advection_error(1.0 / 256, 2.0, -1.5, 2.5, -1.0, 0.1), 0.02);
}

TEST(EvolveKg, AdvectionSecondOrder) {
  std::vector<double> e;
  for (double h : {1.0 / 64, 1.0 / 128, 1.0 / 256}) e.push_back(advection_error(h, 1.0, -2.0, 2.0, -0.5, 0.1));
  for (int k = 0; k < 2; ++k) {
    const double p = std::log2(e[k] / e[k + 1]);
    EXPECT_GE(p, 1.8);
    EXPECT_LE(p, 2.2);
  }
}

TEST(EvolveKg, CollidingPulsesDoubleAmplitude) {
  const SpacetimeMetric1p1 mk = SpacetimeMetric1p1::minkowski();
  const double h = 1.0 / 256, dt = 0.5 * h;
  const EvolutionSeries s =
      evolve_kg(mk, pulses(h, -1, 1, {{-0.5, 1}, {0.5, -1}}, 0.05, 1.0, KGBoundary::Absorbing), dt,
                static_cast<int>(std::lround(0.5 / dt)), {0.0, 1.0, KGBoundary::Absorbing, 1, 0.9});
  const KGState& at = s.slices.back();
  EXPECT_NEAR(at.t, 0.5, 1e-12);
  EXPECT_NEAR(at.P[at.P.size() / 2], 2.0, 0.01);
}

TEST(EvolveKg, CounterexampleStableUnderRefinement) {
  const SpacetimeMetric1p1 mk = SpacetimeMetric1p1::minkowski();
  for (double h : {1.0 / 128, 1.0 / 256, 1.0 / 512}) {
    const double dt = 0.5 * h;
    KGOptions o;
    o.boundary = KGBoundary::Absorbing;
    const EvolutionSeries s = evolve_kg(mk, pulses(h, -1, 1, {{-0.5, 1}, {0.5, -1}}, 0.05, 1.0, o.boundary), dt,
                                        static_cast<int>(std::ceil(1.8 / dt)), o);
    const SMPReport r = detect_interior_max(s);
    EXPECT_EQ(r.verdict, SmpVerdict::Violation) << "h = " << h;
    EXPECT_GE(r.interior_max.value, 1.9 * r.boundary_max.value);
    EXPECT_NEAR(r.interior_max.where.x, 0.0, 2 * h);
    EXPECT_NEAR(r.interior_max.where.y, 0.5, 2 * dt);
    for (double v : s.slices.back().P) ASSERT_LT(std::abs(v), 0.05);
  }
}

TEST(EvolveKg, SingleExitingPulseKeepsMaxOnBoundary) {
  const double h = 1.0 / 256, dt = 0.5 * h;
  KGOptions o;
  o.boundary = KGBoundary::Absorbing;
  const EvolutionSeries s = evolve_kg(SpacetimeMetric1p1::minkowski(),
                                      pulses(h, -1, 1, {{-0.5, 1}}, 0.05, 1.0, o.boundary), dt,
                                      static_cast<int>(std::ceil(1.8 / dt)), o);
  // The exact solution keeps its maximum on the initial slice; leapfrog phase
  // error lets the discrete peak exceed it by O(h^2).
  const SMPReport r = detect_interior_max(s, 1e-2);
  EXPECT_EQ(r.verdict, SmpVerdict::MaxOnBoundary);
  EXPECT_LE(r.interior_max.value - 1.0, 4e-4);
}

TEST(EvolveKg, ZeroFieldIsConstant) {
  KGState s = pulses(1.0 / 64, -1, 1, {}, 0.1);
  const EvolutionSeries series = evolve_kg(SpacetimeMetric1p1::minkowski(), s, 1.0 / 128, 10, {});
  EXPECT_EQ(detect_interior_max(series).verdict, SmpVerdict::ConstantField);
  const EvolutionSeries two = evolve_kg(SpacetimeMetric1p1::minkowski(), s, 1.0 / 128, 1, {});
  EXPECT_THROW(detect_interior_max(two), Error);
}

TEST(EvolveKg, EnergyDriftTenCrossings) {
  const SpacetimeMetric1p1 mk = SpacetimeMetric1p1::minkowski();
  const double h = 1.0 / 128, dt = 0.5 * h;
  for (double m_eff : {0.0, 1.0}) {
    KGOptions o;
    o.m_eff = m_eff;
    o.record_every = 32;
    const EvolutionSeries s = evolve_kg(mk, pulses(h, -1, 1, {{0.0, 1}}, 0.1), dt, static_cast<int>(20.0 / dt), o);
    EXPECT_NEAR(s.times.back(), 20.0, 1e-9);
    double drift = 0.0;
    for (double e : s.energy) drift = std::max(drift, std::abs(e - s.energy.front()) / s.energy.front());
    EXPECT_LE(drift, 0.01) << "m_eff = " << m_eff;
    for (std::size_t k = 1; k < s.times.size(); ++k) ASSERT_GT(s.times[k], s.times[k - 1]);
    EXPECT_LE(s.cfl, o.cfl_bound);
  }
}

TEST(EvolveKg, DispersionRelation) {
  struct Case {
    double c, m_eff, hbar;
  };
  for (const Case& cs : {Case{1.0, 3.0, 1.0}, Case{2.0, 1.5, 0.7}}) {
    const SpacetimeMetric1p1 mk = SpacetimeMetric1p1::minkowski(cs.c);
    const double k = 4.0 * M_PI, h = 1.0 / 256, dt = 0.25 * h / cs.c;
    KGState s;
    s.x0 = 0.0;
    s.h = h;
    for (int i = 0; i <= 256; ++i) s.P.push_back(std::sin(k * s.x(i)));
    s.dPdt.assign(s.P.size(), 0.0);
    KGOptions o;
    o.m_eff = cs.m_eff;
    o.hbar = cs.hbar;
    const EvolutionSeries series = evolve_kg(mk, s, dt, static_cast<int>(3.0 / (cs.c * dt)), o);
    const std::size_t probe = 32;  // x = 1/8, an antinode
    std::vector<double> crossings;
    for (std::size_t j = 1; j < series.slices.size(); ++j) {
      const double a = series.slices[j - 1].P[probe], b = series.slices[j].P[probe];
      if (a != 0.0 && (a < 0) != (b < 0)) crossings.push_back(series.times[j - 1] + dt * a / (a - b));
    }
    ASSERT_GE(crossings.size(), 4u);
    const double omega = M_PI * (crossings.size() - 1) / (crossings.back() - crossings.front());
    const double exact2 = cs.c * cs.c * k * k + std::pow(cs.m_eff * cs.c * cs.c / cs.hbar, 2);
    EXPECT_NEAR(omega * omega / exact2, 1.0, 0.01);

    const RelativisticQReport q = relativistic_qpotential_check(series, mk, cs.m_eff, cs.m_eff, cs.hbar);
    EXPECT_DOUBLE_EQ(q.target, -cs.m_eff * cs.c * cs.c / 2.0);
    EXPECT_LE(q.relative_deviation, 0.01);
    EXPECT_GT(q.count, 0u);
  }
}

TEST(EvolveKg, MasslessPulseQIsReportedOnly) {
  const double h = 1.0 / 128;
  const EvolutionSeries s =
      evolve_kg(SpacetimeMetric1p1::minkowski(), pulses(h, -1, 1, {{0.0, 1}}, 0.1), 0.5 * h, 40, {});
  const RelativisticQReport q = relativistic_qpotential_check(s, SpacetimeMetric1p1::minkowski(), 0.0, 1.0);
  EXPECT_EQ(q.target, 0.0);
  EXPECT_GT(q.count, 0u);
  EXPECT_FALSE(q.comparable);
}

TEST(EvolveKg, ConstantSliceHasNoSpatialPotential) {
  KGState s = pulses(1.0 / 64, -1, 1, {}, 0.1);
  for (double& v : s.P) v = 0.8;
  for (double v : spatial_qpotential(s, SpacetimeMetric1p1::minkowski(), 1.0)) EXPECT_EQ(v, 0.0);
}

TEST(EvolveKg, Preconditions) {
  const KGState s = pulses(1.0 / 64, -1, 1, {{0, 1}}, 0.1);
  try {
    evolve_kg(SpacetimeMetric1p1::minkowski(2.0), s, 0.5 / 64, 10, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::CFLViolation);
  }
  KGOptions o;
  o.m_eff = -1.0;
  EXPECT_THROW(evolve_kg(SpacetimeMetric1p1::minkowski(), s, 0.25 / 64, 10, o), Error);
}

TEST(EvolveKg, ConformalBackgroundRunsAndConservesShape) {
  ConformalWave w;
  w.amplitude = 0.1;
  w.kx = 2.0;
  const SpacetimeMetric1p1 m = SpacetimeMetric1p1::conformal(w);
  const double h = 1.0 / 128;
  const EvolutionSeries s = evolve_kg(m, pulses(h, -1, 1, {{-0.3, 1}}, 0.1), 0.4 * h, 200, {});
  for (double v : s.slices.back().P) ASSERT_TRUE(std::isfinite(v));
  // Massless waves are conformally invariant in 1+1: the pulse advects unchanged.
  const double t = s.slices.back().t;
  double e = 0.0;
  for (std::size_t i = 0; i < s.slices.back().P.size(); ++i) {
    const double z = (s.slices.back().x(i) - t + 0.3) / 0.1;
    e = std::max(e, std::abs(s.slices.back().P[i] - std::exp(-0.5 * z * z)));
  }
  EXPECT_LE(e, 0.02);
}

TEST(Signature, Dichotomy) {
  const std::vector<Vec2> tx = {{0, -1}, {0.5, 0}, {1, 1}};
  EXPECT_EQ(signature_check(SpacetimeMetric1p1::minkowski(), tx).verdict, SignatureVerdict::LorentzianMixed);
  ConformalWave w;
  w.amplitude = 2.0;
  w.kt = 1.0;
  const SignatureReport c = signature_check(SpacetimeMetric1p1::conformal(w, 3.0), tx);
  EXPECT_EQ(c.verdict, SignatureVerdict::LorentzianMixed);
  for (const auto& s : c.eigen_signs) {
    EXPECT_EQ(s[0], -1);
    EXPECT_EQ(s[1], 1);
  }
  const SignatureReport flat = signature_check({{0, 0}}, {Sym2{1, 0, 1}});
  EXPECT_EQ(flat.verdict, SignatureVerdict::RiemannianDefinite);
  DiagonalParams d;
  d.e1 = 0.5;
  for (const MetricSpec& spec : {MetricSpec::flat(), MetricSpec::conformal(), MetricSpec::diagonal(d)}) {
    EXPECT_EQ(signature_check(spec, {{0, 0}, {2.5, 2.5}, {4, 1}}).verdict, SignatureVerdict::RiemannianDefinite);
  }
}

TEST(Signature, Errors) {
  try {
    signature_check({{0, 0}}, {Sym2{1, 0, 1e-13}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateMetric);
  }
  EXPECT_THROW(signature_check(std::vector<Vec2>{}, std::vector<Sym2>{}), Error);
}
