#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "geoeffect/runner.hpp"

using namespace geoeffect;

namespace {

ExperimentConfig random_case(std::uint64_t seed, double h) {
  return parse_experiment_config({{"experiment", "solve-smp"}, {"random_case", true}, {"seed", seed}, {"h", h}});
}

}  // namespace

TEST(SmpProperty, HundredRandomCases) {
  int max_on_boundary = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const ExperimentConfig cfg = random_case(seed, 1.0 / 64);
    ASSERT_EQ(cfg.physics.C, 0.0);
    const GridPtr g = build_grid(cfg.domains.front().domain, cfg.h);
    const InverseMetricField m = sample_metric(cfg.metric, g);
    const LinearSystem sys = assemble_eq17(m, {cfg.physics.C, cfg.physics.m, cfg.physics.hbar});
    ASSERT_TRUE(sys.stats.mesh_peclet_ok) << "seed " << seed;
    ASSERT_TRUE(sys.stats.m_matrix) << "seed " << seed;
    const ScalarField bd = boundary_data(g, [&](Vec2 p) { return cfg.boundary(p); });
    double bnorm = 0.0, bmin = INFINITY;
    for (std::size_t k = 0; k < g->size(); ++k) {
      if (g->cls(k) != NodeClass::Boundary) continue;
      ASSERT_GE(bd[k], 0.0);
      bnorm = std::max(bnorm, std::abs(bd[k]));
      bmin = std::min(bmin, bd[k]);
    }
    const double tol = 1e-12;
    SolverOptions o;
    o.tol = tol;
    const Eq17Solution s = solve_eq17(sys, bd, o);
    ASSERT_TRUE(s.report.converged);
    const double slack = 10.0 * tol * bnorm;
    const SMPReport r = verify_smp(s.P, slack, 1e-10 * std::max(1.0, bnorm));
    ASSERT_NE(r.verdict, SmpVerdict::Violation) << "seed " << seed << " margin " << r.margin;
    ASSERT_LE(r.interior_max.value, r.boundary_max.value + slack);
    ASSERT_GE(r.interior_min.value, r.boundary_min.value - slack);
    for (std::size_t k = 0; k < g->size(); ++k) {
      if (g->active(k)) ASSERT_GE(s.P[k], -slack);
    }
    if (r.verdict == SmpVerdict::MaxOnBoundary) ++max_on_boundary;
  }
  EXPECT_GT(max_on_boundary, 90);
}

TEST(SmpProperty, RandomCasesAreSeedDeterministic) {
  const ExperimentConfig a = random_case(42, 1.0 / 32), b = random_case(42, 1.0 / 32), c = random_case(43, 1.0 / 32);
  EXPECT_EQ(a.domains.front().echo, b.domains.front().echo);
  EXPECT_EQ(a.metric_echo, b.metric_echo);
  EXPECT_NE(a.domains.front().echo.dump() + a.metric_echo.dump(), c.domains.front().echo.dump() + c.metric_echo.dump());
}

TEST(SmpProperty, NonnegativeDataStaysNonnegativeWithNegativeC) {
  for (std::uint64_t seed = 100; seed < 120; ++seed) {
    const ExperimentConfig cfg = random_case(seed, 1.0 / 32);
    const GridPtr g = build_grid(cfg.domains.front().domain, cfg.h);
    const LinearSystem sys = assemble_eq17(sample_metric(cfg.metric, g), {-0.7, 1.0, 1.0});
    const Eq17Solution s = solve_eq17(sys, boundary_data(g, [&](Vec2 p) { return cfg.boundary(p); }));
    for (std::size_t k = 0; k < g->size(); ++k) {
      if (g->active(k)) ASSERT_GE(s.P[k], -1e-12) << "seed " << seed;
    }
  }
}
