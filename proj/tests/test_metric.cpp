#include <cmath>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "geoeffect/error.hpp"
#include "geoeffect/metric.hpp"

using namespace geoeffect;

namespace {

std::size_t node_at(const Grid2D& g, Vec2 p) {
  const int i = static_cast<int>(std::lround((p.x - g.origin().x) / g.spacing()));
  const int j = static_cast<int>(std::lround((p.y - g.origin().y) / g.spacing()));
  return g.index(i, j);
}

double max_drift_difference(const InverseMetricField& a, const InverseMetricField& b) {
  double e = 0.0;
  for (std::size_t k = 0; k < a.grid->size(); ++k) {
    if (a.grid->cls(k) != NodeClass::Interior) continue;
    e = std::max({e, std::abs(a.drift_x[k] - b.drift_x[k]), std::abs(a.drift_y[k] - b.drift_y[k])});
  }
  return e;
}

}  // namespace

TEST(SampleMetric, FlatIsIdentity) {
  const InverseMetricField m = sample_metric(MetricSpec::flat(), build_grid(Domain::disc({0, 0}, 1), 1.0 / 16));
  for (std::size_t k = 0; k < m.grid->size(); ++k) {
    EXPECT_EQ(m.g11[k], 1.0);
    EXPECT_EQ(m.g12[k], 0.0);
    EXPECT_EQ(m.g22[k], 1.0);
    EXPECT_EQ(m.sqrt_det_g[k], 1.0);
    EXPECT_EQ(m.drift_x[k], 0.0);
    EXPECT_EQ(m.drift_y[k], 0.0);
  }
}

TEST(SampleMetric, ConformalHandValues) {
  const GridPtr g = build_grid(Domain::disc({2.5, 2.5}, 1.5), 1.0 / 8);
  const InverseMetricField m = sample_metric(MetricSpec::conformal(), g);
  const std::size_t c = node_at(*g, {2.5, 2.5});
  EXPECT_DOUBLE_EQ(m.g11[c], 2.0);
  EXPECT_DOUBLE_EQ(m.g22[c], 2.0);
  EXPECT_EQ(m.g12[c], 0.0);
  EXPECT_DOUBLE_EQ(m.sqrt_det_g[c], 0.5);
  const std::size_t q = node_at(*g, {2.5, 3.5});
  EXPECT_NEAR(m.g11[q], 1.367879, 5e-7);
  EXPECT_DOUBLE_EQ(m.g11[q], 1.0 + std::exp(-1.0));
}

TEST(SampleMetric, ConformalDriftVanishesAndDeterminantMatches) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    ConformalParams p;
    p.mu = {4.0 * u(rng), 4.0 * u(rng)};
    p.scale = 0.2 + 3.0 * u(rng);
    p.width = 0.5 + 2.0 * u(rng);
    p.offset = 0.5 * u(rng);
    const GridPtr g = build_grid(Domain::disc({2, 2}, 1.5), 1.0 / 32);
    const InverseMetricField m = sample_metric(MetricSpec::conformal(p), g);
    for (std::size_t k = 0; k < g->size(); ++k) {
      ASSERT_EQ(m.drift_x[k], 0.0);
      ASSERT_EQ(m.drift_y[k], 0.0);
      ASSERT_EQ(m.g11[k], m.g22[k]);
      ASSERT_NEAR(m.sqrt_det_g[k] * m.g11[k], 1.0, 1e-15);
    }
  }
}

TEST(SampleMetric, RandomFamiliesPositiveDefinite) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const GridPtr g = build_grid(Domain::regular_polygon({1, 1}, 1.2, 7), 1.0 / 32);
  for (int trial = 0; trial < 50; ++trial) {
    DiagonalParams d;
    d.a1 = 0.2 + 2 * u(rng);
    d.a2 = 0.2 + 2 * u(rng);
    d.e1 = 0.9 * (2 * u(rng) - 1);
    d.e2 = 0.9 * (2 * u(rng) - 1);
    d.k1 = 0.2 + 3 * u(rng);
    d.k2 = 0.2 + 3 * u(rng);
    d.p1 = 6 * u(rng);
    d.p2 = 6 * u(rng);
    ConformalParams c;
    c.mu = {3 * u(rng), 3 * u(rng)};
    c.scale = 0.1 + 2 * u(rng);
    c.offset = 0.3 * u(rng);
    for (const MetricSpec& spec : {MetricSpec::diagonal(d), MetricSpec::conformal(c)}) {
      const InverseMetricField m = sample_metric(spec, g);
      for (std::size_t k = 0; k < g->size(); ++k) {
        ASSERT_GT(m.at(k).trace(), 0.0);
        ASSERT_GT(m.at(k).det(), 0.0);
      }
    }
  }
}

TEST(SampleMetric, NotPositiveDefiniteNamesNode) {
  SampledMetric t;
  t.origin = {-2, -2};
  t.h = 0.5;
  t.nx = t.ny = 9;
  t.g11.assign(81, 1.0);
  t.g12.assign(81, 0.0);
  t.g22.assign(81, 1.0);
  t.g12[40] = 2.0;  // (0, 0)
  try {
    sample_metric(MetricSpec::sampled(t), build_grid(Domain::disc({0, 0}, 1), 0.25));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotPositiveDefinite);
  }
}

TEST(SampleMetric, SampledDriftConvergesAtSecondOrder) {
  DiagonalParams d;
  d.a1 = 1.0;
  d.a2 = 1.5;
  d.e1 = 0.3;
  d.e2 = 0.4;
  d.k1 = 1.0;
  d.k2 = 2.0;
  d.p2 = 0.5;
  const MetricSpec spec = MetricSpec::diagonal(d);
  const Domain dom = Domain::disc({0.3, 0.2}, 1.0);
  std::vector<double> err;
  for (double h : {1.0 / 16, 1.0 / 32, 1.0 / 64}) {
    const GridPtr g = build_grid(dom, h);
    const InverseMetricField exact = sample_metric(spec, g);
    const InverseMetricField fd = sample_metric(MetricSpec::sampled(spec.tabulate(*g)), g);
    err.push_back(max_drift_difference(fd, exact));
  }
  for (int k = 0; k + 1 < 3; ++k) {
    const double order = std::log2(err[k] / err[k + 1]);
    EXPECT_GE(order, 1.8) << err[k] << " " << err[k + 1];
    EXPECT_LE(order, 2.2) << err[k] << " " << err[k + 1];
  }
}

TEST(MetricCsv, RoundTripAndErrors) {
  SampledMetric t;
  t.origin = {0.5, -1};
  t.h = 0.25;
  t.nx = 3;
  t.ny = 3;
  for (int k = 0; k < 9; ++k) {
    t.g11.push_back(1.0 + 0.1 * k);
    t.g12.push_back(0.01 * k);
    t.g22.push_back(2.0 / 3.0 + k);
  }
  std::stringstream s;
  write_metric_csv(s, t);
  const SampledMetric r = read_metric_csv(s);
  EXPECT_EQ(r.nx, 3);
  EXPECT_EQ(r.ny, 3);
  EXPECT_EQ(r.g11, t.g11);
  EXPECT_EQ(r.g12, t.g12);
  EXPECT_EQ(r.g22, t.g22);
  EXPECT_DOUBLE_EQ(r.h, 0.25);

  std::stringstream bad("x,y,g11,g12,g22\n0,0,1,0,1\n0.5,0,1,zero,1\n");
  try {
    read_metric_csv(bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MalformedInput);
    EXPECT_NE(std::string(e.what()).find("3"), std::string::npos);
  }
  std::stringstream header("x,y,g11,g22\n");
  EXPECT_THROW(read_metric_csv(header), Error);
}

TEST(Sym2, Eigenvalues) {
  const auto e = Sym2{2.0, 1.0, 2.0}.eigenvalues();
  EXPECT_NEAR(e[0], 1.0, 1e-15);
  EXPECT_NEAR(e[1], 3.0, 1e-15);
}
