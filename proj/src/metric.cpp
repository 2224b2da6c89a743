#include "geoeffect/metric.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

#include "geoeffect/error.hpp"
#include "geoeffect/parallel.hpp"

namespace geoeffect {

std::array<double, 2> Sym2::eigenvalues() const {
  const double m = 0.5 * (a11 + a22);
  const double r = std::hypot(0.5 * (a11 - a22), a12);
  return {m - r, m + r};
}

MetricSpec MetricSpec::flat() { return MetricSpec{}; }

MetricSpec MetricSpec::conformal(const ConformalParams& p) {
  if (!(p.scale > 0.0) || !(p.width > 0.0) || p.offset < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "conformal metric needs scale > 0, width > 0, offset >= 0");
  }
  MetricSpec m;
  m.kind_ = MetricKind::Conformal;
  m.conformal_ = p;
  return m;
}

MetricSpec MetricSpec::diagonal(const DiagonalParams& p) {
  if (!(p.a1 > 0.0) || !(p.a2 > 0.0) || !(std::abs(p.e1) < 1.0) || !(std::abs(p.e2) < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "diagonal metric needs a1, a2 > 0 and |e1|, |e2| < 1");
  }
  MetricSpec m;
  m.kind_ = MetricKind::DiagonalAnisotropic;
  m.diagonal_ = p;
  return m;
}

MetricSpec MetricSpec::sampled(SampledMetric table) {
  const std::size_t n = static_cast<std::size_t>(table.nx) * table.ny;
  if (table.nx < 3 || table.ny < 3 || !(table.h > 0.0) || table.g11.size() != n || table.g12.size() != n ||
      table.g22.size() != n) {
    throw Error(ErrorCode::InvalidArgument, "sampled metric table needs at least 3x3 consistent samples");
  }
  MetricSpec m;
  m.kind_ = MetricKind::SampledSPD;
  m.table_ = std::move(table);
  return m;
}

double MetricSpec::omega(Vec2 p) const {
  if (kind_ == MetricKind::Flat) return 1.0;
  if (kind_ != MetricKind::Conformal) throw Error(ErrorCode::UnsupportedMetric, "omega() needs a conformal metric");
  const auto& c = conformal_;
  const double ux = (p.x - c.mu.x) / c.width;
  const double uy = (p.y - c.mu.y) / c.width;
  return c.scale * (std::exp(-ux * ux) + std::exp(-uy * uy)) + c.offset;
}

MetricJet MetricSpec::jet(Vec2 p) const {
  MetricJet j;
  switch (kind_) {
    case MetricKind::Flat:
      j.g = {1.0, 0.0, 1.0};
      return j;
    case MetricKind::Conformal: {
      const auto& c = conformal_;
      const double ux = (p.x - c.mu.x) / c.width;
      const double uy = (p.y - c.mu.y) / c.width;
      const double ex = std::exp(-ux * ux);
      const double ey = std::exp(-uy * uy);
      const double om = c.scale * (ex + ey) + c.offset;
      const double om_x = -2.0 * c.scale * ex * ux / c.width;
      const double om_y = -2.0 * c.scale * ey * uy / c.width;
      j.g = {om, 0.0, om};
      j.dx = {om_x, 0.0, om_x};
      j.dy = {om_y, 0.0, om_y};
      return j;
    }
    case MetricKind::DiagonalAnisotropic: {
      const auto& d = diagonal_;
      const double s1 = std::sin(d.k1 * p.x + d.p1), c1 = std::cos(d.k1 * p.x + d.p1);
      const double cy1 = std::cos(d.k1 * p.y), sy1 = std::sin(d.k1 * p.y);
      const double cx2 = std::cos(d.k2 * p.x), sx2 = std::sin(d.k2 * p.x);
      const double s2 = std::sin(d.k2 * p.y + d.p2), c2 = std::cos(d.k2 * p.y + d.p2);
      j.g = {d.a1 * (1.0 + d.e1 * s1 * cy1), 0.0, d.a2 * (1.0 + d.e2 * cx2 * s2)};
      j.dx = {d.a1 * d.e1 * d.k1 * c1 * cy1, 0.0, -d.a2 * d.e2 * d.k2 * sx2 * s2};
      j.dy = {-d.a1 * d.e1 * d.k1 * s1 * sy1, 0.0, d.a2 * d.e2 * d.k2 * cx2 * c2};
      return j;
    }
    case MetricKind::SampledSPD:
      break;
  }
  throw Error(ErrorCode::UnsupportedMetric, "sampled metrics have no analytic derivatives");
}

namespace {

// Bilinear interpolation of a lattice array; clamps to the lattice.
double bilinear(const SampledMetric& t, const std::vector<double>& f, Vec2 p) {
  double fx = (p.x - t.origin.x) / t.h;
  double fy = (p.y - t.origin.y) / t.h;
  fx = std::clamp(fx, 0.0, static_cast<double>(t.nx - 1));
  fy = std::clamp(fy, 0.0, static_cast<double>(t.ny - 1));
  const int i = std::min(static_cast<int>(fx), t.nx - 2);
  const int j = std::min(static_cast<int>(fy), t.ny - 2);
  const double sx = fx - i;
  const double sy = fy - j;
  auto at = [&](int ii, int jj) { return f[static_cast<std::size_t>(jj) * t.nx + ii]; };
  return (1 - sx) * (1 - sy) * at(i, j) + sx * (1 - sy) * at(i + 1, j) + (1 - sx) * sy * at(i, j + 1) +
         sx * sy * at(i + 1, j + 1);
}

// Lattice index if p sits on a lattice node, else -1.
long lattice_node(const SampledMetric& t, Vec2 p) {
  const double fx = (p.x - t.origin.x) / t.h;
  const double fy = (p.y - t.origin.y) / t.h;
  const double rx = std::round(fx);
  const double ry = std::round(fy);
  if (std::abs(fx - rx) > 1e-9 || std::abs(fy - ry) > 1e-9) return -1;
  if (rx < 0 || ry < 0 || rx > t.nx - 1 || ry > t.ny - 1) return -1;
  return static_cast<long>(ry) * t.nx + static_cast<long>(rx);
}

}  // namespace

Sym2 MetricSpec::inverse(Vec2 p) const {
  if (kind_ != MetricKind::SampledSPD) return jet(p).g;
  const long k = lattice_node(table_, p);
  if (k >= 0) return {table_.g11[k], table_.g12[k], table_.g22[k]};
  return {bilinear(table_, table_.g11, p), bilinear(table_, table_.g12, p), bilinear(table_, table_.g22, p)};
}

MetricSpec MetricSpec::scaled(double c) const {
  if (kind_ != MetricKind::Conformal) throw Error(ErrorCode::UnsupportedMetric, "scaled() needs a conformal metric");
  ConformalParams p = conformal_;
  p.scale *= c;
  p.offset *= c;
  return conformal(p);
}

SampledMetric MetricSpec::tabulate(const Grid2D& grid) const {
  SampledMetric t;
  t.origin = grid.origin();
  t.h = grid.spacing();
  t.nx = grid.nx();
  t.ny = grid.ny();
  t.g11.resize(grid.size());
  t.g12.resize(grid.size());
  t.g22.resize(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const Sym2 g = inverse(grid.coord(k));
    t.g11[k] = g.a11;
    t.g12[k] = g.a12;
    t.g22[k] = g.a22;
  }
  return t;
}

bool InverseMetricField::has_cross_terms() const {
  for (double v : g12) {
    if (v != 0.0) return true;
  }
  return false;
}

namespace {

void check_spd(const Sym2& g, Vec2 p) {
  if (!(g.trace() > 0.0) || !(g.det() > 0.0)) {
    std::ostringstream os;
    os << "inverse metric not positive-definite at (" << p.x << ", " << p.y << ")";
    throw Error(ErrorCode::NotPositiveDefinite, os.str());
  }
}

// Second-order derivative of a lattice array along one axis at (i, j).
double lattice_diff(const std::vector<double>& f, int nx, int n_axis, int i, int j, bool along_x, double h) {
  auto at = [&](int a) {
    return along_x ? f[static_cast<std::size_t>(j) * nx + a] : f[static_cast<std::size_t>(a) * nx + i];
  };
  const int a = along_x ? i : j;
  if (a == 0) return (-3.0 * at(0) + 4.0 * at(1) - at(2)) / (2.0 * h);
  if (a == n_axis - 1) return (3.0 * at(a) - 4.0 * at(a - 1) + at(a - 2)) / (2.0 * h);
  return (at(a + 1) - at(a - 1)) / (2.0 * h);
}

}  // namespace

InverseMetricField sample_metric(const MetricSpec& spec, const GridPtr& grid) {
  InverseMetricField f;
  f.grid = grid;
  f.kind = spec.kind();
  const std::size_t n = grid->size();
  f.g11.assign(n, 0.0);
  f.g12.assign(n, 0.0);
  f.g22.assign(n, 0.0);
  f.sqrt_det_g.assign(n, 0.0);
  f.drift_x.assign(n, 0.0);
  f.drift_y.assign(n, 0.0);

  if (spec.kind() != MetricKind::SampledSPD) {
    parallel_for(n, [&](std::size_t b, std::size_t e) {
      for (std::size_t k = b; k < e; ++k) {
        const MetricJet jt = spec.jet(grid->coord(k));
        const Sym2& g = jt.g;
        f.g11[k] = g.a11;
        f.g12[k] = g.a12;
        f.g22[k] = g.a22;
        if (spec.kind() == MetricKind::Flat) {
          f.sqrt_det_g[k] = 1.0;
        } else if (spec.kind() == MetricKind::Conformal) {
          // sqrt(g) g^{ij} = delta^{ij}: the first-order coefficient vanishes identically.
          f.sqrt_det_g[k] = 1.0 / g.a11;
        } else {
          const double det = g.det();
          f.sqrt_det_g[k] = 1.0 / std::sqrt(det);
          const double ddx = jt.dx.a11 * g.a22 + g.a11 * jt.dx.a22 - 2.0 * g.a12 * jt.dx.a12;
          const double ddy = jt.dy.a11 * g.a22 + g.a11 * jt.dy.a22 - 2.0 * g.a12 * jt.dy.a12;
          const double lx = ddx / det;
          const double ly = ddy / det;
          f.drift_x[k] = jt.dx.a11 + jt.dy.a12 - 0.5 * (g.a11 * lx + g.a12 * ly);
          f.drift_y[k] = jt.dx.a12 + jt.dy.a22 - 0.5 * (g.a12 * lx + g.a22 * ly);
        }
      }
    });
  } else {
    const SampledMetric& t = spec.table();
    const Vec2 lo = grid->origin();
    const Vec2 hi = grid->coord(grid->nx() - 1, grid->ny() - 1);
    const double slack = 1e-9 * t.h;
    if (lo.x < t.origin.x - slack || lo.y < t.origin.y - slack || hi.x > t.origin.x + (t.nx - 1) * t.h + slack ||
        hi.y > t.origin.y + (t.ny - 1) * t.h + slack) {
      throw Error(ErrorCode::GridMismatch, "sampled metric lattice does not cover the grid");
    }
    // Lattice fluxes F^{ij} = sqrt(g) g^{ij}, differentiated at second order.
    const std::size_t m = t.g11.size();
    std::vector<double> sg(m), f11(m), f12(m), f22(m);
    for (std::size_t k = 0; k < m; ++k) {
      const Sym2 g{t.g11[k], t.g12[k], t.g22[k]};
      sg[k] = 1.0 / std::sqrt(g.det());
      f11[k] = sg[k] * g.a11;
      f12[k] = sg[k] * g.a12;
      f22[k] = sg[k] * g.a22;
    }
    std::vector<double> div_x(m), div_y(m);
    for (int j = 0; j < t.ny; ++j) {
      for (int i = 0; i < t.nx; ++i) {
        const std::size_t k = static_cast<std::size_t>(j) * t.nx + i;
        div_x[k] = lattice_diff(f11, t.nx, t.nx, i, j, true, t.h) + lattice_diff(f12, t.nx, t.ny, i, j, false, t.h);
        div_y[k] = lattice_diff(f12, t.nx, t.nx, i, j, true, t.h) + lattice_diff(f22, t.nx, t.ny, i, j, false, t.h);
      }
    }
    for (std::size_t k = 0; k < n; ++k) {
      const Vec2 p = grid->coord(k);
      const long q = lattice_node(t, p);
      auto val = [&](const std::vector<double>& a) { return q >= 0 ? a[q] : bilinear(t, a, p); };
      f.g11[k] = val(t.g11);
      f.g12[k] = val(t.g12);
      f.g22[k] = val(t.g22);
      check_spd(f.at(k), p);
      f.sqrt_det_g[k] = q >= 0 ? sg[q] : 1.0 / std::sqrt(f.at(k).det());
      f.drift_x[k] = val(div_x) / f.sqrt_det_g[k];
      f.drift_y[k] = val(div_y) / f.sqrt_det_g[k];
    }
  }
  for (std::size_t k = 0; k < n; ++k) check_spd(f.at(k), grid->coord(k));
  return f;
}

SampledMetric read_metric_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::MalformedInput, "metric CSV is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "x,y,g11,g12,g22") throw Error(ErrorCode::MalformedInput, "metric CSV header must be x,y,g11,g12,g22");

  std::vector<std::array<double, 5>> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::array<double, 5> r{};
    std::istringstream ls(line);
    std::string cell;
    int c = 0;
    while (std::getline(ls, cell, ',')) {
      if (c >= 5) {
        c = 6;
        break;
      }
      try {
        std::size_t used = 0;
        r[c] = std::stod(cell, &used);
        if (used != cell.size()) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw Error(ErrorCode::MalformedInput, "metric CSV line " + std::to_string(lineno) + ": bad number");
      }
      ++c;
    }
    if (c != 5) {
      throw Error(ErrorCode::MalformedInput, "metric CSV line " + std::to_string(lineno) + ": expected 5 fields");
    }
    rows.push_back(r);
  }
  if (rows.size() < 9) throw Error(ErrorCode::MalformedInput, "metric CSV needs at least 3x3 rows");

  // Row-major: x varies fastest, so nx is the run length of the first y value.
  SampledMetric t;
  t.origin = {rows[0][0], rows[0][1]};
  std::size_t nx = 1;
  while (nx < rows.size() && rows[nx][1] == rows[0][1]) ++nx;
  if (rows.size() % nx != 0) throw Error(ErrorCode::MalformedInput, "metric CSV rows do not form a full lattice");
  t.nx = static_cast<int>(nx);
  t.ny = static_cast<int>(rows.size() / nx);
  t.h = rows[1][0] - rows[0][0];
  if (!(t.h > 0.0)) throw Error(ErrorCode::MalformedInput, "metric CSV x must increase along a row");
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const double ex = t.origin.x + static_cast<double>(k % nx) * t.h;
    const double ey = t.origin.y + static_cast<double>(k / nx) * t.h;
    if (std::abs(rows[k][0] - ex) > 1e-9 * (1.0 + std::abs(ex)) ||
        std::abs(rows[k][1] - ey) > 1e-9 * (1.0 + std::abs(ey))) {
      throw Error(ErrorCode::MalformedInput,
                  "metric CSV line " + std::to_string(k + 2) + ": node off the uniform row-major lattice");
    }
    t.g11.push_back(rows[k][2]);
    t.g12.push_back(rows[k][3]);
    t.g22.push_back(rows[k][4]);
  }
  return t;
}

SampledMetric read_metric_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::MalformedInput, "cannot open metric CSV " + path.string());
  return read_metric_csv(in);
}

void write_metric_csv(std::ostream& out, const SampledMetric& t) {
  out << "x,y,g11,g12,g22\n";
  char buf[160];
  for (int j = 0; j < t.ny; ++j) {
    for (int i = 0; i < t.nx; ++i) {
      const std::size_t k = static_cast<std::size_t>(j) * t.nx + i;
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n", t.origin.x + i * t.h, t.origin.y + j * t.h,
                    t.g11[k], t.g12[k], t.g22[k]);
      out << buf;
    }
  }
}

}  // namespace geoeffect
