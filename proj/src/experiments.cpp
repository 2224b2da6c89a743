#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "geoeffect/error.hpp"
#include "geoeffect/runner.hpp"

namespace geoeffect {

namespace fs = std::filesystem;

namespace {

class Context {
public:
  Context(const ExperimentConfig& cfg, const fs::path& out) : cfg(cfg), out_(out) {
    m.experiment = std::string(to_string(cfg.kind));
    m.seed = cfg.seed;
    m.config = cfg.echo;
  }

  void write(const std::string& rel, const std::string& content) {
    const fs::path p = out_ / rel;
    fs::create_directories(p.parent_path());
    std::ofstream f(p, std::ios::binary);
    f << content;
    f.close();
    if (!f) throw std::runtime_error("cannot write " + p.string());
    m.artifacts.push_back({rel, sha256_file(p), static_cast<std::uintmax_t>(content.size())});
  }
  void write_json(const std::string& rel, const Json& j) { write(rel, j.dump(2) + "\n"); }
  void write_field(const std::string& rel, const ScalarField& f) {
    std::ostringstream s;
    write_field_csv(s, f);
    write(rel, s.str());
  }
  void write_vector(const std::string& rel, const VectorField& f) {
    std::ostringstream s;
    write_vector_csv(s, f);
    write(rel, s.str());
  }

  void check(const std::string& name, bool ok, const std::string& detail) { m.checks.push_back({name, ok, detail}); }

  template <class F>
  auto timed(const std::string& phase, F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    auto r = f();
    m.wall_times.emplace_back(phase, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    return r;
  }

  const ExperimentConfig& cfg;
  RunManifest m;

private:
  fs::path out_;
};

Json xy(Vec2 p) { return Json::array({p.x, p.y}); }

Json smp_json(const SMPReport& r) {
  return {{"interior_max", r.interior_max.value}, {"interior_max_xy", xy(r.interior_max.where)},
          {"boundary_max", r.boundary_max.value}, {"boundary_max_xy", xy(r.boundary_max.where)},
          {"interior_min", r.interior_min.value}, {"interior_min_xy", xy(r.interior_min.where)},
          {"boundary_min", r.boundary_min.value}, {"boundary_min_xy", xy(r.boundary_min.where)},
          {"margin", r.margin},                   {"verdict", std::string(to_string(r.verdict))}};
}

std::string verdict_name(const std::vector<SmpVerdict>& vs) {
  std::string s;
  for (auto v : vs) s += (s.empty() ? "" : "|") + std::string(to_string(v));
  return s;
}

bool verdict_expected(const std::vector<SmpVerdict>& expect, SmpVerdict got) {
  return std::find(expect.begin(), expect.end(), got) != expect.end();
}

Eq17Params eq17_params(const ExperimentConfig& cfg) { return {cfg.physics.C, cfg.physics.m, cfg.physics.hbar}; }

struct SolvedPanel {
  GridPtr grid;
  InverseMetricField metric;
  LinearSystem system;
  Eq17Solution solution;
  SMPReport smp;
  double bnorm = 0.0;
};

SolvedPanel solve_panel(Context& ctx, const DomainConfig& d, const std::string& tag) {
  const ExperimentConfig& cfg = ctx.cfg;
  SolvedPanel p;
  p.grid = build_grid(d.domain, cfg.h);
  p.metric = sample_metric(cfg.metric, p.grid);
  p.system = ctx.timed(tag + "assemble", [&] { return assemble_eq17(p.metric, eq17_params(cfg)); });
  const ScalarField bd = boundary_data(p.grid, [&](Vec2 x) { return cfg.boundary(x); });
  for (std::size_t k = 0; k < bd.values.size(); ++k) p.bnorm = std::max(p.bnorm, std::abs(bd.values[k]));
  SolverOptions so;
  so.tol = cfg.tol.solver;
  p.solution = ctx.timed(tag + "solve", [&] { return solve_eq17(p.system, bd, so); });
  p.smp = verify_smp(p.solution.P, 10.0 * cfg.tol.solver * p.bnorm, cfg.tol.constant * std::max(1.0, p.bnorm));
  return p;
}

Json solve_json(const SolvedPanel& p) {
  Json j = smp_json(p.smp);
  j["residual"] = p.solution.report.relative_residual;
  j["iterations"] = p.solution.report.iterations;
  j["method"] = std::string(to_string(p.solution.report.method));
  j["interior_nodes"] = p.grid->interior_count();
  j["boundary_nodes"] = p.grid->boundary_count();
  j["central_rows"] = p.system.stats.central_rows;
  j["upwind_rows"] = p.system.stats.upwind_rows;
  j["mesh_peclet"] = p.system.stats.mesh_peclet_ok;
  j["m_matrix"] = p.system.stats.m_matrix;
  return j;
}

void run_solve_smp(Context& ctx) {
  const ExperimentConfig& cfg = ctx.cfg;
  const SolvedPanel p = solve_panel(ctx, cfg.domains.front(), "");
  ctx.write_field("field.csv", p.solution.P);
  Json rep = solve_json(p);
  if (cfg.random_case) rep["case"] = {{"domain", cfg.domains.front().echo}, {"metric", cfg.metric_echo}};
  ctx.write_json("report.json", rep);

  const double tol = cfg.tol.solver;
  ctx.check("residual", p.solution.report.converged && p.solution.report.relative_residual <= tol,
            "relative residual " + format_number(p.solution.report.relative_residual));
  std::vector<SmpVerdict> expect = cfg.expect_verdict;
  if (expect.empty()) expect = {SmpVerdict::MaxOnBoundary, SmpVerdict::ConstantField};
  ctx.check("verdict=" + verdict_name(expect), verdict_expected(expect, p.smp.verdict),
            "verdict " + std::string(to_string(p.smp.verdict)) + ", margin " + format_number(p.smp.margin));
  if (cfg.random_case) {
    ctx.check("mesh_peclet", p.system.stats.mesh_peclet_ok, "upwind rows " + std::to_string(p.system.stats.upwind_rows));
    const double slack = 10.0 * tol * p.bnorm;
    ctx.check("minimum_principle", p.smp.interior_min.value >= p.smp.boundary_min.value - slack,
              "interior min " + format_number(p.smp.interior_min.value) + ", boundary min " +
                  format_number(p.smp.boundary_min.value));
  }
  ctx.m.metrics = {{"verdict", std::string(to_string(p.smp.verdict))},
                   {"margin", p.smp.margin},
                   {"residual", p.solution.report.relative_residual},
                   {"interior_nodes", p.grid->interior_count()}};
}

void run_figure1(Context& ctx) {
  const ExperimentConfig& cfg = ctx.cfg;
  const double h = cfg.h;
  Json panels = Json::array();
  for (const DomainConfig& d : cfg.domains) {
    const SolvedPanel p = solve_panel(ctx, d, d.name + ":");
    const double rays = monotone_ray_fraction(p.solution.P, d.domain, cfg.tol.rays);
    QuantumPotentialField Q = quantum_potential(p.solution.P, p.metric, cfg.physics.m, cfg.physics.hbar);
    const double q_mean = Q.mean();
    const double force_all = quantum_force(Q).max_norm();
    exclude_boundary_layer(Q, cfg.tol.boundary_layer);
    const double q_std = Q.stddev();
    const double force = quantum_force(Q).max_norm();

    const std::string field = d.name + "_amplitude.csv";
    const std::string report = d.name + "_report.json";
    ctx.write_field(field, p.solution.P);
    Json rep = solve_json(p);
    rep["ray_fraction"] = rays;
    rep["rays"] = cfg.tol.rays;
    rep["q_mean"] = q_mean;
    rep["q_std"] = q_std;
    rep["force_max"] = force;
    rep["force_max_all"] = force_all;
    rep["boundary_layer"] = cfg.tol.boundary_layer;
    rep["h"] = h;
    rep["C"] = cfg.physics.C;
    ctx.write_json(report, rep);
    panels.push_back({{"name", d.name},
                      {"field", field},
                      {"report", report},
                      {"value", "amplitude"},
                      {"colormap", "viridis"},
                      {"title", d.name},
                      {"boundary_overlay", true},
                      {"domain", d.echo}});

    ctx.check(d.name + ":verdict=MaxOnBoundary", p.smp.verdict == SmpVerdict::MaxOnBoundary,
              "verdict " + std::string(to_string(p.smp.verdict)) + ", margin " + format_number(p.smp.margin));
    ctx.check(d.name + ":ray_fraction", rays >= cfg.tol.ray_fraction, "monotone rays " + format_number(rays));
    const double band = cfg.tol.q_mean_factor * h * h;
    ctx.check(d.name + ":q_mean", std::abs(q_mean - cfg.physics.C) <= band,
              "mean Q " + format_number(q_mean) + " vs C " + format_number(cfg.physics.C) + " +- " + format_number(band));
    ctx.check(d.name + ":residual", p.solution.report.relative_residual <= cfg.tol.solver,
              "relative residual " + format_number(p.solution.report.relative_residual));
    ctx.m.metrics[d.name] = {{"verdict", std::string(to_string(p.smp.verdict))}, {"ray_fraction", rays},
                             {"q_mean", q_mean}, {"q_std", q_std}, {"force_max", force}};
  }
  ctx.m.panels = panels;
}

DensityFamily make_family(Context& ctx, const InverseMetricField& metric) {
  const ExperimentConfig& cfg = ctx.cfg;
  const FamilyConfig& f = cfg.family;
  DensityFamily fam = DensityFamily::breathing(f.breathing);
  switch (f.kind) {
    case DensityKind::TranslatingGaussian: fam = DensityFamily::translating(f.translating); break;
    case DensityKind::SolvedClassical: {
      const LinearSystem sys = assemble_eq17(metric, eq17_params(cfg));
      SolverOptions so;
      so.tol = cfg.tol.solver;
      const Eq17Solution sol = solve_eq17(sys, boundary_data(metric.grid, [&](Vec2 x) { return cfg.boundary(x); }), so);
      fam = DensityFamily::solved_classical(sol.P);
      break;
    }
    default: break;
  }
  if (f.policy == TimeDerivativePolicy::CentralDifference) fam = fam.with_central_difference(f.difference_step);
  return fam;
}

void run_invert_flow(Context& ctx) {
  const ExperimentConfig& cfg = ctx.cfg;
  const DomainConfig& d = cfg.domains.front();
  const GridPtr grid = build_grid(d.domain, cfg.h);
  const InverseMetricField metric = sample_metric(cfg.metric, grid);
  const DensityFamily fam = make_family(ctx, metric);
  FlowOptions fo;
  fo.solver.tol = cfg.tol.solver;
  const NeumannPoisson poisson = ctx.timed("factorize", [&] { return NeumannPoisson(metric, fo.solver); });
  const FlowSolution flow = ctx.timed("solve", [&] { return invert_continuity(fam, cfg.time.t, poisson, fo); });
  const double residual = continuity_residual(flow, poisson);

  Json rep = {{"continuity_residual", residual},
              {"residual", flow.report.relative_residual},
              {"iterations", flow.report.iterations},
              {"method", std::string(to_string(flow.report.method))},
              {"t", cfg.time.t},
              {"mass", fam.mass(metric, cfg.time.t)},
              {"max_speed", flow.u.max_norm()},
              {"mean_speed", flow.u.mean_norm()}};
  const bool gaussian = fam.kind() == DensityKind::BreathingGaussian || fam.kind() == DensityKind::TranslatingGaussian;
  if (metric.kind == MetricKind::Flat && gaussian) {
    try {
      const VectorField oracle = ctx.timed("oracle", [&] { return greens_flow_oracle(fam, cfg.time.t, metric); });
      const double diff = relative_l2_difference(flow.u, oracle, flow.rho, 1e-3);
      rep["oracle_l2"] = diff;
      ctx.check("oracle_l2", diff <= cfg.tol.oracle, "grid vs Green's oracle " + format_number(diff));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DomainTooSmall) throw;
      rep["oracle_l2"] = nullptr;
      rep["oracle_note"] = e.what();
    }
  }
  ctx.write_field("density.csv", flow.rho);
  ctx.write_field("potential.csv", flow.phi);
  ctx.write_vector("velocity.csv", flow.u);
  ctx.write_json("flow_report.json", rep);
  ctx.check("continuity_residual", residual <= cfg.tol.continuity, "residual " + format_number(residual));
  ctx.check("solver_residual", flow.report.converged && flow.report.relative_residual <= cfg.tol.solver,
            "relative residual " + format_number(flow.report.relative_residual));
  ctx.m.metrics = rep;
}

void run_external_force(Context& ctx) {
  const ExperimentConfig& cfg = ctx.cfg;
  const DomainConfig& d = cfg.domains.front();
  const GridPtr grid = build_grid(d.domain, cfg.h);
  const InverseMetricField metric = sample_metric(cfg.metric, grid);
  const DensityFamily fam = make_family(ctx, metric);
  ForceOptions fo;
  fo.flow.solver.tol = cfg.tol.solver;
  const double t = cfg.time.t, dt = cfg.time.dt;
  const auto& ph = cfg.physics;
  const ExternalForceResult F =
      ctx.timed("force", [&] { return external_force(fam, metric, ph.m, ph.hbar, t, dt, fo); });
  const double residual = ctx.timed("residual", [&] { return madelung_residual(fam, metric, ph.m, ph.hbar, t, dt, F, fo); });
  const Json rep = {{"max_force_norm", F.force.max_norm()},
                    {"mean_force_norm", F.force.mean_norm()},
                    {"masked_fraction", F.masked_fraction},
                    {"residual_eq12", residual},
                    {"quantum_gradient_max", F.quantum_gradient_max},
                    {"t", t},
                    {"dt", dt}};
  ctx.write_vector("force.csv", F.force);
  ctx.write_vector("quantum_gradient.csv", F.quantum_gradient);
  ctx.write_json("force_report.json", rep);
  ctx.check("residual_eq12", residual <= cfg.tol.eq12, "relative residual " + format_number(residual));
  ctx.m.metrics = rep;
}

KGState kg_initial(const KgConfig& k, double c) {
  KGState s;
  s.x0 = k.x0;
  s.h = k.h;
  const auto n = static_cast<std::size_t>(std::llround((k.x1 - k.x0) / k.h)) + 1;
  s.P.assign(n, 0.0);
  s.dPdt.assign(n, 0.0);
  s.boundary = k.boundary;
  const double mid = 0.5 * (k.x0 + k.x1);
  std::vector<std::pair<double, double>> pulses;  // centre, direction
  pulses.emplace_back(mid - 0.5 * k.separation, 1.0);
  if (k.pulses == "colliding") pulses.emplace_back(mid + 0.5 * k.separation, -1.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = s.x(i);
    for (auto [x0, dir] : pulses) {
      const double z = (x - x0) / k.width;
      const double f = std::exp(-0.5 * z * z);
      s.P[i] += f;
      s.dPdt[i] += dir * c * z / k.width * f;  // -dir c f'
    }
  }
  return s;
}

std::string slice_csv(const KGState& s) {
  std::string out = "x,P,dPdt\n";
  for (std::size_t i = 0; i < s.P.size(); ++i) {
    out += format_number(s.x(i)) + "," + format_number(s.P[i]) + "," + format_number(s.dPdt[i]) + "\n";
  }
  return out;
}

void run_kg(Context& ctx) {
  const ExperimentConfig& cfg = ctx.cfg;
  const KgConfig& k = cfg.kg;
  const double c = cfg.physics.c;
  const SpacetimeMetric1p1 metric =
      k.conformal ? SpacetimeMetric1p1::conformal(k.wave, c) : SpacetimeMetric1p1::minkowski(c);
  const KGState init = kg_initial(k, c);
  double speed = 0.0;
  for (std::size_t i = 0; i < init.P.size(); ++i) speed = std::max(speed, metric.wave_speed(0.0, init.x(i)));
  const double dt = k.cfl * k.h / speed;
  const int steps = static_cast<int>(std::ceil(k.t_end / dt - 1e-9));
  KGOptions opts;
  opts.m_eff = cfg.physics.m_eff;
  opts.hbar = cfg.physics.hbar;
  opts.boundary = k.boundary;
  const EvolutionSeries series = ctx.timed("evolve", [&] { return evolve_kg(metric, init, dt, steps, opts); });
  double p0 = 0.0;
  for (double v : init.P) p0 = std::max(p0, std::abs(v));
  const SMPReport smp = detect_interior_max(series, cfg.tol.spacetime_smp * p0);

  Json times = Json::array(), energy = Json::array(), files = Json::array();
  char name[64];
  const std::size_t last = series.slices.size() - 1;
  for (std::size_t s = 0; s <= last; ++s) {
    if (s % static_cast<std::size_t>(k.output_every) != 0 && s != last) continue;
    std::snprintf(name, sizeof name, "series/slice_%05zu.csv", s);
    ctx.write(name, slice_csv(series.slices[s]));
    times.push_back(series.times[s]);
    energy.push_back(series.energy[s]);
    files.push_back(std::string(name).substr(7));
  }
  ctx.write_json("series/index.json", {{"times", times},
                                       {"energy", energy},
                                       {"cfl", series.cfl},
                                       {"dt", dt},
                                       {"h", k.h},
                                       {"boundary", std::string(to_string(k.boundary))},
                                       {"files", files}});

  double drift = 0.0;
  const double e0 = series.energy.front();
  for (std::size_t s = 0; s <= last; ++s) {
    if (series.times[s] <= k.pre_exit + 1e-12) drift = std::max(drift, std::abs(series.energy[s] - e0) / e0);
  }
  const double ratio = smp.boundary_max.value > 0.0 ? smp.interior_max.value / smp.boundary_max.value : 0.0;
  Json rep = smp_json(smp);
  rep.erase("interior_max_xy");
  rep.erase("boundary_max_xy");
  rep.erase("interior_min_xy");
  rep.erase("boundary_min_xy");
  rep["interior_max_tx"] = {smp.interior_max.where.y, smp.interior_max.where.x};
  rep["boundary_max_tx"] = {smp.boundary_max.where.y, smp.boundary_max.where.x};
  rep["ratio"] = ratio;
  rep["energy_drift"] = drift;
  rep["t_end"] = series.times.back();
  ctx.write_json("smp_report.json", rep);

  std::vector<SmpVerdict> expect = cfg.expect_verdict;
  if (expect.empty()) expect = {k.pulses == "colliding" ? SmpVerdict::Violation : SmpVerdict::MaxOnBoundary};
  ctx.check("verdict=" + verdict_name(expect), verdict_expected(expect, smp.verdict),
            "verdict " + std::string(to_string(smp.verdict)));
  if (k.pulses == "colliding") {
    ctx.check("ratio", ratio >= cfg.tol.violation_ratio, "interior/boundary max " + format_number(ratio));
  }
  ctx.check("energy_drift", drift <= cfg.tol.energy_drift, "relative drift " + format_number(drift));
  ctx.m.metrics = {{"verdict", std::string(to_string(smp.verdict))}, {"ratio", ratio}, {"energy_drift", drift},
                   {"cfl", series.cfl}, {"steps", steps}};
}

std::vector<Vec2> sample_points(Vec2 lo, Vec2 hi, int n) {
  std::vector<Vec2> pts;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      pts.push_back({lo.x + (hi.x - lo.x) * i / (n - 1), lo.y + (hi.y - lo.y) * j / (n - 1)});
    }
  }
  return pts;
}

Json signature_json(const SignatureReport& r) {
  Json pts = Json::array(), signs = Json::array();
  for (const Vec2& p : r.points) pts.push_back({p.x, p.y});
  for (const auto& s : r.eigen_signs) signs.push_back({s[0], s[1]});
  return {{"points", pts}, {"eigen_signs", signs}, {"verdict", std::string(to_string(r.verdict))}};
}

void run_signature(Context& ctx) {
  const ExperimentConfig& cfg = ctx.cfg;
  const double c = cfg.physics.c;
  const std::vector<Vec2> tx = sample_points({0.0, cfg.kg.x0}, {1.0, cfg.kg.x1}, 5);
  const std::vector<std::pair<std::string, SpacetimeMetric1p1>> spacetime = {
      {"minkowski", SpacetimeMetric1p1::minkowski(c)},
      {"conformal_minkowski", SpacetimeMetric1p1::conformal(cfg.kg.wave, c)}};
  std::vector<std::pair<std::string, MetricSpec>> riemannian = {
      {"flat", MetricSpec::flat()},
      {"conformal", MetricSpec::conformal()},
      {"diagonal", MetricSpec::diagonal({1.0, 1.5, 0.3, 0.4, 1.0, 2.0, 0.0, 0.5})}};
  std::vector<Vec2> xy_pts = sample_points({0.0, 0.0}, {5.0, 5.0}, 5);
  std::vector<Vec2> cfg_pts = xy_pts;
  if (cfg.echo.contains("metric")) {
    if (cfg.metric.kind() == MetricKind::SampledSPD) {
      const SampledMetric& t = cfg.metric.table();
      cfg_pts = sample_points(t.origin, {t.origin.x + (t.nx - 1) * t.h, t.origin.y + (t.ny - 1) * t.h}, 5);
    }
    riemannian.emplace_back("configured", cfg.metric);
  }
  Json summary = Json::object();
  for (const auto& [name, metric] : spacetime) {
    const SignatureReport r = signature_check(metric, tx);
    ctx.write_json("signature_" + name + ".json", signature_json(r));
    ctx.check(name + ":LorentzianMixed", r.verdict == SignatureVerdict::LorentzianMixed,
              "verdict " + std::string(to_string(r.verdict)));
    summary[name] = std::string(to_string(r.verdict));
  }
  for (const auto& [name, metric] : riemannian) {
    const SignatureReport r = signature_check(metric, name == "configured" ? cfg_pts : xy_pts);
    ctx.write_json("signature_" + name + ".json", signature_json(r));
    ctx.check(name + ":RiemannianDefinite", r.verdict == SignatureVerdict::RiemannianDefinite,
              "verdict " + std::string(to_string(r.verdict)));
    summary[name] = std::string(to_string(r.verdict));
  }
  ctx.m.metrics = summary;
}

ManufacturedSolution manufactured(const std::string& name) {
  if (name == "sine-product") return sine_product_solution();
  if (name == "linear") return linear_solution(0.0, 1.0, 2.0);
  return mixed_solution();
}

void run_convergence(Context& ctx) {
  const ExperimentConfig& cfg = ctx.cfg;
  const ConvergenceProblem pb{cfg.domains.front().domain, cfg.metric, eq17_params(cfg),
                              manufactured(cfg.convergence.solution)};
  SolverOptions so;
  so.tol = cfg.tol.solver;
  if (cfg.convergence.h_list.empty()) {
    const ManufacturedError e = ctx.timed("solve", [&] { return manufactured_error(pb, cfg.h, so); });
    const Json rep = {{"solution", cfg.convergence.solution}, {"h", cfg.h}, {"error_linf", e.error_linf}};
    ctx.write_json("convergence.json", rep);
    ctx.check("finite_error", std::isfinite(e.error_linf), "error " + format_number(e.error_linf));
    ctx.m.metrics = rep;
    return;
  }
  const ConvergenceResult r = ctx.timed("study", [&] { return convergence_study(pb, cfg.convergence.h_list, so); });
  Json rep = {{"solution", cfg.convergence.solution}, {"h", r.h},       {"error_linf", r.error_linf},
              {"pairwise_order", r.pairwise_order},   {"exact", r.exact}};
  rep["order"] = r.exact ? Json(nullptr) : Json(r.order);
  ctx.write_json("convergence.json", rep);
  if (cfg.convergence.solution == "linear") {
    ctx.check("exact", r.exact, "errors at round-off level");
  } else {
    ctx.check("order", !r.exact && r.order >= cfg.tol.order_min && r.order <= cfg.tol.order_max,
              r.exact ? std::string("errors at round-off level") : "observed order " + format_number(r.order));
  }
  ctx.m.metrics = rep;
}

}  // namespace

RunManifest run_experiment(const ExperimentConfig& cfg, const fs::path& out) {
  Context ctx(cfg, out);
  switch (cfg.kind) {
    case ExperimentKind::SolveSmp: run_solve_smp(ctx); break;
    case ExperimentKind::Figure1: run_figure1(ctx); break;
    case ExperimentKind::InvertFlow: run_invert_flow(ctx); break;
    case ExperimentKind::ExternalForce: run_external_force(ctx); break;
    case ExperimentKind::KgCounterexample: run_kg(ctx); break;
    case ExperimentKind::Signature: run_signature(ctx); break;
    case ExperimentKind::Convergence: run_convergence(ctx); break;
  }
  return ctx.m;
}

}  // namespace geoeffect
