#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "geoeffect/elliptic.hpp"
#include "geoeffect/hydro.hpp"
#include "geoeffect/kg.hpp"
#include "geoeffect/runner.hpp"
#include "oracles.hpp"

using namespace geoeffect;
namespace fs = std::filesystem;

namespace {

constexpr double kExact = 1e-10;
constexpr double kSanitySeconds = 1.0;
constexpr int kSweepCases = 100;
constexpr double kSweepSeconds = 300.0;
constexpr double kRayFraction = 0.9;
constexpr double kPanelSeconds = 30.0;
constexpr double kForceRatio = 3.5;
constexpr double kQMeanFactor = 5.0;
constexpr double kGreensOracle = 0.05;
constexpr double kRadialOracle = 0.02;
constexpr double kFlowSeconds = 120.0;
constexpr double kContinuity = 1e-6;
constexpr double kEq12 = 1e-2;
constexpr double kViolationRatio = 1.9;
constexpr double kEnergyDrift = 0.01;
constexpr double kKgSeconds = 30.0;
constexpr double kDispersion = 0.01;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

Json read_json(const fs::path& p) {
  std::ifstream in(p);
  return Json::parse(in);
}

using Hashes = std::map<std::string, std::string>;

void collect_hashes(const fs::path& manifest, const std::string& prefix, Hashes& out) {
  const Json m = read_json(manifest);
  for (const auto& a : m.at("artifacts")) {
    out[prefix + a.at("path").get<std::string>()] = a.at("sha256").get<std::string>();
  }
}

Hashes run_hashes(const fs::path& dir) {
  Hashes h;
  collect_hashes(dir / "manifest.json", "", h);
  return h;
}

Hashes sweep_hashes(const fs::path& dir) {
  Hashes h;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_directory()) collect_hashes(e.path() / "manifest.json", e.path().filename().string() + "/", h);
  }
  return h;
}

struct Criterion {
  int id;
  std::string name;
  bool passed;
  std::string detail;
};

class Suite {
 public:
  void add(int id, const std::string& name, const std::function<std::pair<bool, std::string>()>& body) {
    const auto t0 = Clock::now();
    std::pair<bool, std::string> r;
    try {
      r = body();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    while (r.second.ends_with("; ")) r.second.resize(r.second.size() - 2);
    results_.push_back({id, name, r.first, r.second + " [" + num(seconds_since(t0)) + " s]"});
    const Criterion& c = results_.back();
    std::printf("%s %2d %s: %s\n", c.passed ? "PASS" : "FAIL", c.id, c.name.c_str(), c.detail.c_str());
    std::fflush(stdout);
  }
  bool all_passed() const {
    for (const auto& c : results_) {
      if (!c.passed) return false;
    }
    return true;
  }

 private:
  std::vector<Criterion> results_;
};

double flat_disc_error(const std::function<double(Vec2)>& f, double& elapsed) {
  const auto t0 = Clock::now();
  const GridPtr g = build_grid(Domain::disc({0.0, 0.0}, 1.0), 1.0 / 64);
  const InverseMetricField m = sample_metric(MetricSpec::flat(), g);
  const Eq17Solution s = solve_eq17(assemble_eq17(m, {0.0, 1.0, 1.0}), boundary_data(g, f));
  elapsed = seconds_since(t0);
  double err = 0.0;
  for (std::size_t k = 0; k < g->size(); ++k) {
    if (g->active(k)) err = std::max(err, std::abs(s.P[k] - f(g->coord(k))));
  }
  return err;
}

InverseMetricField flat_square(double h) {
  return sample_metric(MetricSpec::flat(), build_grid(Domain::polygon({{-2, -2}, {2, -2}, {2, 2}, {-2, 2}}), h));
}

Json sweep_doc() {
  return {{"base", {{"experiment", "solve-smp"}, {"random_case", true}, {"h", 1.0 / 64}}},
          {"seeds", {{"start", 0}, {"count", kSweepCases}}}};
}

Json kg_doc(double h) { return {{"experiment", "kg-counterexample"}, {"kg", {{"h", h}}}}; }

// Frequency of a standing wave from zero crossings of a probe at an antinode.
double measured_omega(double c, double m_eff, double hbar, double k) {
  const SpacetimeMetric1p1 mk = SpacetimeMetric1p1::minkowski(c);
  const double h = 1.0 / 256, dt = 0.25 * h / c;
  KGState s;
  s.x0 = 0.0;
  s.h = h;
  for (int i = 0; i <= 256; ++i) s.P.push_back(std::sin(k * s.x(i)));
  s.dPdt.assign(s.P.size(), 0.0);
  KGOptions o;
  o.m_eff = m_eff;
  o.hbar = hbar;
  const EvolutionSeries series = evolve_kg(mk, s, dt, static_cast<int>(3.0 / (c * dt)), o);
  const std::size_t probe = 32;
  std::vector<double> crossings;
  for (std::size_t j = 1; j < series.slices.size(); ++j) {
    const double a = series.slices[j - 1].P[probe], b = series.slices[j].P[probe];
    if (a != 0.0 && (a < 0) != (b < 0)) crossings.push_back(series.times[j - 1] + dt * a / (a - b));
  }
  if (crossings.size() < 4) return 0.0;
  return std::numbers::pi * static_cast<double>(crossings.size() - 1) / (crossings.back() - crossings.front());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance suite"};
  std::string work = "acceptance_work";
  app.add_option("--work", work, "scratch directory");
  CLI11_PARSE(app, argc, argv);
  const fs::path root(work);
  fs::remove_all(root);
  fs::create_directories(root);

  Suite suite;

  suite.add(1, "constant-harmonic", [] {
    double t = 0.0;
    const double err = flat_disc_error([](Vec2) { return 1.0; }, t);
    return std::pair{err <= kExact && t < kSanitySeconds, "max |P-1| " + num(err) + ", solve " + num(t) + " s"};
  });

  suite.add(2, "linear-harmonic", [] {
    double t = 0.0;
    const double err = flat_disc_error([](Vec2 p) { return p.x; }, t);
    return std::pair{err <= kExact && t < kSanitySeconds, "max |P-x| " + num(err) + ", solve " + num(t) + " s"};
  });

  double sweep_seconds = 0.0;
  suite.add(3, "smp-sweep", [&] {
    const auto t0 = Clock::now();
    const RunOutcome r = sweep_config(sweep_doc(), root / "c3a");
    sweep_seconds = seconds_since(t0);
    const Json agg = read_json(root / "c3a" / "aggregate.json");
    int good = 0;
    for (const auto& c : agg.at("combinations")) {
      const std::string v = c.at("metrics").at("verdict").get<std::string>();
      if (c.at("passed").get<bool>() && (v == "MaxOnBoundary" || v == "ConstantField")) ++good;
    }
    return std::pair{r.status == ExitStatus::Ok && good == kSweepCases && sweep_seconds < kSweepSeconds,
                     std::to_string(good) + "/" + std::to_string(kSweepCases) + " verdicts on the boundary"};
  });

  Json fig128, fig64;
  double fig_seconds = 0.0;
  suite.add(4, "figure1", [&] {
    const auto t0 = Clock::now();
    const RunOutcome r = run_config({{"experiment", "figure1"}}, root / "c4a", std::nullopt);
    fig_seconds = seconds_since(t0);
    fig128 = read_json(root / "c4a" / "manifest.json");
    const Json& panels = fig128.at("panels");
    bool ok = r.manifest.has_value() && panels.size() == 3;
    std::string detail;
    for (const auto& p : panels) {
      const Json& mt = fig128.at("metrics").at(p.at("name").get<std::string>());
      const double rays = mt.at("ray_fraction").get<double>();
      ok = ok && mt.at("verdict") == "MaxOnBoundary" && rays >= kRayFraction;
      detail += p.at("name").get<std::string>() + " " + mt.at("verdict").get<std::string>() + " rays " + num(rays) + "; ";
    }
    const double per_panel = fig_seconds / static_cast<double>(std::max<std::size_t>(panels.size(), 1));
    return std::pair{ok && per_panel < kPanelSeconds, detail + num(per_panel) + " s per panel"};
  });

  suite.add(5, "quantum-force-vanishing", [&] {
    run_config({{"experiment", "figure1"}, {"h", 1.0 / 64}}, root / "c5", std::nullopt);
    fig64 = read_json(root / "c5" / "manifest.json");
    bool ok = true;
    std::string detail;
    for (const auto& p : fig128.at("panels")) {
      const std::string name = p.at("name").get<std::string>();
      const double coarse = fig64.at("metrics").at(name).at("force_max").get<double>();
      const double fine = fig128.at("metrics").at(name).at("force_max").get<double>();
      const double ratio = coarse / fine;
      ok = ok && ratio >= kForceRatio;
      detail += name + " ratio " + num(ratio) + "; ";
    }
    return std::pair{ok, detail};
  });

  suite.add(6, "q-equals-C", [&] {
    const double h = 1.0 / 128, band = kQMeanFactor * h * h;
    bool ok = true;
    std::string detail;
    for (const auto& p : fig128.at("panels")) {
      const std::string name = p.at("name").get<std::string>();
      const double q = fig128.at("metrics").at(name).at("q_mean").get<double>();
      ok = ok && std::abs(q + 0.5) <= band;
      detail += name + " |Q+0.5| " + num(std::abs(q + 0.5)) + "; ";
    }
    return std::pair{ok, detail + "band " + num(band)};
  });

  suite.add(7, "flow-oracles", [] {
    const auto t0 = Clock::now();
    const InverseMetricField m = flat_square(1.0 / 64);
    const BreathingGaussian b;
    const DensityFamily fam = DensityFamily::breathing(b);
    const double t = 0.3;
    const FlowSolution f = invert_continuity(fam, t, m);
    const double greens = relative_l2_difference(f.u, greens_flow_oracle(fam, t, m), f.rho, 1e-3);
    const double radial = oracle::radial_oracle_error(f, b, t);
    const double secs = seconds_since(t0);
    return std::pair{greens <= kGreensOracle && radial <= kRadialOracle && secs < kFlowSeconds,
                     "vs Green's " + num(greens) + ", vs radial quadrature " + num(radial)};
  });

  suite.add(8, "continuity-residual", [] {
    const InverseMetricField flat = flat_square(1.0 / 64);
    DiagonalParams dp;
    dp.e1 = 0.2;
    dp.e2 = 0.3;
    ConformalParams cp;
    cp.mu = {0.3, -0.2};
    const std::vector<std::pair<std::string, InverseMetricField>> metrics = {
        {"flat", flat},
        {"diagonal", sample_metric(MetricSpec::diagonal(dp), flat.grid)},
        {"conformal", sample_metric(MetricSpec::conformal(cp), flat.grid)}};
    TranslatingGaussian tg;
    tg.velocity = {0.4, -0.3};
    double worst = 0.0;
    int count = 0;
    for (const auto& [name, m] : metrics) {
      const NeumannPoisson poisson(m);
      const Eq17Solution cl = solve_eq17(assemble_eq17(m, {0.0, 1.0, 1.0}),
                                         boundary_data(m.grid, [](Vec2 p) { return 1.5 + 0.1 * p.x; }));
      const std::vector<DensityFamily> fams = {
          DensityFamily::breathing({}),
          DensityFamily::translating(tg),
          DensityFamily::breathing({}).with_central_difference(1e-3),
          DensityFamily::static_density(DensityFamily::breathing({}).density(m, 0.0)),
          DensityFamily::solved_classical(cl.P)};
      for (const auto& fam : fams) {
        worst = std::max(worst, continuity_residual(invert_continuity(fam, 0.3, poisson), poisson));
        ++count;
      }
    }
    return std::pair{worst <= kContinuity, "worst of " + std::to_string(count) + " cases " + num(worst)};
  });

  suite.add(9, "external-force", [] {
    const InverseMetricField m = flat_square(1.0 / 64);
    const DensityFamily fam = DensityFamily::breathing({});
    const double t = 0.3, dt = 1e-3;
    const ExternalForceResult F = external_force(fam, m, 1.0, 1.0, t, dt);
    const double r = madelung_residual(fam, m, 1.0, 1.0, t, dt, F);
    return std::pair{r <= kEq12, "relative residual " + num(r)};
  });

  std::vector<double> kg_hs = {1.0 / 128, 1.0 / 256};
  suite.add(10, "kg-counterexample", [&] {
    bool ok = true;
    std::string detail;
    for (std::size_t n = 0; n < kg_hs.size(); ++n) {
      const auto t0 = Clock::now();
      const fs::path out = root / ("c10a_" + std::to_string(n));
      const RunOutcome r = run_config(kg_doc(kg_hs[n]), out, std::nullopt);
      const double secs = seconds_since(t0);
      const Json mt = read_json(out / "manifest.json").at("metrics");
      const double ratio = mt.at("ratio").get<double>(), drift = mt.at("energy_drift").get<double>();
      ok = ok && r.status == ExitStatus::Ok && mt.at("verdict") == "Violation" && ratio >= kViolationRatio &&
           drift <= kEnergyDrift && secs < kKgSeconds;
      detail += "h=1/" + std::to_string(static_cast<int>(std::lround(1.0 / kg_hs[n]))) + " " +
                mt.at("verdict").get<std::string>() + " ratio " + num(ratio) + " drift " + num(drift) + "; ";
    }
    return std::pair{ok, detail};
  });

  suite.add(11, "dispersion", [] {
    struct Case {
      double c, m_eff, hbar;
    };
    const double k = 4.0 * std::numbers::pi;
    bool ok = true;
    std::string detail;
    for (const Case& cs : {Case{1.0, 3.0, 1.0}, Case{2.0, 1.5, 0.7}}) {
      const double w = measured_omega(cs.c, cs.m_eff, cs.hbar, k);
      const double exact2 = cs.c * cs.c * k * k + std::pow(cs.m_eff * cs.c * cs.c / cs.hbar, 2);
      const double dev = std::abs(w * w / exact2 - 1.0);
      ok = ok && dev <= kDispersion;
      detail += "c=" + num(cs.c) + " m_eff=" + num(cs.m_eff) + " deviation " + num(dev) + "; ";
    }
    return std::pair{ok, detail};
  });

  suite.add(12, "signature-dichotomy", [&] {
    const RunOutcome r = run_config({{"experiment", "signature"}}, root / "c12", std::nullopt);
    const Json m = read_json(root / "c12" / "manifest.json");
    int lorentzian = 0, riemannian = 0;
    for (const auto& c : m.at("checks")) {
      const std::string name = c.at("name").get<std::string>();
      if (!c.at("passed").get<bool>()) continue;
      lorentzian += name.find(":LorentzianMixed") != std::string::npos;
      riemannian += name.find(":RiemannianDefinite") != std::string::npos;
    }
    return std::pair{r.status == ExitStatus::Ok && lorentzian >= 2 && riemannian >= 3,
                     std::to_string(lorentzian) + " spacetime LorentzianMixed, " + std::to_string(riemannian) +
                         " Riemannian RiemannianDefinite"};
  });

  suite.add(13, "determinism", [&] {
    sweep_config(sweep_doc(), root / "c3b");
    run_config({{"experiment", "figure1"}}, root / "c4b", std::nullopt);
    bool same = sweep_hashes(root / "c3a") == sweep_hashes(root / "c3b") && !sweep_hashes(root / "c3a").empty();
    std::string detail = std::string("sweep ") + (same ? "identical" : "differs");
    const bool fig = run_hashes(root / "c4a") == run_hashes(root / "c4b");
    detail += std::string(", figure1 ") + (fig ? "identical" : "differs");
    bool kg = true;
    for (std::size_t n = 0; n < kg_hs.size(); ++n) {
      const fs::path b = root / ("c10b_" + std::to_string(n));
      run_config(kg_doc(kg_hs[n]), b, std::nullopt);
      kg = kg && run_hashes(root / ("c10a_" + std::to_string(n))) == run_hashes(b);
    }
    detail += std::string(", kg ") + (kg ? "identical" : "differs");
    return std::pair{same && fig && kg, detail};
  });

  return suite.all_passed() ? 0 : 1;
}
