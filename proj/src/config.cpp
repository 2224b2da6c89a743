#include <cctype>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <set>

#include "geoeffect/error.hpp"
#include "geoeffect/runner.hpp"

namespace geoeffect {

std::string_view to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::SolveSmp: return "solve-smp";
    case ExperimentKind::Figure1: return "figure1";
    case ExperimentKind::InvertFlow: return "invert-flow";
    case ExperimentKind::ExternalForce: return "external-force";
    case ExperimentKind::KgCounterexample: return "kg-counterexample";
    case ExperimentKind::Signature: return "signature";
    case ExperimentKind::Convergence: return "convergence";
  }
  return "unknown";
}

double BoundaryConfig::operator()(Vec2 p) const {
  switch (kind) {
    case BoundaryKind::Constant: return value;
    case BoundaryKind::Linear: return a + bx * p.x + by * p.y;
    case BoundaryKind::Random: return base + amp * 0.5 * (1.0 + std::sin(kx * p.x + ky * p.y + phase));
  }
  return 0.0;
}

namespace {

[[noreturn]] void invalid(const std::string& path, const std::string& msg) {
  throw Error(ErrorCode::ConfigInvalid, (path.empty() ? std::string("config") : path) + ": " + msg);
}

// Strict object reader: every key read is recorded and `done` rejects the rest.
class Obj {
public:
  Obj(const Json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j.is_object()) invalid(path_, "expected an object");
  }

  bool has(const std::string& key) const { return j_.contains(key); }
  std::string at(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  const Json* get(const std::string& key) {
    used_.insert(key);
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  double number(const std::string& key, double def) {
    const Json* v = get(key);
    if (!v) return def;
    if (!v->is_number()) invalid(at(key), "expected a number");
    const double d = v->get<double>();
    if (!std::isfinite(d)) invalid(at(key), "expected a finite number");
    return d;
  }
  double positive(const std::string& key, double def) {
    const double d = number(key, def);
    if (!(d > 0.0)) invalid(at(key), "must be positive");
    return d;
  }
  double nonnegative(const std::string& key, double def) {
    const double d = number(key, def);
    if (!(d >= 0.0)) invalid(at(key), "must be nonnegative");
    return d;
  }
  long integer(const std::string& key, long def) {
    const Json* v = get(key);
    if (!v) return def;
    if (!v->is_number_integer()) invalid(at(key), "expected an integer");
    return v->get<long>();
  }
  bool boolean(const std::string& key, bool def) {
    const Json* v = get(key);
    if (!v) return def;
    if (!v->is_boolean()) invalid(at(key), "expected true or false");
    return v->get<bool>();
  }
  std::string string(const std::string& key, const std::string& def) {
    const Json* v = get(key);
    if (!v) return def;
    if (!v->is_string()) invalid(at(key), "expected a string");
    return v->get<std::string>();
  }
  Vec2 vec(const std::string& key, Vec2 def) {
    const Json* v = get(key);
    if (!v) return def;
    return to_vec(*v, at(key));
  }
  static Vec2 to_vec(const Json& v, const std::string& path) {
    if (v.is_number()) return {v.get<double>(), v.get<double>()};
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
      invalid(path, "expected [x, y]");
    }
    return {v[0].get<double>(), v[1].get<double>()};
  }

  void done() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!used_.count(it.key())) invalid(at(it.key()), "unknown key");
    }
  }

private:
  const Json& j_;
  std::string path_;
  std::set<std::string> used_;
};

ExperimentKind parse_kind(const std::string& s, const std::string& path) {
  for (auto k : {ExperimentKind::SolveSmp, ExperimentKind::Figure1, ExperimentKind::InvertFlow,
                 ExperimentKind::ExternalForce, ExperimentKind::KgCounterexample, ExperimentKind::Signature,
                 ExperimentKind::Convergence}) {
    if (s == to_string(k)) return k;
  }
  invalid(path, "unknown experiment '" + s + "'");
}

Domain square(Vec2 c, double half) {
  return Domain::polygon({{c.x - half, c.y - half}, {c.x + half, c.y - half}, {c.x + half, c.y + half},
                          {c.x - half, c.y + half}});
}

DomainConfig parse_domain(const Json& j, const std::string& path, const std::string& default_name) {
  Obj o(j, path);
  DomainConfig d;
  d.echo = j;
  d.name = o.string("name", default_name);
  const std::string shape = o.string("shape", "");
  try {
    if (shape == "disc") {
      d.domain = Domain::disc(o.vec("center", {0.0, 0.0}), o.positive("radius", 1.0));
    } else if (shape == "superellipse") {
      const Vec2 c = o.vec("center", {0.0, 0.0});
      const double a = o.positive("a", 1.0), b = o.positive("b", 1.0);
      d.domain = Domain::superellipse(c, a, b, o.number("exponent", 2.0));
    } else if (shape == "polygon") {
      const Json* v = o.get("vertices");
      if (!v || !v->is_array() || v->size() < 3) invalid(o.at("vertices"), "expected at least 3 [x, y] vertices");
      std::vector<Vec2> pts;
      for (std::size_t n = 0; n < v->size(); ++n) pts.push_back(Obj::to_vec((*v)[n], o.at("vertices")));
      d.domain = Domain::polygon(std::move(pts));
    } else if (shape == "regular_polygon") {
      const Vec2 c = o.vec("center", {0.0, 0.0});
      const double r = o.positive("circumradius", 1.0);
      const long sides = o.integer("sides", 6);
      if (sides < 3 || sides > 1000) invalid(o.at("sides"), "must lie in [3, 1000]");
      d.domain = Domain::regular_polygon(c, r, static_cast<int>(sides), o.number("phase", 0.0));
    } else if (shape == "square") {
      d.domain = square(o.vec("center", {0.0, 0.0}), o.positive("half_width", 1.0));
    } else {
      invalid(o.at("shape"), "expected disc, superellipse, polygon, regular_polygon or square");
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ConfigInvalid) throw;
    invalid(path, e.what());
  }
  o.done();
  return d;
}

MetricSpec parse_metric(const Json& j, const std::string& path, const std::filesystem::path& base_dir) {
  Obj o(j, path);
  const std::string kind = o.string("kind", "flat");
  MetricSpec m = MetricSpec::flat();
  if (kind == "flat") {
  } else if (kind == "conformal") {
    ConformalParams p;
    p.mu = o.vec("mu", p.mu);
    p.scale = o.positive("scale", p.scale);
    p.width = o.positive("width", p.width);
    p.offset = o.nonnegative("offset", p.offset);
    m = MetricSpec::conformal(p);
  } else if (kind == "diagonal") {
    DiagonalParams p;
    p.a1 = o.positive("a1", p.a1);
    p.a2 = o.positive("a2", p.a2);
    p.e1 = o.number("e1", p.e1);
    p.e2 = o.number("e2", p.e2);
    if (!(std::abs(p.e1) < 1.0) || !(std::abs(p.e2) < 1.0)) invalid(path, "|e1| and |e2| must be below 1");
    p.k1 = o.number("k1", p.k1);
    p.k2 = o.number("k2", p.k2);
    p.p1 = o.number("p1", p.p1);
    p.p2 = o.number("p2", p.p2);
    m = MetricSpec::diagonal(p);
  } else if (kind == "sampled") {
    std::filesystem::path file = o.string("path", "");
    if (file.empty()) invalid(o.at("path"), "sampled metric needs a CSV path");
    if (file.is_relative() && !base_dir.empty()) file = base_dir / file;
    try {
      m = MetricSpec::sampled(read_metric_csv(file));
    } catch (const Error& e) {
      invalid(o.at("path"), e.what());
    }
  } else {
    invalid(o.at("kind"), "expected flat, conformal, diagonal or sampled");
  }
  o.done();
  return m;
}

BoundaryConfig parse_boundary(const Json& j, const std::string& path) {
  Obj o(j, path);
  BoundaryConfig b;
  const std::string kind = o.string("kind", "constant");
  if (kind == "constant") {
    b.kind = BoundaryKind::Constant;
    b.value = o.number("value", 1.0);
  } else if (kind == "linear") {
    b.kind = BoundaryKind::Linear;
    b.a = o.number("a", 0.0);
    b.bx = o.number("bx", 1.0);
    b.by = o.number("by", 0.0);
  } else if (kind == "wave") {
    b.kind = BoundaryKind::Random;
    b.base = o.nonnegative("base", 0.0);
    b.amp = o.nonnegative("amp", 1.0);
    b.kx = o.number("kx", 1.0);
    b.ky = o.number("ky", 0.0);
    b.phase = o.number("phase", 0.0);
  } else {
    invalid(o.at("kind"), "expected constant, linear or wave");
  }
  o.done();
  return b;
}

FamilyConfig parse_family(const Json& j, const std::string& path) {
  Obj o(j, path);
  FamilyConfig f;
  const std::string kind = o.string("kind", "breathing");
  if (kind == "breathing") {
    f.kind = DensityKind::BreathingGaussian;
    auto& b = f.breathing;
    b.center = o.vec("center", b.center);
    b.sigma0 = o.positive("sigma0", b.sigma0);
    b.amplitude = o.number("amplitude", b.amplitude);
    if (!(std::abs(b.amplitude) < 1.0)) invalid(o.at("amplitude"), "must lie in (-1, 1)");
    b.omega = o.number("omega", b.omega);
    b.mass = o.positive("mass", b.mass);
  } else if (kind == "translating") {
    f.kind = DensityKind::TranslatingGaussian;
    auto& t = f.translating;
    t.center = o.vec("center", t.center);
    t.velocity = o.vec("velocity", t.velocity);
    t.sigma = o.positive("sigma", t.sigma);
    t.mass = o.positive("mass", t.mass);
  } else if (kind == "solved-classical") {
    f.kind = DensityKind::SolvedClassical;
  } else {
    invalid(o.at("kind"), "expected breathing, translating or solved-classical");
  }
  const std::string policy = o.string("time_derivative", "analytic");
  if (policy == "analytic") {
    f.policy = TimeDerivativePolicy::Analytic;
  } else if (policy == "central-difference") {
    f.policy = TimeDerivativePolicy::CentralDifference;
  } else {
    invalid(o.at("time_derivative"), "expected analytic or central-difference");
  }
  f.difference_step = o.positive("difference_step", f.difference_step);
  o.done();
  return f;
}

KgConfig parse_kg(const Json& j, const std::string& path) {
  Obj o(j, path);
  KgConfig k;
  k.x0 = o.number("x0", k.x0);
  k.x1 = o.number("x1", k.x1);
  if (!(k.x1 > k.x0)) invalid(path, "x1 must exceed x0");
  k.h = o.positive("h", k.h);
  if ((k.x1 - k.x0) / k.h < 8.0) invalid(o.at("h"), "needs at least 8 cells");
  k.cfl = o.positive("cfl", k.cfl);
  k.t_end = o.positive("t_end", k.t_end);
  k.width = o.positive("width", k.width);
  k.separation = o.nonnegative("separation", k.separation);
  k.pre_exit = o.nonnegative("pre_exit", k.pre_exit);
  const std::string b = o.string("boundary", "absorbing");
  if (b == "absorbing") {
    k.boundary = KGBoundary::Absorbing;
  } else if (b == "dirichlet0") {
    k.boundary = KGBoundary::Dirichlet0;
  } else {
    invalid(o.at("boundary"), "expected absorbing or dirichlet0");
  }
  k.pulses = o.string("pulses", k.pulses);
  if (k.pulses != "colliding" && k.pulses != "single") invalid(o.at("pulses"), "expected colliding or single");
  if (const Json* w = o.get("conformal")) {
    Obj c(*w, o.at("conformal"));
    k.conformal = true;
    k.wave.amplitude = c.number("amplitude", k.wave.amplitude);
    k.wave.kt = c.number("kt", k.wave.kt);
    k.wave.kx = c.number("kx", k.wave.kx);
    k.wave.phase = c.number("phase", k.wave.phase);
    c.done();
  }
  const long every = o.integer("output_every", k.output_every);
  if (every < 1) invalid(o.at("output_every"), "must be at least 1");
  k.output_every = static_cast<int>(every);
  o.done();
  return k;
}

ConvergenceConfig parse_convergence(const Json& j, const std::string& path) {
  Obj o(j, path);
  ConvergenceConfig c;
  if (const Json* hl = o.get("h_list")) {
    if (!hl->is_array()) invalid(o.at("h_list"), "expected an array of spacings");
    for (const auto& v : *hl) {
      if (!v.is_number() || !(v.get<double>() > 0.0)) invalid(o.at("h_list"), "spacings must be positive numbers");
      c.h_list.push_back(v.get<double>());
    }
    if (c.h_list.size() < 3) invalid(o.at("h_list"), "needs at least 3 spacings");
    for (std::size_t n = 1; n < c.h_list.size(); ++n) {
      if (std::abs(c.h_list[n] - 0.5 * c.h_list[n - 1]) > 1e-12 * c.h_list[n - 1]) {
        invalid(o.at("h_list"), "each spacing must halve the previous one");
      }
    }
  }
  c.solution = o.string("solution", c.solution);
  if (c.solution != "sine-product" && c.solution != "linear" && c.solution != "mixed") {
    invalid(o.at("solution"), "expected sine-product, linear or mixed");
  }
  o.done();
  return c;
}

Tolerances parse_tolerances(const Json& j, const std::string& path) {
  Obj o(j, path);
  Tolerances t;
  t.solver = o.positive("solver", t.solver);
  if (t.solver < 1e-14 || t.solver > 1e-6) invalid(o.at("solver"), "must lie in [1e-14, 1e-6]");
  t.constant = o.nonnegative("constant", t.constant);
  t.ray_fraction = o.nonnegative("ray_fraction", t.ray_fraction);
  const long rays = o.integer("rays", t.rays);
  if (rays < 1 || rays > 100000) invalid(o.at("rays"), "must lie in [1, 100000]");
  t.rays = static_cast<int>(rays);
  t.continuity = o.positive("continuity", t.continuity);
  t.oracle = o.positive("oracle", t.oracle);
  t.eq12 = o.positive("eq12", t.eq12);
  t.violation_ratio = o.positive("violation_ratio", t.violation_ratio);
  t.energy_drift = o.positive("energy_drift", t.energy_drift);
  t.order_min = o.number("order_min", t.order_min);
  t.order_max = o.number("order_max", t.order_max);
  t.q_mean_factor = o.positive("q_mean_factor", t.q_mean_factor);
  t.boundary_layer = o.nonnegative("boundary_layer", t.boundary_layer);
  t.spacetime_smp = o.nonnegative("spacetime_smp", t.spacetime_smp);
  o.done();
  return t;
}

SmpVerdict parse_verdict(const Json& v, const std::string& path) {
  if (v.is_string()) {
    for (auto k : {SmpVerdict::MaxOnBoundary, SmpVerdict::ConstantField, SmpVerdict::Violation}) {
      if (v.get<std::string>() == to_string(k)) return k;
    }
  }
  invalid(path, "expected MaxOnBoundary, ConstantField or Violation");
}

std::vector<DomainConfig> default_domains(ExperimentKind kind) {
  auto make = [](const std::string& name, Domain d, Json echo) { return DomainConfig{name, std::move(d), std::move(echo)}; };
  switch (kind) {
    case ExperimentKind::Figure1:
      return {make("disc", Domain::disc({2.5, 2.5}, 1.5),
                   {{"shape", "disc"}, {"center", {2.5, 2.5}}, {"radius", 1.5}}),
              make("superellipse", Domain::superellipse({2.5, 2.5}, 1.5, 1.0, 4.0),
                   {{"shape", "superellipse"}, {"center", {2.5, 2.5}}, {"a", 1.5}, {"b", 1.0}, {"exponent", 4.0}}),
              make("hexagon", Domain::regular_polygon({2.5, 2.5}, 1.5, 6, 0.0),
                   {{"shape", "regular_polygon"}, {"center", {2.5, 2.5}}, {"circumradius", 1.5}, {"sides", 6},
                    {"phase", 0.0}})};
    case ExperimentKind::InvertFlow:
    case ExperimentKind::ExternalForce:
      return {make("square", square({0.0, 0.0}, 2.0), {{"shape", "square"}, {"center", {0.0, 0.0}}, {"half_width", 2.0}})};
    case ExperimentKind::Convergence:
      return {make("square", square({0.5, 0.5}, 0.5), {{"shape", "square"}, {"center", {0.5, 0.5}}, {"half_width", 0.5}})};
    default:
      return {make("disc", Domain::disc({0.0, 0.0}, 1.0), {{"shape", "disc"}, {"center", {0.0, 0.0}}, {"radius", 1.0}})};
  }
}

}  // namespace

ExperimentConfig parse_experiment_config(const Json& doc, const std::filesystem::path& base_dir) {
  Obj o(doc, "");
  ExperimentConfig cfg;
  cfg.echo = doc;
  const Json* kind = o.get("experiment");
  if (!kind || !kind->is_string()) invalid("experiment", "required string");
  cfg.kind = parse_kind(kind->get<std::string>(), "experiment");

  const long seed = o.integer("seed", 0);
  if (seed < 0) invalid("seed", "must be nonnegative");
  cfg.seed = static_cast<std::uint64_t>(seed);

  const bool fig1 = cfg.kind == ExperimentKind::Figure1;
  cfg.h = o.positive("h", fig1 ? 1.0 / 128.0 : (cfg.kind == ExperimentKind::Convergence ? 1.0 / 32.0 : 1.0 / 64.0));

  if (o.has("domain") && o.has("domains")) invalid("domains", "give either domain or domains");
  if (const Json* d = o.get("domain")) {
    cfg.domains.push_back(parse_domain(*d, "domain", "domain"));
  } else if (const Json* ds = o.get("domains")) {
    if (!ds->is_array() || ds->empty()) invalid("domains", "expected a nonempty array");
    for (std::size_t n = 0; n < ds->size(); ++n) {
      cfg.domains.push_back(parse_domain((*ds)[n], "domains[" + std::to_string(n) + "]", "panel" + std::to_string(n)));
    }
    std::set<std::string> names;
    for (const auto& d : cfg.domains) {
      if (!names.insert(d.name).second) invalid("domains", "duplicate panel name '" + d.name + "'");
    }
  } else {
    cfg.domains = default_domains(cfg.kind);
  }
  for (const auto& d : cfg.domains) {
    for (char ch : d.name) {
      if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '-' || ch == '_')) {
        invalid("domains", "panel names may only use letters, digits, '-' and '_'");
      }
    }
  }

  if (const Json* m = o.get("metric")) {
    cfg.metric = parse_metric(*m, "metric", base_dir);
    cfg.metric_echo = *m;
  } else if (fig1) {
    cfg.metric = MetricSpec::conformal();
    cfg.metric_echo = {{"kind", "conformal"}, {"mu", {2.5, 2.5}}};
  } else {
    cfg.metric_echo = {{"kind", "flat"}};
  }

  cfg.random_case = o.boolean("random_case", false);

  PhysicsConfig& ph = cfg.physics;
  ph.C = fig1 ? -0.5 : 0.0;
  if (const Json* p = o.get("physics")) {
    Obj po(*p, "physics");
    ph.m = po.positive("m", ph.m);
    ph.hbar = po.positive("hbar", ph.hbar);
    ph.c = po.positive("c", ph.c);
    ph.C = po.number("C", ph.C);
    ph.m_eff = po.nonnegative("m_eff", ph.m_eff);
    ph.m0 = po.nonnegative("m0", ph.m_eff);
    if (po.has("U")) {
      if (po.number("U", 0.0) != 0.0) invalid("physics.U", "only U = 0 is supported");
    }
    po.done();
  }
  if (ph.m0 == 0.0) ph.m0 = ph.m_eff;

  if (const Json* b = o.get("boundary")) cfg.boundary = parse_boundary(*b, "boundary");
  if (const Json* t = o.get("time")) {
    Obj to(*t, "time");
    cfg.time.t = to.number("t", cfg.time.t);
    cfg.time.dt = to.positive("dt", cfg.time.dt);
    to.done();
  }
  if (const Json* f = o.get("family")) cfg.family = parse_family(*f, "family");
  if (const Json* k = o.get("kg")) cfg.kg = parse_kg(*k, "kg");
  if (const Json* c = o.get("convergence")) cfg.convergence = parse_convergence(*c, "convergence");
  if (const Json* t = o.get("tolerances")) cfg.tol = parse_tolerances(*t, "tolerances");
  if (const Json* e = o.get("expect")) {
    Obj eo(*e, "expect");
    if (const Json* v = eo.get("verdict")) {
      if (v->is_array()) {
        for (std::size_t n = 0; n < v->size(); ++n) cfg.expect_verdict.push_back(parse_verdict((*v)[n], "expect.verdict"));
      } else {
        cfg.expect_verdict.push_back(parse_verdict(*v, "expect.verdict"));
      }
    }
    eo.done();
  }
  o.done();

  if (cfg.random_case) {
    if (cfg.kind != ExperimentKind::SolveSmp) invalid("random_case", "only solve-smp supports random cases");
    apply_random_case(cfg);
  }
  return cfg;
}

void apply_random_case(ExperimentConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  auto uni = [&](double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); };
  constexpr double two_pi = 2.0 * std::numbers::pi;

  DomainConfig d;
  d.name = "random";
  const int shape = static_cast<int>(rng() % 4);
  if (shape == 0) {
    const double r = uni(0.5, 1.5);
    d.domain = Domain::disc({0.0, 0.0}, r);
    d.echo = {{"shape", "disc"}, {"center", {0.0, 0.0}}, {"radius", r}};
  } else if (shape == 1) {
    const double a = uni(0.5, 1.5), b = uni(0.5, 1.5), p = uni(2.0, 6.0);
    d.domain = Domain::superellipse({0.0, 0.0}, a, b, p);
    d.echo = {{"shape", "superellipse"}, {"center", {0.0, 0.0}}, {"a", a}, {"b", b}, {"exponent", p}};
  } else if (shape == 2) {
    const int sides = 3 + static_cast<int>(rng() % 6);
    const double r = uni(0.7, 1.5), phase = uni(0.0, two_pi);
    d.domain = Domain::regular_polygon({0.0, 0.0}, r, sides, phase);
    d.echo = {{"shape", "regular_polygon"}, {"center", {0.0, 0.0}}, {"circumradius", r}, {"sides", sides}, {"phase", phase}};
  } else {
    // Points on an ellipse in angular order form a strictly convex polygon;
    // the gaps are bounded so that the polygon keeps a fat interior.
    const int n = 5 + static_cast<int>(rng() % 6);
    const double ax = uni(0.7, 1.5), ay = uni(0.7, 1.5), rot = uni(0.0, two_pi);
    std::vector<Vec2> pts;
    Json verts = Json::array();
    for (int k = 0; k < n; ++k) {
      const double t = rot + two_pi * (k + uni(-0.3, 0.3)) / n;
      const Vec2 p{ax * std::cos(t), ay * std::sin(t)};
      pts.push_back(p);
      verts.push_back({p.x, p.y});
    }
    d.domain = Domain::polygon(pts);
    d.echo = {{"shape", "polygon"}, {"vertices", verts}};
  }
  cfg.domains = {d};

  if (rng() % 2 == 0) {
    ConformalParams p;
    p.mu = {uni(-1.0, 1.0), uni(-1.0, 1.0)};
    p.scale = uni(0.5, 2.0);
    p.width = uni(0.5, 2.0);
    p.offset = uni(0.05, 0.5);
    cfg.metric = MetricSpec::conformal(p);
    cfg.metric_echo = {{"kind", "conformal"}, {"mu", {p.mu.x, p.mu.y}}, {"scale", p.scale}, {"width", p.width},
                       {"offset", p.offset}};
  } else {
    DiagonalParams p;
    p.a1 = uni(0.5, 2.0);
    p.a2 = uni(0.5, 2.0);
    p.e1 = uni(0.0, 0.5);
    p.e2 = uni(0.0, 0.5);
    p.k1 = uni(0.5, 2.0);
    p.k2 = uni(0.5, 2.0);
    p.p1 = uni(0.0, two_pi);
    p.p2 = uni(0.0, two_pi);
    cfg.metric = MetricSpec::diagonal(p);
    cfg.metric_echo = {{"kind", "diagonal"}, {"a1", p.a1}, {"a2", p.a2}, {"e1", p.e1}, {"e2", p.e2},
                       {"k1", p.k1}, {"k2", p.k2}, {"p1", p.p1}, {"p2", p.p2}};
  }

  BoundaryConfig& b = cfg.boundary;
  b.kind = BoundaryKind::Random;
  b.base = uni(0.0, 1.0);
  b.amp = uni(0.0, 2.0);
  b.kx = uni(-4.0, 4.0);
  b.ky = uni(-4.0, 4.0);
  b.phase = uni(0.0, two_pi);
  cfg.physics.C = 0.0;
}

}  // namespace geoeffect
