#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "geoeffect/elliptic.hpp"
#include "geoeffect/hydro.hpp"
#include "geoeffect/kg.hpp"

namespace geoeffect {

using Json = nlohmann::json;

enum class ExperimentKind { SolveSmp, Figure1, InvertFlow, ExternalForce, KgCounterexample, Signature, Convergence };
std::string_view to_string(ExperimentKind k);

struct DomainConfig {
  std::string name;
  Domain domain = Domain::disc({0.0, 0.0}, 1.0);
  Json echo;
};

enum class BoundaryKind { Constant, Linear, Random };

/// Dirichlet data: value, a + bx x + by y, or the seeded nonnegative wave
/// base + amp (1 + sin(kx x + ky y + phase)) / 2.
struct BoundaryConfig {
  BoundaryKind kind = BoundaryKind::Constant;
  double value = 1.0;
  double a = 0.0, bx = 1.0, by = 0.0;
  double base = 0.0, amp = 1.0, kx = 1.0, ky = 0.0, phase = 0.0;

  double operator()(Vec2 p) const;
};

struct PhysicsConfig {
  double m = 1.0;
  double hbar = 1.0;
  double c = 1.0;
  double C = 0.0;
  double m_eff = 0.0;
  double m0 = 0.0;  // defaults to m_eff
};

struct TimeConfig {
  double t = 0.3;
  double dt = 1e-3;
};

struct FamilyConfig {
  DensityKind kind = DensityKind::BreathingGaussian;
  BreathingGaussian breathing{};
  TranslatingGaussian translating{};
  TimeDerivativePolicy policy = TimeDerivativePolicy::Analytic;
  double difference_step = 1e-4;
};

struct KgConfig {
  double x0 = -1.0;
  double x1 = 1.0;
  double h = 1.0 / 256.0;
  double cfl = 0.5;
  double t_end = 1.8;
  double width = 0.05;
  double separation = 1.0;
  /// Energy drift is measured over [0, pre_exit].
  double pre_exit = 1.0;
  KGBoundary boundary = KGBoundary::Absorbing;
  /// "colliding": two unit pulses moving toward each other;
  /// "single": one right-moving unit pulse.
  std::string pulses = "colliding";
  bool conformal = false;
  ConformalWave wave{};
  int output_every = 16;
};

struct ConvergenceConfig {
  std::vector<double> h_list;
  std::string solution = "mixed";
};

struct Tolerances {
  double solver = 1e-12;
  double constant = 1e-10;
  double ray_fraction = 0.9;
  int rays = 64;
  double continuity = 1e-6;
  double oracle = 0.05;
  double eq12 = 1e-2;
  double violation_ratio = 1.9;
  double energy_drift = 0.01;
  double order_min = 1.8;
  double order_max = 2.2;
  double q_mean_factor = 5.0;
  double boundary_layer = 0.2;
  /// Spacetime maximum-principle slack, relative to the initial max |P|.
  double spacetime_smp = 1e-2;
};

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::SolveSmp;
  std::uint64_t seed = 0;
  double h = 1.0 / 64.0;
  std::vector<DomainConfig> domains;
  MetricSpec metric = MetricSpec::flat();
  Json metric_echo;
  bool random_case = false;
  PhysicsConfig physics{};
  BoundaryConfig boundary{};
  TimeConfig time{};
  FamilyConfig family{};
  KgConfig kg{};
  ConvergenceConfig convergence{};
  Tolerances tol{};
  /// Expected verdict(s) for solve-smp; empty means MaxOnBoundary or ConstantField.
  std::vector<SmpVerdict> expect_verdict;
  Json echo;
};

/// Validates a config document; every key is checked and unknown keys are
/// rejected. Throws Error(ConfigInvalid) naming the offending path.
/// `base_dir` resolves relative file references (sampled metrics).
ExperimentConfig parse_experiment_config(const Json& doc, const std::filesystem::path& base_dir = {});

/// Seeded random SMP case: metric, domain and nonnegative boundary data with
/// C = 0 and the mesh-Peclet condition satisfied at h >= 1/256.
void apply_random_case(ExperimentConfig& cfg);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ArtifactEntry {
  std::string path;  // relative to the output directory
  std::string sha256;
  std::uintmax_t bytes = 0;
};

struct RunManifest {
  std::string experiment;
  std::uint64_t seed = 0;
  Json config;
  std::vector<ArtifactEntry> artifacts;
  std::vector<CheckResult> checks;
  Json metrics = Json::object();
  Json panels = Json::array();
  std::vector<std::pair<std::string, double>> wall_times;

  bool passed() const;
  Json to_json() const;
};

/// Runs the experiment, writes its artifacts under `out` and returns the
/// manifest (not yet written).
RunManifest run_experiment(const ExperimentConfig& cfg, const std::filesystem::path& out);

enum class ExitStatus : int { Ok = 0, CheckFailed = 1, ConfigInvalid = 2, InternalError = 3 };

struct RunOutcome {
  ExitStatus status = ExitStatus::Ok;
  std::optional<RunManifest> manifest;
  std::string message;
};

/// Parses, runs and writes `manifest.json`. Never throws.
RunOutcome run_config(const Json& doc, const std::filesystem::path& out, std::optional<std::uint64_t> seed,
                      const std::filesystem::path& base_dir = {});
RunOutcome run_config_file(const std::filesystem::path& config, const std::filesystem::path& out,
                           std::optional<std::uint64_t> seed);

/// Sweep document: {"base": {...}, "parameters": {"dotted.path": [values]},
/// "seeds": {"start": s, "count": n}}. Writes one subdirectory per
/// combination and `aggregate.json`. Returns ConfigInvalid for a malformed
/// sweep, CheckFailed if any run failed, Ok otherwise.
RunOutcome sweep_config_file(const std::filesystem::path& config, const std::filesystem::path& out);
RunOutcome sweep_config(const Json& doc, const std::filesystem::path& out, const std::filesystem::path& base_dir = {});

std::string sha256_file(const std::filesystem::path& path);
/// Writes `j` with two-space indentation and a trailing newline.
void write_json(const std::filesystem::path& path, const Json& j);

}  // namespace geoeffect
