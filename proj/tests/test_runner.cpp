#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "geoeffect/error.hpp"
#include "geoeffect/fields.hpp"
#include "geoeffect/runner.hpp"

using namespace geoeffect;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("geoeffect_runner_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

Json read_json(const fs::path& p) {
  std::ifstream in(p);
  return Json::parse(in);
}

void expect_invalid(const Json& doc, const std::string& needle) {
  try {
    parse_experiment_config(doc);
    FAIL() << "accepted " << doc.dump();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ConfigInvalid);
    EXPECT_NE(std::string(e.what()).find(needle), std::string::npos) << e.what();
  }
}

int cli(const std::string& args) {
  const std::string cmd = std::string(GEOEFFECT_CLI) + " " + args + " > /dev/null 2>&1";
  const int raw = std::system(cmd.c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

fs::path write_config(const fs::path& dir, const std::string& name, const Json& doc) {
  const fs::path p = dir / name;
  std::ofstream(p) << doc.dump(2);
  return p;
}

std::map<std::string, std::string> artifact_hashes(const Json& manifest) {
  std::map<std::string, std::string> out;
  for (const auto& a : manifest.at("artifacts")) out[a.at("path").get<std::string>()] = a.at("sha256").get<std::string>();
  return out;
}

}  // namespace

TEST(Config, Defaults) {
  const ExperimentConfig f = parse_experiment_config({{"experiment", "figure1"}});
  EXPECT_EQ(f.kind, ExperimentKind::Figure1);
  EXPECT_DOUBLE_EQ(f.h, 1.0 / 128);
  EXPECT_DOUBLE_EQ(f.physics.C, -0.5);
  ASSERT_EQ(f.domains.size(), 3u);
  EXPECT_EQ(f.domains[0].name, "disc");
  EXPECT_EQ(f.domains[1].name, "superellipse");
  EXPECT_EQ(f.domains[2].name, "hexagon");
  const ExperimentConfig s = parse_experiment_config({{"experiment", "solve-smp"}});
  EXPECT_DOUBLE_EQ(s.h, 1.0 / 64);
  EXPECT_DOUBLE_EQ(s.physics.C, 0.0);
  EXPECT_DOUBLE_EQ(s.tol.solver, 1e-12);
}

TEST(Config, RejectsBadDocuments) {
  expect_invalid({{"experiment", "solve-smp"}, {"bogus", 1}}, "bogus");
  expect_invalid({{"experiment", "nope"}}, "experiment");
  expect_invalid(Json::object(), "experiment");
  expect_invalid({{"experiment", "solve-smp"}, {"physics", {{"U", 1.0}}}}, "physics.U");
  expect_invalid({{"experiment", "solve-smp"}, {"physics", {{"m", -1.0}}}}, "physics.m");
  expect_invalid({{"experiment", "solve-smp"}, {"tolerances", {{"solver", 1e-3}}}}, "tolerances.solver");
  expect_invalid({{"experiment", "solve-smp"}, {"h", "small"}}, "h");
  expect_invalid({{"experiment", "figure1"},
                  {"domains", {{{"name", "a b"}, {"shape", "disc"}, {"center", {0, 0}}, {"radius", 1}}}}},
                 "domains");
  expect_invalid({{"experiment", "figure1"},
                  {"domains",
                   {{{"name", "x"}, {"shape", "disc"}, {"center", {0, 0}}, {"radius", 1}},
                    {{"name", "x"}, {"shape", "disc"}, {"center", {0, 0}}, {"radius", 2}}}}},
                 "duplicate");
  expect_invalid({{"experiment", "kg-counterexample"}, {"kg", {{"pulses", "three"}}}}, "kg.pulses");
  expect_invalid({{"experiment", "convergence"}, {"convergence", {{"h_list", {0.1, 0.06, 0.025}}}}}, "halve");
  expect_invalid({{"experiment", "figure1"}, {"random_case", true}}, "random_case");
  expect_invalid({{"experiment", "solve-smp"}, {"expect", {{"verdict", "Maybe"}}}}, "expect.verdict");
}

TEST(Config, RandomCaseIsSeeded) {
  const Json doc = {{"experiment", "solve-smp"}, {"random_case", true}, {"seed", 7}};
  const ExperimentConfig a = parse_experiment_config(doc);
  const ExperimentConfig b = parse_experiment_config(doc);
  EXPECT_EQ(a.domains[0].echo, b.domains[0].echo);
  EXPECT_EQ(a.metric_echo, b.metric_echo);
  Json other = doc;
  other["seed"] = 8;
  EXPECT_NE(parse_experiment_config(other).domains[0].echo, a.domains[0].echo);
}

TEST(FieldCsv, HeaderAndRoundTrip) {
  const ExperimentConfig cfg = parse_experiment_config({{"experiment", "solve-smp"}, {"h", 0.125}});
  const GridPtr g = build_grid(cfg.domains[0].domain, cfg.h);
  ScalarField f = ScalarField::zeros(g, ScalarRole::Amplitude);
  for (std::size_t k = 0; k < g->size(); ++k) {
    if (g->active(k)) f[k] = 1.0 / 3.0 + g->coord(k).x * 1e-7;
  }
  std::ostringstream out;
  write_field_csv(out, f);
  EXPECT_EQ(out.str().substr(0, out.str().find('\n')), "x,y,class,value");
  std::istringstream in(out.str());
  const ScalarField back = read_field_csv(in, g, ScalarRole::Amplitude);
  EXPECT_EQ(back.values, f.values);
  std::istringstream bad("x,y,class,value\n0,0,I,oops\n");
  EXPECT_THROW(read_field_csv(bad, g, ScalarRole::Amplitude), Error);
}

TEST(Runner, ManifestListsHashedArtifacts) {
  const fs::path out = scratch("manifest");
  const RunOutcome r = run_config({{"experiment", "solve-smp"}, {"h", 0.0625}}, out, std::nullopt);
  ASSERT_EQ(r.status, ExitStatus::Ok) << r.message;
  const Json m = read_json(out / "manifest.json");
  EXPECT_EQ(m.at("experiment"), "solve-smp");
  EXPECT_TRUE(m.at("passed").get<bool>());
  EXPECT_EQ(m.at("metrics").at("verdict"), "ConstantField");
  EXPECT_TRUE(m.at("wall_times").contains("solve"));
  const auto hashes = artifact_hashes(m);
  ASSERT_EQ(hashes.size(), 2u);
  for (const auto& [path, sha] : hashes) {
    EXPECT_EQ(sha, sha256_file(out / path)) << path;
    EXPECT_EQ(sha.size(), 64u);
  }
  std::size_t files = 0;
  for (const auto& e : fs::recursive_directory_iterator(out)) files += e.is_regular_file() ? 1 : 0;
  EXPECT_EQ(files, hashes.size() + 1);
}

TEST(Runner, SeedOverrideLandsInManifest) {
  const fs::path out = scratch("seed");
  const RunOutcome r =
      run_config({{"experiment", "solve-smp"}, {"random_case", true}, {"h", 0.0625}}, out, std::uint64_t{41});
  ASSERT_NE(r.status, ExitStatus::ConfigInvalid) << r.message;
  EXPECT_EQ(read_json(out / "manifest.json").at("seed"), 41);
}

TEST(Runner, Figure1PanelsDescribeArtifacts) {
  const fs::path out = scratch("figure1");
  const RunOutcome r = run_config({{"experiment", "figure1"}, {"h", 1.0 / 32}}, out, std::nullopt);
  ASSERT_TRUE(r.manifest.has_value()) << r.message;
  const Json m = read_json(out / "manifest.json");
  const auto hashes = artifact_hashes(m);
  ASSERT_EQ(m.at("panels").size(), 3u);
  for (const auto& p : m.at("panels")) {
    EXPECT_TRUE(hashes.count(p.at("field").get<std::string>()));
    EXPECT_TRUE(hashes.count(p.at("report").get<std::string>()));
    EXPECT_TRUE(p.contains("domain"));
    EXPECT_TRUE(p.contains("title"));
  }
  EXPECT_EQ(m.at("panels")[0].at("field"), "disc_amplitude.csv");
}

TEST(Runner, ArtifactsAreDeterministic) {
  const Json doc = {{"experiment", "solve-smp"}, {"random_case", true}, {"seed", 3}, {"h", 1.0 / 32}};
  const fs::path a = scratch("det_a"), b = scratch("det_b");
  run_config(doc, a, std::nullopt);
  run_config(doc, b, std::nullopt);
  EXPECT_EQ(artifact_hashes(read_json(a / "manifest.json")), artifact_hashes(read_json(b / "manifest.json")));
}

TEST(Runner, FailedCheckAndBadConfigStatus) {
  const fs::path out = scratch("status");
  EXPECT_EQ(run_config({{"experiment", "solve-smp"}, {"h", 0.0625}, {"expect", {{"verdict", "Violation"}}}}, out,
                       std::nullopt)
                .status,
            ExitStatus::CheckFailed);
  EXPECT_FALSE(read_json(out / "manifest.json").at("passed").get<bool>());
  EXPECT_EQ(run_config({{"experiment", "solve-smp"}, {"h", 0.9}}, scratch("coarse"), std::nullopt).status,
            ExitStatus::ConfigInvalid);
  EXPECT_EQ(run_config({{"experiment", "solve-smp"}, {"oops", 0}}, scratch("oops"), std::nullopt).status,
            ExitStatus::ConfigInvalid);
  EXPECT_EQ(run_config_file(scratch("missing") / "none.json", scratch("missing_out"), std::nullopt).status,
            ExitStatus::ConfigInvalid);
}

TEST(Cli, ExitCodes) {
  const fs::path dir = scratch("cli");
  const fs::path ok = write_config(dir, "ok.json", {{"experiment", "solve-smp"}, {"h", 0.0625}});
  const fs::path fail =
      write_config(dir, "fail.json", {{"experiment", "solve-smp"}, {"h", 0.0625}, {"expect", {{"verdict", "Violation"}}}});
  const fs::path bogus = write_config(dir, "bogus.json", {{"experiment", "solve-smp"}, {"bogus", true}});
  const fs::path coarse = write_config(dir, "coarse.json", {{"experiment", "solve-smp"}, {"h", 0.9}});
  const fs::path cfl = write_config(dir, "cfl.json", {{"experiment", "kg-counterexample"}, {"kg", {{"cfl", 1.5}}}});
  EXPECT_EQ(cli("run --config " + ok.string() + " --out " + (dir / "o1").string()), 0);
  EXPECT_TRUE(fs::exists(dir / "o1" / "manifest.json"));
  EXPECT_EQ(cli("run --config " + fail.string() + " --out " + (dir / "o2").string()), 1);
  EXPECT_EQ(cli("run --config " + bogus.string() + " --out " + (dir / "o3").string()), 2);
  EXPECT_EQ(cli("run --config " + coarse.string() + " --out " + (dir / "o4").string()), 2);
  EXPECT_EQ(cli("run --config " + cfl.string() + " --out " + (dir / "o5").string()), 2);
  EXPECT_EQ(cli("run --out " + (dir / "o6").string()), 2);
  EXPECT_EQ(cli("frobnicate"), 2);
  EXPECT_EQ(cli("run --config " + ok.string() + " --out " + (dir / "o7").string() + " --seed 5"), 0);
  EXPECT_EQ(read_json(dir / "o7" / "manifest.json").at("seed"), 5);
}

TEST(Sweep, EmptyGridRunsBaseOnce) {
  const fs::path out = scratch("sweep_empty");
  const RunOutcome r = sweep_config({{"base", {{"experiment", "solve-smp"}, {"h", 0.0625}}}}, out);
  ASSERT_EQ(r.status, ExitStatus::Ok) << r.message;
  const Json agg = read_json(out / "aggregate.json");
  EXPECT_EQ(agg.at("runs").get<int>(), 1);
  EXPECT_DOUBLE_EQ(agg.at("pass_rate").get<double>(), 1.0);
}

TEST(Sweep, SeedsAndPassRate) {
  const fs::path out = scratch("sweep_seeds");
  const Json doc = {{"base", {{"experiment", "solve-smp"}, {"random_case", true}, {"h", 1.0 / 32}}},
                    {"seeds", {{"start", 10}, {"count", 4}}}};
  const RunOutcome r = sweep_config(doc, out);
  ASSERT_EQ(r.status, ExitStatus::Ok) << r.message;
  const Json agg = read_json(out / "aggregate.json");
  EXPECT_EQ(agg.at("runs").get<int>(), 4);
  EXPECT_EQ(agg.at("passed"), 4);
  EXPECT_DOUBLE_EQ(agg.at("pass_rate").get<double>(), 1.0);
}

TEST(Sweep, SpacingOrderEstimate) {
  const fs::path out = scratch("sweep_order");
  const Json doc = {{"base", {{"experiment", "convergence"}, {"convergence", {{"solution", "sine-product"}}}}},
                    {"parameters", {{"h", {1.0 / 16, 1.0 / 32, 1.0 / 64}}}}};
  const RunOutcome r = sweep_config(doc, out);
  ASSERT_EQ(r.status, ExitStatus::Ok) << r.message;
  const Json agg = read_json(out / "aggregate.json");
  EXPECT_EQ(agg.at("runs").get<int>(), 3);
  ASSERT_TRUE(agg.contains("order"));
  EXPECT_NEAR(agg.at("order").get<double>(), 2.0, 0.2);
}

TEST(Sweep, MalformedSweepsRejected) {
  EXPECT_EQ(sweep_config({{"parameters", {{"h", {0.1}}}}}, scratch("sweep_nobase")).status, ExitStatus::ConfigInvalid);
  EXPECT_EQ(sweep_config({{"base", {{"experiment", "solve-smp"}}}, {"parameters", {{"h", 0.1}}}},
                         scratch("sweep_scalar"))
                .status,
            ExitStatus::ConfigInvalid);
  Json big = {{"base", {{"experiment", "solve-smp"}}}, {"seeds", {{"start", 0}, {"count", 20000}}}};
  EXPECT_EQ(sweep_config(big, scratch("sweep_big")).status, ExitStatus::ConfigInvalid);
}
