#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include <openssl/evp.h>

#include "geoeffect/error.hpp"
#include "geoeffect/runner.hpp"

namespace geoeffect {

namespace fs = std::filesystem;

bool RunManifest::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

Json RunManifest::to_json() const {
  Json arts = Json::array();
  for (const auto& a : artifacts) arts.push_back({{"path", a.path}, {"sha256", a.sha256}, {"bytes", a.bytes}});
  Json cks = Json::array();
  for (const auto& c : checks) cks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  Json wt = Json::object();
  for (const auto& [phase, sec] : wall_times) wt[phase] = sec;
  Json j = {{"experiment", experiment}, {"seed", seed},       {"config", config},   {"artifacts", arts},
            {"checks", cks},            {"passed", passed()}, {"metrics", metrics}, {"wall_times", wt}};
  if (!panels.empty()) j["panels"] = panels;
  return j;
}

std::string sha256_file(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot read " + path.string());
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  char buf[1 << 16];
  while (f) {
    f.read(buf, sizeof buf);
    if (f.gcount() > 0) EVP_DigestUpdate(ctx, buf, static_cast<std::size_t>(f.gcount()));
  }
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, md, &len);
  EVP_MD_CTX_free(ctx);
  std::string hex;
  char two[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(two, sizeof two, "%02x", md[i]);
    hex += two;
  }
  return hex;
}

void write_json(const fs::path& path, const Json& j) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  f << j.dump(2) << "\n";
  if (!f) throw std::runtime_error("cannot write " + path.string());
}

namespace {

ExitStatus status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::NumericalBlowup:
    case ErrorCode::NotRefining:
    case ErrorCode::AllMasked:
    case ErrorCode::EmptyInterior: return ExitStatus::CheckFailed;
    default: return ExitStatus::ConfigInvalid;
  }
}

Json read_json_file(const fs::path& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorCode::ConfigInvalid, "cannot read " + path.string());
  try {
    return Json::parse(f);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::ConfigInvalid, path.string() + ": " + e.what());
  }
}

}  // namespace

RunOutcome run_config(const Json& doc, const fs::path& out, std::optional<std::uint64_t> seed, const fs::path& base_dir) {
  RunOutcome res;
  ExperimentConfig cfg;
  try {
    Json d = doc;
    if (seed && d.is_object()) d["seed"] = *seed;
    cfg = parse_experiment_config(d, base_dir);
    fs::create_directories(out);
  } catch (const Error& e) {
    res.status = ExitStatus::ConfigInvalid;
    res.message = e.what();
    return res;
  } catch (const std::exception& e) {
    res.status = ExitStatus::ConfigInvalid;
    res.message = e.what();
    return res;
  }

  try {
    RunManifest m = run_experiment(cfg, out);
    res.status = m.passed() ? ExitStatus::Ok : ExitStatus::CheckFailed;
    write_json(out / "manifest.json", m.to_json());
    res.manifest = std::move(m);
    return res;
  } catch (const Error& e) {
    res.status = status_of(e.code());
    res.message = e.what();
  } catch (const std::exception& e) {
    res.status = ExitStatus::InternalError;
    res.message = e.what();
  }
  if (res.status == ExitStatus::CheckFailed) {
    RunManifest m;
    m.experiment = std::string(to_string(cfg.kind));
    m.seed = cfg.seed;
    m.config = cfg.echo;
    m.checks.push_back({"completed", false, res.message});
    try {
      write_json(out / "manifest.json", m.to_json());
    } catch (const std::exception&) {
    }
    res.manifest = std::move(m);
  }
  return res;
}

RunOutcome run_config_file(const fs::path& config, const fs::path& out, std::optional<std::uint64_t> seed) {
  Json doc;
  try {
    doc = read_json_file(config);
  } catch (const Error& e) {
    return {ExitStatus::ConfigInvalid, std::nullopt, e.what()};
  }
  return run_config(doc, out, seed, config.parent_path());
}

namespace {

constexpr std::size_t kMaxCombinations = 10000;

void set_dotted(Json& doc, const std::string& path, const Json& value) {
  Json* node = &doc;
  std::size_t start = 0;
  while (true) {
    const std::size_t dot = path.find('.', start);
    const std::string key = path.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (key.empty()) throw Error(ErrorCode::ConfigInvalid, "parameters: empty path segment in '" + path + "'");
    if (!node->is_object()) throw Error(ErrorCode::ConfigInvalid, "parameters: '" + path + "' crosses a non-object");
    if (dot == std::string::npos) {
      (*node)[key] = value;
      return;
    }
    node = &(*node)[key];
    if (node->is_null()) *node = Json::object();
    start = dot + 1;
  }
}

std::string combination_key(const std::vector<std::pair<std::string, Json>>& params, std::uint64_t seed, bool seeded) {
  std::string key;
  for (const auto& [p, v] : params) key += (key.empty() ? "" : ",") + p + "=" + v.dump();
  if (seeded) key += (key.empty() ? "" : ",") + std::string("seed=") + std::to_string(seed);
  return key;
}

double fit_order(const std::vector<std::pair<double, double>>& he) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(he.size());
  for (auto [h, e] : he) {
    const double x = std::log(h), y = std::log(e);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

RunOutcome sweep_config(const Json& doc, const fs::path& out, const fs::path& base_dir) {
  RunOutcome res;
  std::vector<std::string> names;
  std::vector<std::vector<Json>> values;
  std::uint64_t seed_start = 0, seed_count = 1;
  bool seeded = false;
  Json base;
  try {
    if (!doc.is_object()) throw Error(ErrorCode::ConfigInvalid, "sweep: expected an object");
    for (const auto& [k, v] : doc.items()) {
      if (k != "base" && k != "parameters" && k != "seeds") throw Error(ErrorCode::ConfigInvalid, "sweep: unknown key '" + k + "'");
    }
    if (!doc.contains("base") || !doc["base"].is_object()) throw Error(ErrorCode::ConfigInvalid, "base: required object");
    base = doc["base"];
    if (doc.contains("parameters")) {
      const Json& p = doc["parameters"];
      if (!p.is_object()) throw Error(ErrorCode::ConfigInvalid, "parameters: expected an object");
      for (const auto& [k, v] : p.items()) {
        if (!v.is_array() || v.empty()) throw Error(ErrorCode::ConfigInvalid, "parameters." + k + ": expected a nonempty array");
        names.push_back(k);
        values.emplace_back(v.begin(), v.end());
      }
    }
    if (doc.contains("seeds")) {
      const Json& s = doc["seeds"];
      if (!s.is_object()) throw Error(ErrorCode::ConfigInvalid, "seeds: expected an object");
      for (const auto& [k, v] : s.items()) {
        if (k != "start" && k != "count") throw Error(ErrorCode::ConfigInvalid, "seeds: unknown key '" + k + "'");
        if (!v.is_number_integer() || v.get<long long>() < 0) throw Error(ErrorCode::ConfigInvalid, "seeds." + k + ": expected a nonnegative integer");
      }
      seed_start = s.value("start", std::uint64_t{0});
      seed_count = s.value("count", std::uint64_t{1});
      if (seed_count == 0) throw Error(ErrorCode::ConfigInvalid, "seeds.count: must be positive");
      seeded = true;
    }
    std::size_t total = seed_count;
    for (const auto& v : values) {
      total *= v.size();
      if (total > kMaxCombinations) break;
    }
    if (seed_count > kMaxCombinations || total > kMaxCombinations) {
      throw Error(ErrorCode::ConfigInvalid, "sweep: more than 10000 combinations");
    }
    fs::create_directories(out);
  } catch (const std::exception& e) {
    res.status = ExitStatus::ConfigInvalid;
    res.message = e.what();
    return res;
  }

  struct Row {
    std::string key;
    Json entry;
  };
  std::vector<Row> rows;
  std::vector<std::size_t> idx(names.size(), 0);
  std::size_t run = 0, passed = 0;
  std::map<std::string, std::vector<std::pair<double, double>>> order_groups;
  bool done = false;
  while (!done) {
    std::vector<std::pair<std::string, Json>> params;
    for (std::size_t p = 0; p < names.size(); ++p) params.emplace_back(names[p], values[p][idx[p]]);
    for (std::uint64_t s = 0; s < seed_count; ++s) {
      const std::uint64_t seed = seed_start + s;
      Json cfg = base;
      Json entry;
      const std::string key = combination_key(params, seed, seeded);
      char dir[32];
      std::snprintf(dir, sizeof dir, "run_%05zu", run++);
      entry["key"] = key;
      entry["dir"] = dir;
      Json pj = Json::object();
      for (const auto& [p, v] : params) pj[p] = v;
      entry["parameters"] = pj;
      RunOutcome r;
      try {
        for (const auto& [p, v] : params) set_dotted(cfg, p, v);
        r = run_config(cfg, out / dir, seeded ? std::optional<std::uint64_t>(seed) : std::nullopt, base_dir);
      } catch (const Error& e) {
        r.status = ExitStatus::ConfigInvalid;
        r.message = e.what();
      }
      if (seeded) entry["seed"] = seed;
      entry["exit"] = static_cast<int>(r.status);
      entry["passed"] = r.status == ExitStatus::Ok;
      if (!r.message.empty()) entry["message"] = r.message;
      if (r.manifest) {
        entry["metrics"] = r.manifest->metrics;
        const Json& mt = r.manifest->metrics;
        if (mt.is_object() && mt.contains("h") && mt.contains("error_linf") && mt["h"].is_number() &&
            mt["error_linf"].is_number()) {
          std::string group;
          for (const auto& [p, v] : params) {
            if (p != "h") group += p + "=" + v.dump() + ",";
          }
          order_groups[group].emplace_back(mt["h"].get<double>(), mt["error_linf"].get<double>());
        }
      }
      if (r.status == ExitStatus::Ok) ++passed;
      rows.push_back({key, std::move(entry)});
    }
    std::size_t p = 0;
    for (; p < names.size(); ++p) {
      if (++idx[p] < values[p].size()) break;
      idx[p] = 0;
    }
    done = p == names.size();
  }
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.key < b.key; });
  Json combos = Json::array();
  for (auto& r : rows) combos.push_back(std::move(r.entry));
  Json agg = {{"runs", rows.size()},
              {"passed", passed},
              {"pass_rate", rows.empty() ? 0.0 : static_cast<double>(passed) / static_cast<double>(rows.size())},
              {"combinations", combos}};
  Json orders = Json::array();
  for (auto& [group, he] : order_groups) {
    std::sort(he.begin(), he.end());
    he.erase(std::unique(he.begin(), he.end(), [](auto a, auto b) { return a.first == b.first; }), he.end());
    if (he.size() < 2) continue;
    Json hs = Json::array(), es = Json::array();
    for (auto [h, e] : he) {
      hs.push_back(h);
      es.push_back(e);
    }
    const bool positive = std::all_of(he.begin(), he.end(), [](auto p) { return p.second > 0.0; });
    orders.push_back({{"group", group}, {"h", hs}, {"error_linf", es}, {"order", positive ? Json(fit_order(he)) : Json(nullptr)}});
  }
  if (!orders.empty()) {
    agg["order_estimates"] = orders;
    if (orders.size() == 1) agg["order"] = orders.front()["order"];
  }
  try {
    write_json(out / "aggregate.json", agg);
  } catch (const std::exception& e) {
    res.status = ExitStatus::InternalError;
    res.message = e.what();
    return res;
  }
  res.status = passed == rows.size() ? ExitStatus::Ok : ExitStatus::CheckFailed;
  return res;
}

RunOutcome sweep_config_file(const fs::path& config, const fs::path& out) {
  Json doc;
  try {
    doc = read_json_file(config);
  } catch (const Error& e) {
    return {ExitStatus::ConfigInvalid, std::nullopt, e.what()};
  }
  return sweep_config(doc, out, config.parent_path());
}

}  // namespace geoeffect
