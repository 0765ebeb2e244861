#include "dkg/config.hpp"

#include <cstdio>
#include <json.hpp>

namespace dkg {

using nlohmann::json;

namespace {

const char* regime_name(Regime r) { return r == Regime::critical ? "critical" : "non-resonant"; }

json to_json(const ExperimentConfig& c) {
  json j;
  j["experiment"] = c.experiment;
  j["seed"] = c.seed;
  j["out"] = c.out;
  j["grid"] = {{"n", c.grid.n}, {"L", c.grid.L}};
  j["time"] = {{"t0", c.time.t0}, {"dt", c.time.dt}, {"nt", c.time.nt}};
  j["masses"] = {{"M", c.M}, {"m", c.m}};
  j["regime"] = {{"kind", regime_name(c.regime)}, {"s0", c.s0}, {"sigma", c.sigma}};
  j["norms"] = {{"s", c.norms.s}, {"a", c.norms.a}, {"b", c.norms.b}};
  j["solver"] = {{"scheme", c.solver.scheme},
                 {"cadence", c.solver.cadence},
                 {"dealias", c.solver.dealias},
                 {"ceiling", c.solver.ceiling},
                 {"ell_max", c.solver.ell_max}};
  j["data"] = {{"kind", c.data.kind}, {"amplitude", c.data.amplitude}, {"width", c.data.width}};
  const auto& s = c.soliton;
  j["soliton"] = {{"omega", s.omega}, {"samples", s.samples}, {"rmax", s.rmax}, {"tol", s.tol},
                  {"amp", s.amp},     {"width", s.width},     {"max_iter", s.max_iter}};
  const auto& p = c.probe;
  j["probe"] = {{"s1", p.s1},   {"s2", p.s2}, {"mu", p.mu},           {"lambdas", p.lambdas},
                {"ratios", p.ratios}, {"ds", p.ds}, {"samples", p.samples}, {"family", p.family},
                {"lambda", p.lambda}, {"mus", p.mus}};
  j["checks"] = c.checks;
  j["max_n"] = c.max_n;
  return j;
}

// Every key of `user` must exist in `schema` with a compatible type.
void check_keys(const json& user, const json& schema, const std::string& path) {
  if (!user.is_object()) throw ConfigError(path.empty() ? "/" : path, "expected an object");
  for (auto it = user.begin(); it != user.end(); ++it) {
    std::string where = path + "/" + it.key();
    if (!schema.contains(it.key())) throw ConfigError(where, "unknown key");
    const json& want = schema[it.key()];
    const json& got = it.value();
    if (want.is_object()) {
      check_keys(got, want, where);
    } else if (want.is_number_integer() || want.is_number_unsigned()) {
      if (!got.is_number() || (got.is_number_float() && got.get<double>() != std::floor(got.get<double>())))
        throw ConfigError(where, "expected an integer");
    } else if (want.is_number()) {
      if (!got.is_number()) throw ConfigError(where, "expected a number");
    } else if (want.is_string()) {
      if (!got.is_string()) throw ConfigError(where, "expected a string");
    } else if (want.is_boolean()) {
      if (!got.is_boolean()) throw ConfigError(where, "expected true or false");
    } else if (want.is_array()) {
      if (!got.is_array()) throw ConfigError(where, "expected an array");
      for (const auto& e : got)
        if (!e.is_number()) throw ConfigError(where, "expected an array of numbers");
    }
  }
}

void merge(json& base, const json& user) {
  for (auto it = user.begin(); it != user.end(); ++it) {
    if (it.value().is_object())
      merge(base[it.key()], it.value());
    else
      base[it.key()] = it.value();
  }
}

template <class T>
T get_as(const json& j, const char* key) {
  if (j.at(key).is_number_float()) return T(j.at(key).get<double>());
  return j.at(key).get<T>();
}

ExperimentConfig from_json(const json& j) {
  ExperimentConfig c;
  c.experiment = j.at("experiment").get<std::string>();
  if (j.at("seed").get<double>() < 0) throw ConfigError("/seed", "must be nonnegative");
  c.seed = get_as<unsigned>(j, "seed");
  c.out = j.at("out").get<std::string>();
  c.grid.n = get_as<int>(j["grid"], "n");
  c.grid.L = j["grid"].at("L").get<double>();
  c.time.t0 = j["time"].at("t0").get<double>();
  c.time.dt = j["time"].at("dt").get<double>();
  c.time.nt = get_as<int>(j["time"], "nt");
  c.M = j["masses"].at("M").get<double>();
  c.m = j["masses"].at("m").get<double>();
  std::string kind = j["regime"].at("kind").get<std::string>();
  if (kind == "critical")
    c.regime = Regime::critical;
  else if (kind == "non-resonant")
    c.regime = Regime::non_resonant;
  else
    throw ConfigError("/regime/kind", "must be \"non-resonant\" or \"critical\"");
  c.s0 = j["regime"].at("s0").get<double>();
  c.sigma = j["regime"].at("sigma").get<double>();
  c.norms.s = j["norms"].at("s").get<double>();
  c.norms.sigma = c.sigma;
  c.norms.s0 = c.s0;
  c.norms.a = j["norms"].at("a").get<double>();
  c.norms.b = j["norms"].at("b").get<double>();
  const json& sv = j["solver"];
  c.solver.scheme = sv.at("scheme").get<std::string>();
  c.solver.cadence = get_as<int>(sv, "cadence");
  c.solver.dealias = sv.at("dealias").get<bool>();
  c.solver.ceiling = sv.at("ceiling").get<double>();
  c.solver.ell_max = get_as<int>(sv, "ell_max");
  const json& d = j["data"];
  c.data.kind = d.at("kind").get<std::string>();
  c.data.amplitude = d.at("amplitude").get<double>();
  c.data.width = d.at("width").get<double>();
  const json& s = j["soliton"];
  c.soliton.omega = s.at("omega").get<double>();
  c.soliton.samples = get_as<int>(s, "samples");
  c.soliton.rmax = s.at("rmax").get<double>();
  c.soliton.tol = s.at("tol").get<double>();
  c.soliton.amp = s.at("amp").get<double>();
  c.soliton.width = s.at("width").get<double>();
  c.soliton.max_iter = get_as<int>(s, "max_iter");
  const json& p = j["probe"];
  c.probe.s1 = get_as<int>(p, "s1");
  c.probe.s2 = get_as<int>(p, "s2");
  c.probe.mu = p.at("mu").get<double>();
  c.probe.lambdas = p.at("lambdas").get<std::vector<double>>();
  c.probe.ratios = p.at("ratios").get<std::vector<double>>();
  c.probe.ds = p.at("ds").get<std::vector<double>>();
  c.probe.samples = get_as<int>(p, "samples");
  c.probe.family = p.at("family").get<std::string>();
  c.probe.lambda = p.at("lambda").get<double>();
  c.probe.mus = p.at("mus").get<std::vector<double>>();
  c.checks = j.at("checks").get<std::map<std::string, double>>();
  c.max_n = get_as<int>(j, "max_n");
  return c;
}

}  // namespace

std::map<std::string, double> ExperimentConfig::default_checks() {
  return {{"charge_drift", 1e-6},       {"free_wave", 1e-10},        {"slope_band", 0.15},
          {"same_sign_min_slope", 0.35}, {"gain_min_slope", 0.05},   {"null_max", 10.0},
          {"resonance_stability", 4.0}, {"lower_bound_min", 1e-2},   {"resonant_min", 1e-3},
          {"soliton_slope_tol", 1e-6},  {"modulation_target", -0.5}, {"plateau_tol", 0.05}};
}

void ExperimentConfig::validate() const {
  if (grid.n < 4 || grid.n % 2) throw ConfigError("/grid/n", "must be an even integer >= 4");
  if (!(grid.L > 0)) throw ConfigError("/grid/L", "must be positive");
  if (!(time.dt > 0)) throw ConfigError("/time/dt", "must be positive");
  if (time.nt < 1) throw ConfigError("/time/nt", "must be >= 1");
  if (!(M > 0)) throw ConfigError("/masses/M", "must be positive");
  if (!(m > 0)) throw ConfigError("/masses/m", "must be positive");
  if (regime == Regime::critical) {
    if (!(sigma > 0)) throw ConfigError("/regime/sigma", "regime \"critical\" requires sigma > 0 (got sigma = 0)");
    if (s0 != 0) throw ConfigError("/regime/s0", "regime \"critical\" requires s0 = 0");
  } else {
    if (!(s0 > 0)) throw ConfigError("/regime/s0", "regime \"non-resonant\" requires s0 > 0");
    if (sigma != 0) throw ConfigError("/regime/sigma", "regime \"non-resonant\" requires sigma = 0");
  }
  try {
    norms.validate();
  } catch (const UsageError& e) {
    throw ConfigError("/norms", e.what());
  }
  if (solver.scheme != "strang" && solver.scheme != "rk4") throw ConfigError("/solver/scheme", "must be strang or rk4");
  if (solver.cadence < 1) throw ConfigError("/solver/cadence", "must be >= 1");
  if (data.kind != "zero" && data.kind != "gaussian" && data.kind != "soliton")
    throw ConfigError("/data/kind", "must be zero, gaussian or soliton");
  if (std::abs(probe.s1) != 1) throw ConfigError("/probe/s1", "must be +1 or -1");
  if (std::abs(probe.s2) != 1) throw ConfigError("/probe/s2", "must be +1 or -1");
  if (probe.samples < 30) throw ConfigError("/probe/samples", "must be >= 30 per cell");
  if (probe.family != "kg" && probe.family != "wave_cube") throw ConfigError("/probe/family", "must be kg or wave_cube");
  const bool uses_soliton = experiment == "soliton" || data.kind == "soliton";
  if (uses_soliton && !(soliton.omega > 0 && soliton.omega < M)) throw ConfigError("/soliton/omega", "must lie in (0, M)");
  if (max_n < 4) throw ConfigError("/max_n", "must be >= 4");
}

ExperimentConfig parse_config(const std::string& text) {
  json user;
  try {
    user = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) line += text[i] == '\n';
    throw ConfigError("line " + std::to_string(line), "malformed JSON");
  }
  ExperimentConfig def;
  json schema = to_json(def);
  check_keys(user, schema, "");
  // a, b follow the regime unless given explicitly
  json merged = schema;
  merge(merged, user);
  const bool has_a = user.contains("norms") && user["norms"].contains("a");
  const bool has_b = user.contains("norms") && user["norms"].contains("b");
  ExperimentConfig c = from_json(merged);
  NormParams d = NormParams::defaults(c.norms.s, c.sigma, c.s0);
  if (!has_a) c.norms.a = d.a;
  if (!has_b) c.norms.b = d.b;
  c.validate();
  return c;
}

std::string serialize_config(const ExperimentConfig& c) { return to_json(c).dump(2); }

std::string config_hash(const ExperimentConfig& c) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : serialize_config(c)) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace dkg
