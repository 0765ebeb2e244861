#include "dkg/experiments.hpp"

#include <fftw3.h>

#include <Eigen/Core>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <map>
#include <random>

#include "dkg/kernels.hpp"
#include "dkg/norms.hpp"
#include "dkg/plot.hpp"
#include "dkg/probes.hpp"
#include "dkg/propagators.hpp"
#include "dkg/resonance.hpp"
#include "dkg/soliton.hpp"

namespace dkg {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "1.0.0";

struct Ctx {
  const ExperimentConfig& c;
  fs::path dir;
  RunReport& rep;

  void check(const std::string& name, double value, double bound, bool pass, const std::string& detail = "") {
    rep.checks.push_back({name, value, bound, pass, detail});
  }
  std::string path(const std::string& file) {
    rep.files.push_back(file);
    return (dir / file).string();
  }
  void scaling(const std::string& stem, const ScalingReport& r) {
    write_report_csv(path(stem + ".csv"), r);
    write_report_json(path(stem + ".json"), r);
  }
};

RadialProfilePair refined_profile(const ExperimentConfig& c, double* residual) {
  const auto& s = c.soliton;
  RadialProfilePair p = gaussian_profile(s.samples, s.rmax, s.omega, c.M, c.m, s.amp, s.width);
  RefineResult r = refine_stationary(p, c.grid, s.tol, s.max_iter);
  if (residual) *residual = r.residual;
  return r.profile;
}

// ---- experiments ----------------------------------------------------------------

void run_simulate(Ctx& x) {
  DKGState s = initial_state(x.c);
  SolverConfig cfg = solver_config(x.c);
  EvolveResult res = evolve(s, cfg);
  write_diagnostics_csv(x.path("simulate.csv"), res.rows);
  x.check("no_halt", res.halted ? 1 : 0, 0, !res.halted, res.message);
  double q0 = res.rows.front().charge, drift = 0;
  for (const auto& r : res.rows) drift = std::max(drift, std::abs(r.charge - q0));
  double rel = q0 > 0 ? drift / q0 : drift;
  x.check("charge_drift", rel, x.c.checks.at("charge_drift"), rel <= x.c.checks.at("charge_drift"));
}

void run_norms(Ctx& x) {
  DKGState s = initial_state(x.c);
  const double T = x.c.time.T();
  const int K = std::min(x.c.time.nt, 16);
  TimeGrid tg(0.0, T / K, K);
  Trajectory u = dirac_free_trajectory(s.psi, tg, x.c.M);
  const double tol_rel = x.c.checks.at("free_wave");
  const double y = stacked_norm_dirac(u, StackKind::Y, x.c.M, x.c.norms, nullptr);
  const double d = dispersive_norm(u, -0.5, 0.0, nullptr).value;
  std::ofstream os(x.path("norms.csv"));
  os.precision(17);
  os << "# dkg-csv norms v1\nquantity,value\n";
  os << "data_l2," << l2_norm(s.psi) << "\ny," << y << "\nd_minus_half," << d << "\n";
  double worst_err = 0, worst_ratio = 0;
  std::mt19937_64 rng(x.c.seed);
  std::uniform_int_distribution<int> pick(1, K);
  for (int sg : {+1, -1}) {
    // each sign part is a free half-wave of its own flow
    Trajectory part = map_frames(u, [&](const Field& f, double) { return dirac_projector(f, sg, x.c.M); });
    const double f = l2_norm(part.frames.front());
    const double v2 = v2_norm(part, sg, x.c.M);
    const char* tag = sg > 0 ? "plus" : "minus";
    os << "v2_" << tag << "," << v2 << "\nl2_" << tag << "," << f << "\n";
    worst_err = std::max(worst_err, std::abs(v2 - f) / std::max(f, 1e-300));
    for (int i = 0; i < 50; ++i) {
      double r = v2_norm(interval_restrict(part, 0.0, tg.time(pick(rng))), sg, x.c.M);
      worst_ratio = std::max(worst_ratio, v2 > 0 ? r / v2 : r);
    }
  }
  os << "restriction_ratio," << worst_ratio << "\n";
  x.check("v2_equals_data", worst_err, tol_rel, worst_err <= tol_rel, "relative, worst sign");
  x.check("y_vanishes", y, tol_rel, y <= tol_rel * std::max(1.0, l2_norm(s.psi)));
  x.check("restriction_bound", worst_ratio, 2.0, worst_ratio <= 2.0 + 1e-12, "100 truncations [0, T']");
}

void run_soliton(Ctx& x) {
  double residual = 0;
  RadialProfilePair p = refined_profile(x.c, &residual);
  write_profile((x.dir / "soliton_profile").string(), p, residual);
  x.rep.files.push_back("soliton_profile.csv");
  x.rep.files.push_back("soliton_profile.json");
  x.check("residual", residual, x.c.soliton.tol, residual <= x.c.soliton.tol);
  Field psi = partial_wave_embed(p, x.c.grid, 1e-3);
  std::unique_ptr<AngularTransformPlan> plan;
  if (x.c.sigma > 0) plan = std::make_unique<AngularTransformPlan>(x.c.grid, x.c.solver.ell_max);
  ScalingReport r = d_norm_growth(psi, p.omega, -0.5, x.c.sigma, {1, 2, 4}, plan.get());
  x.scaling("soliton", r);
  double tol = x.c.checks.at("soliton_slope_tol");
  x.check("exact_phase_slope", r.fit.slope, 0.25, std::abs(r.fit.slope - 0.25) <= tol);
}

void run_resonance(Ctx& x) {
  const auto& pr = x.c.probe;
  ScalingReport r;
  r.name = "resonance_min";
  r.x_label = "lambda";
  r.y_label = "min_M";
  std::vector<double> prod;
  for (double lam : pr.lambdas) {
    ResonanceMin m = resonance_min(lam, lam, lam, pr.s1, pr.s2, x.c.M, x.c.m, 60, 120);
    if (m.undersampled) x.rep.warnings.push_back("undersampled annuli at lambda=" + std::to_string(lam));
    r.x.push_back(lam);
    r.y.push_back(m.value);
    prod.push_back(m.value * lam);
  }
  if (r.x.size() >= 2 && *std::min_element(r.y.begin(), r.y.end()) > 0) r.refit();
  double hi = *std::max_element(prod.begin(), prod.end()), lo = *std::min_element(prod.begin(), prod.end());
  r.max_ratio = lo > 0 ? hi / lo : INFINITY;
  x.scaling("probe-resonance", r);
  if (x.c.M > 0.5) {
    double bound = x.c.checks.at("resonance_stability");
    x.check("non_resonant_stability", r.max_ratio, bound, r.max_ratio <= bound);
    LowerBoundConfig lb;
    lb.s1 = pr.s1;
    lb.s2 = pr.s2;
    lb.M = x.c.M;
    lb.m = x.c.m;
    lb.seed = x.c.seed;
    ScalingReport l = resonance_lowerbound_fit(lb);
    x.scaling("probe-resonance-lowerbound", l);
    double inf = *std::min_element(l.y.begin(), l.y.end());
    x.check("lower_bound", inf, x.c.checks.at("lower_bound_min"), inf >= x.c.checks.at("lower_bound_min"));
  } else {
    ResonanceMin m = resonance_min(1, 1, 1, pr.s1, pr.s2, x.c.M, x.c.m, 2000, 8);
    double bound = x.c.checks.at("resonant_min");
    x.check("resonant_min", m.value, bound, m.value <= bound,
            "|xi|=" + std::to_string(norm(m.xi)) + " |eta|=" + std::to_string(norm(m.eta)));
    double root = resonance_pm_root(x.c.M);
    double want = std::sqrt(0.25 - x.c.M * x.c.M);
    x.check("diagonal_root", std::abs(root - want), 1e-8, std::abs(root - want) <= 1e-8);
  }
}

void run_null(Ctx& x) {
  NullSymbolConfig nc;
  nc.s1 = x.c.probe.s1;
  nc.s2 = x.c.probe.s2;
  nc.M = x.c.M;
  nc.seed = x.c.seed;
  ScalingReport r = null_symbol_ratio(nc);
  x.scaling("probe-null", r);
  x.check("null_ratio", r.max_ratio, x.c.checks.at("null_max"), r.max_ratio <= x.c.checks.at("null_max"));
}

void run_strichartz(Ctx& x) {
  StrichartzConfig sc;
  sc.n = x.c.grid.n;
  sc.L = x.c.grid.L;
  sc.m = x.c.m;
  sc.T = x.c.time.T();
  sc.plateau_tol = x.c.checks.at("plateau_tol");
  sc.seed = x.c.seed;
  double target = 0.5;
  if (x.c.probe.family == "wave_cube") {
    sc.family = StrichartzFamily::wave_cube;
    sc.lambda = x.c.probe.lambda;
    sc.mus = x.c.probe.mus;
    target = 0.5 - 1 / sc.r;
  } else {
    sc.lambdas = x.c.probe.lambdas;
  }
  StrichartzReport r = strichartz_fit(sc);
  x.scaling("probe-strichartz", r);
  double band = x.c.checks.at("slope_band");
  x.check("exponent", r.fit.slope, target, std::abs(r.fit.slope - target) <= band);
  double worst = *std::max_element(r.plateau_increment.begin(), r.plateau_increment.end());
  x.check("plateau", worst, sc.plateau_tol, r.plateaued);
}

void run_bilinear(Ctx& x) {
  BilinearConfig bc;
  bc.s1 = x.c.probe.s1;
  bc.s2 = x.c.probe.s2;
  bc.M = x.c.M;
  bc.mu = x.c.probe.mu;
  bc.ratios = x.c.probe.ratios;
  bc.draws = x.c.probe.samples;
  bc.seed = x.c.seed;
  ScalingReport r = bilinear_fit(bc);
  x.scaling("probe-bilinear", r);
  if (bc.s1 != bc.s2) {
    double band = x.c.checks.at("slope_band");
    x.check("opposite_sign_slope", r.fit.slope, band, std::abs(r.fit.slope) <= band);
  } else {
    double lo = x.c.checks.at("same_sign_min_slope");
    x.check("same_sign_slope", r.fit.slope, lo, r.fit.slope >= lo);
  }
}

void run_trilinear(Ctx& x) {
  TrilinearConfig tc;
  tc.s1 = x.c.probe.s1;
  tc.s2 = x.c.probe.s2;
  tc.M = x.c.M;
  tc.mu = x.c.probe.mu;
  tc.ratios = x.c.probe.ratios;
  tc.draws = x.c.probe.samples;
  tc.seed = x.c.seed;
  TrilinearReport r = trilinear_ratio(tc);
  x.scaling("probe-trilinear", r);
  double lo = x.c.checks.at("gain_min_slope");
  x.check("gain_slope", r.fit.slope, lo, r.fit.slope >= lo);
  x.check("max_ratio_finite", r.max_ratio, INFINITY, std::isfinite(r.max_ratio),
          "best theta0 " + std::to_string(r.best_theta0));
}

void run_scatter(Ctx& x) {
  DKGState s = initial_state(x.c);
  SolverConfig cfg = solver_config(x.c);
  EvolveResult res = evolve(s, cfg);
  write_diagnostics_csv(x.path("scatter-diagnose.csv"), res.rows);
  x.check("no_halt", res.halted ? 1 : 0, 0, !res.halted, res.message);
  ScalingReport r;
  r.name = "running_D";
  r.x_label = "t";
  r.y_label = "D";
  for (const auto& row : res.rows)
    if (row.t > 0 && row.running_D > 0) {
      r.x.push_back(row.t);
      r.y.push_back(row.running_D);
    }
  if (r.x.size() >= 2) r.refit();
  // geometric decay of the Cauchy increments points to scattering
  std::vector<double> inc;
  for (std::size_t i = 1; i < res.rows.size(); ++i) inc.push_back(res.rows[i].cauchy_inc);
  if (inc.size() >= 4) {
    double first = inc[inc.size() / 4], last = inc.back();
    bool decaying = first > 0 && last < 0.25 * first;
    r.notes.push_back(decaying ? "cauchy increments decay: scattering-like" : "cauchy increments persist: non-scattering");
    x.rep.warnings.push_back(r.notes.back());
  }
  x.scaling("scatter-diagnose-D", r);
}

const std::map<std::string, std::function<void(Ctx&)>>& table() {
  static const std::map<std::string, std::function<void(Ctx&)>> t = {
      {"simulate", run_simulate},           {"norms", run_norms},
      {"soliton", run_soliton},             {"probe-resonance", run_resonance},
      {"probe-null", run_null},             {"probe-strichartz", run_strichartz},
      {"probe-bilinear", run_bilinear},     {"probe-trilinear", run_trilinear},
      {"scatter-diagnose", run_scatter}};
  return t;
}

}  // namespace

const std::vector<std::string>& experiment_registry() {
  static const std::vector<std::string> names = {"simulate",         "norms",          "soliton",
                                                 "probe-resonance",  "probe-null",     "probe-strichartz",
                                                 "probe-bilinear",   "probe-trilinear", "scatter-diagnose"};
  return names;
}

SolverConfig solver_config(const ExperimentConfig& c) {
  SolverConfig s;
  s.dt = c.time.dt;
  s.nt = c.time.nt;
  s.scheme = c.solver.scheme == "rk4" ? Scheme::rk4_interaction : Scheme::strang;
  s.cadence = c.solver.cadence;
  s.dealias = c.solver.dealias;
  s.ceiling = c.solver.ceiling;
  s.store_frames = false;
  s.sigma = c.sigma;
  s.ell_max = c.solver.ell_max;
  return s;
}

DKGState initial_state(const ExperimentConfig& c) {
  const GridSpec& g = c.grid;
  if (c.data.kind == "zero") return DKGState(Field(g, 4), Field(g, 1), 0.0, c.M, c.m);
  if (c.data.kind == "soliton") {
    RadialProfilePair p = refined_profile(c, nullptr);
    Field psi = partial_wave_embed(p, g, 1e-3);
    return DKGState(psi, phi_from_spinor(psi, c.m), 0.0, c.M, c.m);
  }
  Field psi(g, 4), phi(g, 1);
  const cplx v[4] = {cplx(0.6, 0.2), cplx(-0.3, 0.4), cplx(0.2, -0.3), cplx(0.1, 0.45)};
  const double w = c.data.width, a = c.data.amplitude;
  for (std::size_t i = 0; i < g.size(); ++i) {
    Vec3 x = g.node(i);
    double r2 = dot(x, x);
    cplx e = a * std::exp(-r2 / (2 * w * w));
    for (int k = 0; k < 4; ++k) psi.comp(k)[i] = v[k] * e;
    phi.data[i] = a * std::exp(-r2 / (2 * 1.44 * w * w));
  }
  return DKGState(psi, phi, 0.0, c.M, c.m);
}

RunReport run_experiment(const ExperimentConfig& c, bool plots) {
  auto start = std::chrono::steady_clock::now();
  auto it = table().find(c.experiment);
  if (it == table().end()) throw ExperimentError("unknown experiment \"" + c.experiment + "\"");
  c.validate();
  if (c.grid.n > c.max_n)
    throw ExperimentError("resource ceiling exceeded: grid n = " + std::to_string(c.grid.n) +
                          " > max_n = " + std::to_string(c.max_n));
  fs::path dir(c.out);
  fs::create_directories(dir);
  {
    std::ofstream probe(dir / ".write_test");
    if (!probe) throw ExperimentError("output directory not writable: " + c.out);
  }
  fs::remove(dir / ".write_test");

  RunReport rep;
  rep.experiment = c.experiment;
  Ctx ctx{c, dir, rep};
  it->second(ctx);

  if (plots) {
    std::vector<std::string> csvs;
    for (const auto& f : rep.files)
      if (f.size() > 4 && f.substr(f.size() - 4) == ".csv") csvs.push_back(f);
    for (const auto& f : csvs) {
      std::ifstream is(dir / f);
      std::string head;
      std::getline(is, head);
      if (head != "# dkg-csv scaling v1" && head != "# dkg-csv diagnostics v1") continue;
      std::string svg = f.substr(0, f.size() - 4) + ".svg";
      PlotResult pr = emit_plot((dir / f).string(), (dir / svg).string());
      rep.files.push_back(svg);
      if (pr.warning) rep.warnings.push_back(svg + ": " + pr.message);
    }
  }

  rep.pass = std::all_of(rep.checks.begin(), rep.checks.end(), [](const CheckResult& k) { return k.pass; });
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  json m;
  m["experiment"] = c.experiment;
  m["seed"] = c.seed;
  m["config"] = json::parse(serialize_config(c));
  m["config_hash"] = config_hash(c);
  json ver;
  ver["dkg"] = kVersion;
  ver["compiler"] = std::string(__VERSION__);
  ver["fftw"] = std::string(fftw_version);
  ver["eigen"] = std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                 std::to_string(EIGEN_MINOR_VERSION);
  ver["threads"] = exec_threads();
  m["version"] = ver;
  m["wall_seconds"] = rep.wall_seconds;
  m["pass"] = rep.pass;
  m["files"] = rep.files;
  m["warnings"] = rep.warnings;
  json checks = json::array();
  for (const auto& k : rep.checks)
    checks.push_back({{"name", k.name}, {"value", k.value}, {"bound", k.bound}, {"pass", k.pass}, {"detail", k.detail}});
  m["checks"] = checks;
  std::ofstream os(dir / "manifest.json");
  if (!os) throw ExperimentError("cannot write manifest in " + c.out);
  os << m.dump(2) << "\n";
  return rep;
}

}  // namespace dkg
