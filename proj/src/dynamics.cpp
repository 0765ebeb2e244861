#include "dkg/dynamics.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "dkg/angular.hpp"
#include "dkg/kernels.hpp"
#include "dkg/multipliers.hpp"
#include "dkg/propagators.hpp"
#include "dkg/soliton.hpp"

namespace dkg {

namespace {

Field density(const Field& psi) {
  Field p = psi.rep == Rep::physical ? psi : to_physical(psi);
  Field rho = dirac_bilinear(p, p);
  for (auto& v : rho.data) v = v.real();
  return rho;
}

Field source(const Field& psi, double m, bool dealias_on) {
  Field rho = density(psi);
  if (dealias_on) rho = dealias(rho);
  Field out = bessel_potential(rho, -1.0, m);
  for (auto& v : out.data) v = v.real();
  return out;
}

std::vector<double> real_values(const Field& phi_plus) {
  std::vector<double> r(phi_plus.nodes());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = phi_plus.data[i].real();
  return r;
}

void check_finite(const DKGState& s) {
  double a = kernels::sum_abs2(s.psi.data.data(), s.psi.data.size());
  double b = kernels::sum_abs2(s.phi_plus.data.data(), s.phi_plus.data.size());
  if (!std::isfinite(a) || !std::isfinite(b))
    throw std::runtime_error("step: non-finite values (step-size/ceiling exceeded)");
}

// exact flow of the coupling terms over time s (phi = Re phi_+ and psi-bar psi are frozen)
void nonlinear_substep(DKGState& st, double s, bool dealias_on) {
  Field src = source(st.psi, st.m, dealias_on);
  auto phi = real_values(st.phi_plus);
  kernels::potential_kick(st.psi.data.data(), phi.data(), st.psi.nodes(), s);
  for (std::size_t i = 0; i < src.nodes(); ++i) st.phi_plus.data[i] += cplx(0, s) * src.data[i];
}

void linear_substep(DKGState& st, double s) {
  st.psi = dirac_free(st.psi, s, st.M);
  st.phi_plus = half_wave(st.phi_plus, s, +1, st.m);
}

// coupling terms of d/dt (psi, phi_+) in physical space
std::pair<Field, Field> coupling_rate(const Field& psi, const Field& phi_plus, double m, bool dealias_on) {
  auto phi = real_values(phi_plus);
  Field dpsi = psi;
  const std::size_t n = psi.nodes();
  for (int c = 0; c < 4; ++c) {
    double sg = c < 2 ? 1.0 : -1.0;
    for (std::size_t i = 0; i < n; ++i) dpsi.comp(c)[i] = cplx(0, sg * phi[i]) * psi.comp(c)[i];
  }
  Field dphi = source(psi, m, dealias_on);
  dphi *= cplx(0, 1);
  return {dpsi, dphi};
}

DKGState rk4_step(const DKGState& s, double h, bool dealias_on, bool coupling) {
  auto E = [&](const Field& psi, const Field& phi, double t) {
    return std::make_pair(dirac_free(psi, t, s.M), half_wave(phi, t, +1, s.m));
  };
  DKGState out = s;
  out.t = s.t + h;
  if (!coupling) {
    std::tie(out.psi, out.phi_plus) = E(s.psi, s.phi_plus, h);
    return out;
  }
  auto axpy = [](const Field& a, cplx c, const Field& b) { return a + c * b; };
  auto k1 = coupling_rate(s.psi, s.phi_plus, s.m, dealias_on);
  auto a = E(axpy(s.psi, h / 2, k1.first), axpy(s.phi_plus, h / 2, k1.second), h / 2);
  auto k2 = coupling_rate(a.first, a.second, s.m, dealias_on);
  auto wh = E(s.psi, s.phi_plus, h / 2);
  auto b = std::make_pair(axpy(wh.first, h / 2, k2.first), axpy(wh.second, h / 2, k2.second));
  auto k3 = coupling_rate(b.first, b.second, s.m, dealias_on);
  auto ek3 = E(k3.first, k3.second, h / 2);
  auto c = E(s.psi, s.phi_plus, h);
  c.first += cplx(h) * ek3.first;
  c.second += cplx(h) * ek3.second;
  auto k4 = coupling_rate(c.first, c.second, s.m, dealias_on);
  auto ek1 = E(k1.first, k1.second, h);
  auto ek23 = E(k2.first + k3.first, k2.second + k3.second, h / 2);
  auto w = E(s.psi, s.phi_plus, h);
  out.psi = w.first + cplx(h / 6) * (ek1.first + cplx(2.0) * ek23.first + k4.first);
  out.phi_plus = w.second + cplx(h / 6) * (ek1.second + cplx(2.0) * ek23.second + k4.second);
  return out;
}

double h_half_norm(const Field& phi_plus, double m) { return l2_norm(bessel_potential(phi_plus, 0.5, m)); }

}  // namespace

DKGState::DKGState(Field psi_, Field phi_plus_, double t_, double M_, double m_)
    : psi(std::move(psi_)), phi_plus(std::move(phi_plus_)), t(t_), M(M_), m(m_) {
  validate();
}

void DKGState::validate() const {
  if (!psi.is_spinor()) throw UsageError("DKGState: psi must be a spinor field");
  if (phi_plus.comps != 1) throw UsageError("DKGState: phi_+ must be a scalar field");
  if (psi.grid != phi_plus.grid) throw UsageError("DKGState: psi and phi_+ must share a grid");
  if (psi.rep != Rep::physical || phi_plus.rep != Rep::physical)
    throw UsageError("DKGState: fields must be in physical representation");
  if (!(M > 0) || !(m > 0)) throw UsageError("DKGState: masses must be positive");
}

void SolverConfig::validate(const GridSpec& g, double M) const {
  if (!(dt != 0) || !std::isfinite(dt)) throw UsageError("SolverConfig: dt must be nonzero and finite");
  if (nt < 1) throw UsageError("SolverConfig: nt must be >= 1");
  if (cadence < 1 || nt % cadence != 0) throw UsageError("SolverConfig: cadence must divide nt");
  if (!(ceiling > 1)) throw UsageError("SolverConfig: ceiling must exceed 1");
  if (sigma < 0) throw UsageError("SolverConfig: sigma must be nonnegative");
  double top = bracket(std::sqrt(3.0) * g.nyquist(), M);
  // the interaction-picture RK4 resolves the fastest linear phase per step
  if (scheme == Scheme::rk4_interaction && std::abs(dt) * top > 2 * std::sqrt(2.0))
    throw UsageError("SolverConfig: dt * max<xi> exceeds the rk4-interaction stability bound 2 sqrt 2");
}

DiracForcing rhs_dirac(const DKGState& s) {
  s.validate();
  auto phi = real_values(s.phi_plus);
  Field g = s.psi;
  for (int c = 0; c < 4; ++c) {
    double sg = c < 2 ? 1.0 : -1.0;
    for (std::size_t i = 0; i < g.nodes(); ++i) g.comp(c)[i] *= sg * phi[i];
  }
  return {dirac_projector(g, +1, s.M), dirac_projector(g, -1, s.M)};
}

Field rhs_wave(const DKGState& s, bool dealias_on) {
  s.validate();
  return source(s.psi, s.m, dealias_on);
}

Field real_part(const Field& f) {
  Field r = f.rep == Rep::physical ? f : to_physical(f);
  for (auto& v : r.data) v = v.real();
  return r;
}

DKGState step(const DKGState& s, const SolverConfig& cfg) {
  DKGState st = s;
  const double h = cfg.dt;
  if (cfg.scheme == Scheme::rk4_interaction) {
    st = rk4_step(s, h, cfg.dealias, cfg.coupling);
  } else {
    if (cfg.coupling) nonlinear_substep(st, h / 2, cfg.dealias);
    linear_substep(st, h);
    if (cfg.coupling) nonlinear_substep(st, h / 2, cfg.dealias);
    st.t = s.t + h;
  }
  check_finite(st);
  return st;
}

EvolveResult evolve(const DKGState& s0, const SolverConfig& cfg) {
  s0.validate();
  cfg.validate(s0.psi.grid, s0.M);
  const GridSpec& g = s0.psi.grid;
  std::unique_ptr<AngularTransformPlan> plan;
  std::vector<int> Ns{1};
  if (cfg.sigma > 0) {
    plan = std::make_unique<AngularTransformPlan>(g, cfg.ell_max);
    Ns = angular_blocks(*plan);
  }
  // int |<nabla>^{s_D} H_N psi|^4 dx for each angular block
  auto l4_terms = [&](const Field& psi) {
    Field d = bessel_potential(psi, cfg.s_D, 1.0);
    std::vector<double> out;
    for (int N : Ns) {
      Field h = plan ? angular_projector(d, N, *plan) : d;
      out.push_back(kernels::sum_pointwise_pow(h.data.data(), h.nodes(), 4, 4.0) * g.cell());
    }
    return out;
  };
  auto running_D = [&](const std::vector<double>& acc) {
    if (!plan) return std::pow(acc[0], 0.25);
    double s = 0;
    for (std::size_t k = 0; k < Ns.size(); ++k) s += std::pow(double(Ns[k]), 2 * cfg.sigma) * std::sqrt(acc[k]);
    return std::sqrt(s);
  };

  EvolveResult res;
  DKGState st = s0;
  const double charge0 = l2_norm(st.psi);
  const double wave0 = h_half_norm(st.phi_plus, st.m);
  // scale of phi_+ sourced by the initial spinor when phi_+(0) vanishes
  const double wave_ref = std::max({wave0, h_half_norm(source(st.psi, st.m, cfg.dealias), st.m), 1e-300});

  std::vector<Field> fpsi, fphi;
  std::vector<double> acc(Ns.size(), 0.0), prev_terms;
  Field prev_free;
  const double dT = cfg.dt * cfg.cadence;

  auto record = [&](bool first) {
    DiagnosticsRow row;
    row.t = st.t;
    row.charge = l2_norm(st.psi);
    row.wave_norm = h_half_norm(st.phi_plus, st.m);
    auto terms = l4_terms(st.psi);
    if (!first)
      for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += 0.5 * std::abs(dT) * (terms[k] + prev_terms[k]);
    prev_terms = terms;
    row.running_D = running_D(acc);
    Field fr = dirac_free(st.psi, -(st.t - s0.t), st.M);
    row.cauchy_inc = first ? 0.0 : l2_norm(fr - prev_free);
    prev_free = std::move(fr);
    row.h_complement = row.charge > 0 ? h_complement_norm(st.psi) / row.charge : 0.0;
    res.rows.push_back(row);
    if (cfg.store_frames) {
      fpsi.push_back(st.psi);
      fphi.push_back(st.phi_plus);
    }
    return row;
  };

  record(true);
  for (int j = 1; j <= cfg.nt; ++j) {
    DKGState next;
    try {
      next = step(st, cfg);
    } catch (const std::runtime_error& e) {
      res.halted = true;
      res.message = std::string(e.what()) + " at t = " + std::to_string(st.t);
      break;
    }
    st = std::move(next);
    if (j % cfg.cadence == 0) {
      auto row = record(false);
      if (row.charge > cfg.ceiling * charge0 + 1e-300 || row.wave_norm > cfg.ceiling * wave_ref) {
        res.halted = true;
        res.message = "step-size/ceiling exceeded at t = " + std::to_string(st.t);
        break;
      }
    }
  }
  res.final_state = st;
  if (cfg.store_frames && !res.halted) {
    TimeGrid tg(s0.t, dT, cfg.nt / cfg.cadence);
    res.psi = Trajectory(tg, std::move(fpsi));
    res.phi_plus = Trajectory(tg, std::move(fphi));
  }
  return res;
}

void write_diagnostics_csv(const std::string& path, const std::vector<DiagnosticsRow>& rows) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path);
  os.precision(17);
  os << "# dkg-csv diagnostics v1\n";
  os << "t,charge,wave_norm,running_D,cauchy_inc,h_complement\n";
  for (const auto& r : rows)
    os << r.t << "," << r.charge << "," << r.wave_norm << "," << r.running_D << "," << r.cauchy_inc << ","
       << r.h_complement << "\n";
}

double second_order_residual(const Trajectory& psi, const Trajectory& phi_plus, double m, bool dealias_on) {
  if (phi_plus.frames.size() < 3) throw UsageError("second_order_residual: need at least 3 frames");
  if (psi.frames.size() != phi_plus.frames.size()) throw UsageError("second_order_residual: frame count mismatch");
  const double dt = phi_plus.time.dt;
  double worst = 0;
  for (std::size_t j = 1; j + 1 < phi_plus.frames.size(); ++j) {
    Field a = real_part(phi_plus.frames[j - 1]), b = real_part(phi_plus.frames[j]),
          c = real_part(phi_plus.frames[j + 1]);
    Field r = cplx(1.0 / (dt * dt)) * (a + c - cplx(2.0) * b);
    r += helmholtz(b, m);
    Field rho = density(psi.frames[j]);
    if (dealias_on) rho = dealias(rho);
    r -= rho;
    worst = std::max(worst, l2_norm(r));
  }
  return worst;
}

std::vector<double> scattering_diagnostic(const Trajectory& psi, double M) {
  psi.validate();
  std::vector<double> out;
  Field prev = dirac_free(psi.frames[0], -psi.time.time(0), M);
  for (std::size_t j = 1; j < psi.frames.size(); ++j) {
    Field cur = dirac_free(psi.frames[j], -psi.time.time(int(j)), M);
    out.push_back(l2_norm(cur - prev));
    prev = std::move(cur);
  }
  return out;
}

}  // namespace dkg
