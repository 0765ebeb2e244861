#include "dkg/norms.hpp"

#include <cmath>
#include <map>

#include "dkg/propagators.hpp"

namespace dkg {

namespace {

constexpr double kPi = 3.14159265358979323846;

double y_weight(double d, double lambda, const NormParams& prm) {
  return std::pow(d, 1.0 / prm.a) * std::pow(std::min(d, lambda) / lambda, prm.b);
}

Trajectory lp_traj(const Trajectory& u, double lambda, const DyadicProfile& p) {
  return map_frames(u, [&](const Field& f, double) { return littlewood_paley(f, lambda, p); });
}

}  // namespace

NormParams NormParams::defaults(double s, double sigma, double s0) {
  NormParams n;
  n.s = s;
  n.sigma = sigma;
  n.s0 = s0;
  double rho = sigma > 0 ? sigma : s0;
  double inva = 0.5 + rho / 16.0;
  n.a = 1.0 / inva;
  n.b = 2.0 * (inva - 0.5);
  return n;
}

void NormParams::validate() const {
  if (!(a > 1 && a < 2)) throw UsageError("NormParams: a must lie in (1, 2)");
  if (!(b > 0)) throw UsageError("NormParams: b must be positive");
  if (s < 0 || sigma < 0) throw UsageError("NormParams: s and sigma must be nonnegative");
}

double v2_norm(const Trajectory& u, int sign, double m) {
  u.validate();
  Trajectory v = pull_back(u, sign, m);
  double sup = 0;
  for (const auto& f : v.frames) sup = std::max(sup, l2_norm(f));
  return sup + p_variation(v.frames, 2.0).value;
}

double v2_norm_dirac(const Trajectory& u, double M) {
  double s = 0;
  for (int sg : {+1, -1}) {
    Trajectory part = map_frames(u, [&](const Field& f, double) { return dirac_projector(f, sg, M); });
    s += v2_norm(part, sg, M);
  }
  return s;
}

std::vector<double> resolvable_modulations(const TimeGrid& tg, double lo_factor) {
  double lo = lo_factor * kPi / tg.T();
  double hi = kPi / tg.dt;
  std::vector<double> out;
  for (double d = std::exp2(std::ceil(std::log2(lo))); d <= hi * (1 + 1e-12); d *= 2) out.push_back(d);
  return out;
}

double packet_mixed_norm(const WavePacketSum& w, const GridSpec& g, const TimeGrid& tg, double q) {
  check_on_lattice(w, g);
  std::map<std::array<int, 3>, std::vector<const Packet*>> groups;
  for (const auto& pk : w.packets) {
    std::array<int, 3> k{};
    g.on_lattice(pk.xi - w.carrier, &k);
    groups[k].push_back(&pk);
  }
  std::vector<double> l2(tg.samples());
  for (int j = 0; j < tg.samples(); ++j) {
    double t = tg.time(j), s = 0;
    for (const auto& [k, list] : groups) {
      std::vector<cplx> acc(w.comps, 0.0);
      for (const Packet* pk : list) {
        cplx e = std::polar(1.0, pk->tau * t);
        for (int c = 0; c < w.comps; ++c) acc[c] += pk->v[c] * e;
      }
      for (auto& a : acc) s += std::norm(a);
    }
    l2[j] = std::sqrt(s * g.volume());
  }
  if (std::isinf(q)) {
    double mx = 0;
    for (double v : l2) mx = std::max(mx, v);
    return mx;
  }
  double s = 0;
  for (int j = 0; j < tg.samples(); ++j) s += tg.weight(j) * std::pow(l2[j], q);
  return std::pow(s, 1.0 / q);
}

YResult y_norm(const WavePacketSum& w, const GridSpec& g, const TimeGrid& tg, double lambda, int sign, double M,
               const NormParams& prm, const DyadicProfile& p) {
  if (!is_dyadic(lambda) || lambda < 1) throw UsageError("y_norm: lambda must be a dyadic integer");
  prm.validate();
  auto ds = resolvable_modulations(tg);
  if (ds.empty()) throw UsageError("y_norm: window too short to resolve any dyadic d");
  WavePacketSum pl = w;
  pl.packets.clear();
  for (const auto& pk : w.packets) {
    double wt = p.block(norm(pk.xi), lambda);
    if (wt == 0.0) continue;
    Packet q = pk;
    for (auto& c : q.v) c *= wt;
    pl.packets.push_back(std::move(q));
  }
  YResult r{0.0, 0.0, ds.front(), ds.back()};
  for (double d : ds) {
    WavePacketSum cd = modulation_projector(pl, d, sign, M, false, p);
    if (cd.packets.empty()) continue;
    double v = y_weight(d, lambda, prm) * packet_mixed_norm(cd, g, tg, prm.a);
    if (v > r.value) {
      r.value = v;
      r.d_star = d;
    }
  }
  return r;
}

YResult y_norm(const Trajectory& u, double lambda, int sign, double M, const NormParams& prm,
               const DyadicProfile& p) {
  if (!is_dyadic(lambda) || lambda < 1) throw UsageError("y_norm: lambda must be a dyadic integer");
  prm.validate();
  u.validate();
  auto ds = u.time.nt >= 8 ? resolvable_modulations(u.time, 4.0) : std::vector<double>{};
  if (ds.empty()) throw UsageError("y_norm: window too short to resolve any dyadic d");
  Trajectory pl = lp_traj(u, lambda, p);
  const double norm_a = hann_mean(u.time.nt, prm.a);
  YResult r{0.0, 0.0, ds.front(), ds.back()};
  for (double d : ds) {
    Trajectory cd = modulation_projector(pl, d, sign, M, false, p);
    double v = y_weight(d, lambda, prm) * mixed_norm(cd, prm.a, 2.0) / norm_a;
    if (v > r.value) {
      r.value = v;
      r.d_star = d;
    }
  }
  return r;
}

DResult dispersive_norm(const Trajectory& u, double s, double sigma, const AngularTransformPlan* plan,
                        const DyadicProfile& p) {
  u.validate();
  if (sigma < 0) throw UsageError("dispersive_norm: sigma must be nonnegative");
  Trajectory du = map_frames(u, [&](const Field& f, double) { return bessel_potential(f, s, 1.0); });
  DResult r;
  if (sigma == 0.0) {
    r.value = mixed_norm(du, 4.0, 4.0);
    return r;
  }
  if (!plan) throw UsageError("dispersive_norm: sigma > 0 needs an angular plan");
  auto Ns = angular_blocks(*plan);
  if (Ns.empty()) throw UsageError("dispersive_norm: ell_max too small for any angular block");
  auto covered = [&](int l) {
    if (l > plan->ell_max()) return 0.0;
    double w = 0;
    for (int N : Ns) w += angular_weight(l, N, p);
    return w;
  };
  for (const auto& f : du.frames) {
    double tot = l2_norm(f);
    if (tot == 0) continue;
    Field rest = plan->filter(f, [&](int l) { return 1.0 - covered(l); });
    r.truncated = std::max(r.truncated, l2_norm(rest) / tot);
  }
  double acc = 0;
  for (int N : Ns) {
    Trajectory hn = map_frames(du, [&](const Field& f, double) { return angular_projector(f, N, *plan, p); });
    double v = mixed_norm(hn, 4.0, 4.0);
    acc += std::pow(double(N), 2 * sigma) * v * v;
  }
  r.value = std::sqrt(acc);
  return r;
}

double stacked_norm(const Trajectory& u, StackKind kind, int sign, double m, const NormParams& prm,
                    const AngularTransformPlan* plan, const DyadicProfile& p) {
  u.validate();
  if (kind == StackKind::F)
    return stacked_norm(u, StackKind::V, sign, m, prm, plan, p) + stacked_norm(u, StackKind::Y, sign, m, prm, plan, p);
  if (kind == StackKind::Y) prm.validate();
  const bool split = plan && prm.sigma > 0;
  std::vector<int> Ns = split ? angular_blocks(*plan) : std::vector<int>{1};
  auto lams = lp_blocks(u.grid(), u.frames.front().carrier, p);
  double acc = 0;
  for (int N : Ns) {
    Trajectory hn = split ? map_frames(u, [&](const Field& f, double) { return angular_projector(f, N, *plan, p); }) : u;
    for (double lam : lams) {
      double v;
      if (kind == StackKind::V) {
        v = v2_norm(lp_traj(hn, lam, p), sign, m);
      } else {
        v = y_norm(hn, lam, sign, m, prm, p).value;
      }
      double wgt = std::pow(lam, prm.s) * std::pow(double(N), prm.sigma);
      acc += wgt * wgt * v * v;
    }
  }
  return std::sqrt(acc);
}

double stacked_norm_dirac(const Trajectory& u, StackKind kind, double M, const NormParams& prm,
                          const AngularTransformPlan* plan, const DyadicProfile& p) {
  double s = 0;
  for (int sg : {+1, -1}) {
    Trajectory part = map_frames(u, [&](const Field& f, double) { return dirac_projector(f, sg, M); });
    s += stacked_norm(part, kind, sg, M, prm, plan, p);
  }
  return s;
}

Trajectory interval_restrict(const Trajectory& u, double ta, double tb) {
  u.validate();
  const TimeGrid& tg = u.time;
  auto index_of = [&](double t) {
    double x = (t - tg.t0) / tg.dt;
    long j = std::lround(x);
    if (std::abs(x - j) > 1e-9 || j < 0 || j > tg.nt) throw UsageError("interval_restrict: misaligned subwindow");
    return int(j);
  };
  int ja = index_of(ta), jb = index_of(tb);
  if (ja > jb) throw UsageError("interval_restrict: misaligned subwindow");
  std::vector<Field> frames = u.frames;
  for (int j = 0; j <= tg.nt; ++j)
    if (j < ja || j > jb) std::fill(frames[j].data.begin(), frames[j].data.end(), cplx(0.0));
  return Trajectory(tg, std::move(frames));
}

}  // namespace dkg
