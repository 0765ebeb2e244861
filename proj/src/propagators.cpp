#include "dkg/propagators.hpp"

#include <cmath>

#include "dkg/gamma.hpp"
#include "dkg/kernels.hpp"
#include "dkg/multipliers.hpp"

namespace dkg {

namespace {

int sample_index(const TimeGrid& tg, double t0) {
  double q = (t0 - tg.t0) / tg.dt;
  double r = std::round(q);
  if (std::abs(q - r) > 1e-9 || r < 0 || r > tg.nt) throw UsageError("duhamel: t0 outside the sampled window");
  return int(r);
}

void dirac_flow_inplace(Field& g, double t, double M) {
  kernels::apply_spinor(g.grid, g.carrier, g.data.data(), [&](const Vec3& xi, cplx* v) {
    double br = bracket(xi, M);
    Mat4 P = dirac_projector_matrix(xi, +1, M);
    Vec4 x(v[0], v[1], v[2], v[3]);
    Vec4 xp = P * x;
    Vec4 y = std::polar(1.0, -t * br) * xp + std::polar(1.0, t * br) * (x - xp);
    for (int c = 0; c < 4; ++c) v[c] = y(c);
  });
}

}  // namespace

Field half_wave(const Field& f, double t, int sign, double m) {
  return apply_symbol(f, [&](const Vec3& xi) { return std::polar(1.0, -sign * t * bracket(xi, m)); });
}

Field dirac_free(const Field& psi, double t, double M) {
  if (!(M > 0)) throw UsageError("dirac_free: M must be positive");
  if (!psi.is_spinor()) throw UsageError("dirac_free: spinor field required");
  Field g = psi;
  bool phys = g.rep == Rep::physical;
  if (phys) to_fourier_inplace(g);
  dirac_flow_inplace(g, t, M);
  if (phys) to_physical_inplace(g);
  return g;
}

Trajectory half_wave_trajectory(const Field& f, const TimeGrid& tg, int sign, double m) {
  std::vector<Field> fr;
  for (int j = 0; j < tg.samples(); ++j) fr.push_back(half_wave(f, tg.time(j), sign, m));
  return Trajectory(tg, std::move(fr));
}

Trajectory dirac_free_trajectory(const Field& psi, const TimeGrid& tg, double M) {
  std::vector<Field> fr;
  for (int j = 0; j < tg.samples(); ++j) fr.push_back(dirac_free(psi, tg.time(j), M));
  return Trajectory(tg, std::move(fr));
}

Trajectory pull_back(const Trajectory& u, int sign, double m) {
  return map_frames(u, [&](const Field& f, double t) { return half_wave(f, -t, sign, m); });
}

Trajectory pull_back_dirac(const Trajectory& u, double M) {
  return map_frames(u, [&](const Field& f, double t) { return dirac_free(f, -t, M); });
}

Trajectory duhamel_half_wave(const Trajectory& F, double t0, int sign, double m) {
  const TimeGrid& tg = F.time;
  const int j0 = sample_index(tg, t0);
  const int ns = tg.samples();
  std::vector<Field> G;
  G.reserve(ns);
  for (int j = 0; j < ns; ++j) {
    Field g = F.frames[j].rep == Rep::fourier ? F.frames[j] : to_fourier(F.frames[j]);
    G.push_back(half_wave(g, -tg.time(j), sign, m));
  }
  // cumulative trapezoid outward from j0
  std::vector<Field> acc(ns, Field(F.grid(), F.comps(), Rep::fourier));
  for (auto& a : acc) a.carrier = F.frames[0].carrier;
  for (int j = j0 + 1; j < ns; ++j) {
    acc[j] = acc[j - 1];
    for (std::size_t i = 0; i < acc[j].data.size(); ++i) acc[j].data[i] += 0.5 * tg.dt * (G[j - 1].data[i] + G[j].data[i]);
  }
  for (int j = j0 - 1; j >= 0; --j) {
    acc[j] = acc[j + 1];
    for (std::size_t i = 0; i < acc[j].data.size(); ++i) acc[j].data[i] -= 0.5 * tg.dt * (G[j + 1].data[i] + G[j].data[i]);
  }
  std::vector<Field> out;
  out.reserve(ns);
  for (int j = 0; j < ns; ++j) {
    Field u = half_wave(acc[j], tg.time(j), sign, m);
    u *= cplx(0.0, 1.0);
    if (F.frames[j].rep == Rep::physical) to_physical_inplace(u);
    out.push_back(std::move(u));
  }
  return Trajectory(tg, std::move(out));
}

Trajectory duhamel_dirac(const Trajectory& G, double t0, double M) {
  if (G.comps() != 4) throw UsageError("duhamel_dirac: spinor forcing required");
  const auto& gam = gammas();
  Trajectory total;
  for (int s : {+1, -1}) {
    Trajectory Fs = map_frames(G, [&](const Field& f, double) {
      Field g = f.rep == Rep::physical ? f : to_physical(f);
      Field h(g.grid, 4);
      h.carrier = g.carrier;
      for (int c = 0; c < 4; ++c)
        for (std::size_t i = 0; i < g.nodes(); ++i) h.comp(c)[i] = gam[0](c, c) * g.comp(c)[i];
      Field p = dirac_projector(h, s, M);
      if (f.rep == Rep::fourier) to_fourier_inplace(p);
      return p;
    });
    Trajectory part = duhamel_half_wave(Fs, t0, s, M);
    if (total.frames.empty())
      total = std::move(part);
    else
      for (std::size_t j = 0; j < total.frames.size(); ++j) total.frames[j] += part.frames[j];
  }
  return total;
}

}  // namespace dkg
