#include "dkg/trajectory.hpp"

#include <cmath>
#include <limits>

#include "dkg/kernels.hpp"

namespace dkg {

Trajectory::Trajectory(const TimeGrid& tg, std::vector<Field> f) : time(tg), frames(std::move(f)) { validate(); }

void Trajectory::validate() const {
  if (frames.empty()) throw UsageError("Trajectory: no frames");
  if (int(frames.size()) != time.samples()) throw UsageError("Trajectory: frame count must equal nt + 1");
  for (const auto& f : frames) {
    if (f.grid != frames.front().grid || f.comps != frames.front().comps)
      throw UsageError("Trajectory: frames disagree on grid or components");
  }
}

void WavePacketSum::add(double tau, const Vec3& xi, std::vector<cplx> v) {
  if (int(v.size()) != comps) throw UsageError("WavePacketSum: amplitude size mismatch");
  packets.push_back({tau, xi, std::move(v)});
}

WavePacketSum& WavePacketSum::operator+=(const WavePacketSum& o) {
  if (o.comps != comps || o.carrier != carrier) throw UsageError("WavePacketSum: incompatible sums");
  packets.insert(packets.end(), o.packets.begin(), o.packets.end());
  return *this;
}

void check_on_lattice(const WavePacketSum& w, const GridSpec& g) {
  for (const auto& p : w.packets)
    if (!g.on_lattice(p.xi - w.carrier)) throw UsageError("WavePacketSum: off-lattice mode");
}

Field sample_wavepacket_at(const WavePacketSum& w, const GridSpec& g, double t) {
  check_on_lattice(w, g);
  Field f(g, w.comps, Rep::fourier);
  f.carrier = w.carrier;
  for (const auto& p : w.packets) {
    std::array<int, 3> k{};
    g.on_lattice(p.xi - w.carrier, &k);
    std::size_t idx = g.index(g.slot(k[0]), g.slot(k[1]), g.slot(k[2]));
    cplx e = std::polar(1.0, p.tau * t);
    for (int c = 0; c < w.comps; ++c) f.comp(c)[idx] += p.v[c] * e;
  }
  to_physical_inplace(f);
  return f;
}

Trajectory sample_wavepacket(const WavePacketSum& w, const GridSpec& g, const TimeGrid& tg) {
  std::vector<Field> frames;
  frames.reserve(tg.samples());
  for (int j = 0; j < tg.samples(); ++j) frames.push_back(sample_wavepacket_at(w, g, tg.time(j)));
  return Trajectory(tg, std::move(frames));
}

double lebesgue_norm(const Field& f, double r) {
  if (f.rep != Rep::physical) throw UsageError("lebesgue_norm: physical representation required");
  if (std::isinf(r)) return kernels::max_pointwise_abs(f.data.data(), f.nodes(), f.comps);
  double s = kernels::sum_pointwise_pow(f.data.data(), f.nodes(), f.comps, r);
  return std::pow(s * f.grid.cell(), 1.0 / r);
}

double mixed_norm(const Trajectory& u, double q, double r) {
  if (u.frames.empty()) throw UsageError("mixed_norm: empty trajectory");
  if (q < 1 || r < 1) throw UsageError("mixed_norm: exponents must be >= 1");
  double acc = 0.0;
  for (int j = 0; j < int(u.frames.size()); ++j) {
    double v = lebesgue_norm(u.frames[j], r);
    if (std::isinf(q))
      acc = std::max(acc, v);
    else
      acc += u.time.weight(j) * std::pow(v, q);
  }
  return std::isinf(q) ? acc : std::pow(acc, 1.0 / q);
}

Trajectory map_frames(const Trajectory& u, const std::function<Field(const Field&, double)>& fn) {
  std::vector<Field> out;
  out.reserve(u.frames.size());
  for (int j = 0; j < int(u.frames.size()); ++j) out.push_back(fn(u.frames[j], u.time.time(j)));
  return Trajectory(u.time, std::move(out));
}

}  // namespace dkg
