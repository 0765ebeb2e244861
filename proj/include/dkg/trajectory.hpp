#pragma once

#include <functional>
#include <vector>

#include "dkg/field.hpp"

namespace dkg {

// Field sampled at t0 + j dt, j = 0..nt.
struct Trajectory {
  TimeGrid time;
  std::vector<Field> frames;

  Trajectory() = default;
  Trajectory(const TimeGrid& tg, std::vector<Field> f);

  const GridSpec& grid() const { return frames.front().grid; }
  int comps() const { return frames.front().comps; }
  std::size_t size() const { return frames.size(); }
  void validate() const;
};

struct Packet {
  double tau = 0.0;
  Vec3 xi{0, 0, 0};
  std::vector<cplx> v;
};

// Finite sum of v e^{i(xi.x + tau t)}. Modes are lattice points offset by the
// common carrier (zero for ordinary fields).
struct WavePacketSum {
  int comps = 1;
  Vec3 carrier{0, 0, 0};
  std::vector<Packet> packets;

  void add(double tau, const Vec3& xi, std::vector<cplx> v);
  WavePacketSum& operator+=(const WavePacketSum& o);
};

void check_on_lattice(const WavePacketSum& w, const GridSpec& g);
Field sample_wavepacket_at(const WavePacketSum& w, const GridSpec& g, double t);
Trajectory sample_wavepacket(const WavePacketSum& w, const GridSpec& g, const TimeGrid& tg);

// L^q_t L^r_x with trapezoid in t and Riemann sum in x; pass INFINITY for max.
double mixed_norm(const Trajectory& u, double q, double r);
// L^r_x norm of one frame (pointwise Euclidean norm over components).
double lebesgue_norm(const Field& f, double r);

Trajectory map_frames(const Trajectory& u, const std::function<Field(const Field&, double)>& fn);

}  // namespace dkg
