#include "dkg/snapshot.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <json.hpp>

namespace dkg {

namespace {

constexpr std::uint32_t kVersion = 1;

static_assert(std::endian::native == std::endian::little, "snapshot I/O assumes a little-endian host");

template <class T>
void put(std::ostream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::istream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) throw std::runtime_error("snapshot: truncated file");
  return v;
}

}  // namespace

void write_snapshot(const std::string& path, const Field& f0, std::optional<TimeGrid> tg, double t) {
  Field f = f0.rep == Rep::physical ? f0 : to_physical(f0);
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("snapshot: cannot open " + path);
  os.write("DKGF", 4);
  put<std::uint32_t>(os, kVersion);
  put<std::uint32_t>(os, std::uint32_t(f.grid.n));
  put<std::uint32_t>(os, std::uint32_t(f.comps));
  put<double>(os, f.grid.L);
  put<std::uint64_t>(os, 0);
  for (const cplx& z : f.data) {
    put<double>(os, z.real());
    put<double>(os, z.imag());
  }
  nlohmann::json j;
  j["format"] = "DKGF";
  j["version"] = kVersion;
  j["grid"] = {{"n", f.grid.n}, {"L", f.grid.L}, {"h", f.grid.h()}, {"nyquist", f.grid.nyquist()}};
  j["components"] = f.comps;
  j["carrier"] = f.carrier;
  j["t"] = t;
  if (tg) j["timegrid"] = {{"t0", tg->t0}, {"dt", tg->dt}, {"nt", tg->nt}};
  std::ofstream js(path + ".json");
  js << j.dump(2) << "\n";
}

Field read_snapshot(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("snapshot: cannot open " + path);
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, "DKGF", 4) != 0) throw std::runtime_error("snapshot: bad magic");
  auto version = get<std::uint32_t>(is);
  if (version != kVersion) throw std::runtime_error("snapshot: unsupported version");
  auto n = get<std::uint32_t>(is);
  auto comps = get<std::uint32_t>(is);
  auto L = get<double>(is);
  get<std::uint64_t>(is);
  Field f(GridSpec(int(n), L), int(comps));
  for (auto& z : f.data) {
    double re = get<double>(is);
    double im = get<double>(is);
    z = cplx(re, im);
  }
  std::ifstream js(path + ".json");
  if (js) {
    auto j = nlohmann::json::parse(js, nullptr, false);
    if (!j.is_discarded() && j.contains("carrier")) f.carrier = j["carrier"].get<Vec3>();
  }
  return f;
}

}  // namespace dkg
