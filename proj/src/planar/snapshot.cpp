#include "conedecay/planar/snapshot.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "conedecay/error.hpp"

namespace conedecay::planar {

static_assert(std::endian::native == std::endian::little, "snapshot I/O assumes a little-endian host");

namespace {

constexpr char kMagic[4] = {'W', 'S', 'N', 'P'};
constexpr std::uint32_t kVersion = 1;

template <class T>
void put(std::ofstream& os, const T& v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <class T>
T get(std::ifstream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof v);
  if (!is) throw Error("snapshot truncated");
  return v;
}

}  // namespace

void write_snapshot(const std::filesystem::path& path, const PolarGrid2D& g, const PlanarState& s) {
  if (s.u.size() != g.node_count() || s.v.size() != g.node_count()) {
    throw ParameterError("snapshot: state size does not match the grid");
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot open snapshot file " + path.string());
  os.write(kMagic, 4);
  put(os, kVersion);
  put(os, static_cast<std::uint64_t>(g.n_r + 1));
  put(os, static_cast<std::uint64_t>(g.n_theta));
  put(os, s.t);
  put(os, g.r_min);
  put(os, g.r_max);
  os.write(reinterpret_cast<const char*>(s.u.data()), static_cast<std::streamsize>(s.u.size() * sizeof(double)));
  os.write(reinterpret_cast<const char*>(s.v.data()), static_cast<std::streamsize>(s.v.size() * sizeof(double)));
  if (!os) throw Error("failed writing snapshot " + path.string());
}

Snapshot read_snapshot(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("cannot open snapshot file " + path.string());
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, kMagic, 4) != 0) throw Error("not a snapshot file: " + path.string());
  if (get<std::uint32_t>(is) != kVersion) throw Error("unsupported snapshot version");
  Snapshot s;
  s.n_r_nodes = get<std::uint64_t>(is);
  s.n_theta = get<std::uint64_t>(is);
  s.t = get<double>(is);
  s.r_min = get<double>(is);
  s.r_max = get<double>(is);
  const std::size_t n = s.n_r_nodes * s.n_theta;
  s.u.resize(n);
  s.v.resize(n);
  is.read(reinterpret_cast<char*>(s.u.data()), static_cast<std::streamsize>(n * sizeof(double)));
  is.read(reinterpret_cast<char*>(s.v.data()), static_cast<std::streamsize>(n * sizeof(double)));
  if (!is) throw Error("snapshot truncated");
  return s;
}

}  // namespace conedecay::planar
