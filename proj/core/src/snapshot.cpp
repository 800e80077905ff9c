#include "vmlimit/snapshot.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <memory>

#include "vmlimit/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "snapshot I/O writes native little-endian words");
static_assert(sizeof(double) == 8);

namespace vmlimit {

namespace {

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_or_throw(const std::string& path, const char* mode) {
  FilePtr f(std::fopen(path.c_str(), mode));
  if (!f) throw SnapshotError("cannot open '" + path + "'");
  return f;
}

void write_bytes(std::FILE* f, const void* p, size_t n, const std::string& path) {
  if (std::fwrite(p, 1, n, f) != n)
    throw SnapshotError("short write to '" + path + "'");
}

void read_bytes(std::FILE* f, void* p, size_t n, const std::string& path) {
  if (std::fread(p, 1, n, f) != n)
    throw SnapshotError("'" + path + "' is truncated");
}

void write_u32(std::FILE* f, std::uint32_t v, const std::string& path) {
  write_bytes(f, &v, sizeof v, path);
}

std::uint32_t read_u32(std::FILE* f, const std::string& path) {
  std::uint32_t v;
  read_bytes(f, &v, sizeof v, path);
  return v;
}

void write_f64(std::FILE* f, double v, const std::string& path) {
  write_bytes(f, &v, sizeof v, path);
}

double read_f64(std::FILE* f, const std::string& path) {
  double v;
  read_bytes(f, &v, sizeof v, path);
  return v;
}

void write_array(std::FILE* f, const std::vector<double>& a,
                 const std::string& path) {
  write_bytes(f, a.data(), a.size() * sizeof(double), path);
}

void read_array(std::FILE* f, std::vector<double>& a, size_t n,
                const std::string& path) {
  a.resize(n);
  read_bytes(f, a.data(), n * sizeof(double), path);
}

constexpr char kStateMagic[4] = {'V', 'M', 'L', '1'};
constexpr char kHistoryMagic[4] = {'V', 'M', 'H', '1'};

}  // namespace

SpeedOfLight SnapshotData::c() const {
  return std::isfinite(c_storage) ? SpeedOfLight::finite(c_storage)
                                  : SpeedOfLight::infinite();
}

void write_snapshot(const std::string& path, const SnapshotData& data) {
  FilePtr f = open_or_throw(path, "wb");
  write_bytes(f.get(), kStateMagic, 4, path);
  write_u32(f.get(), data.n_species, path);
  write_u32(f.get(), data.nx, path);
  write_u32(f.get(), data.np1, path);
  write_u32(f.get(), data.np2, path);
  write_f64(f.get(), data.c_storage, path);
  write_f64(f.get(), data.t, path);
  write_f64(f.get(), data.x_max, path);
  write_f64(f.get(), data.p1_max, path);
  write_f64(f.get(), data.p2_max, path);
  for (const auto& fs : data.f) write_array(f.get(), fs, path);
  write_array(f.get(), data.e1, path);
  write_array(f.get(), data.e2, path);
  write_array(f.get(), data.b, path);
  if (std::fflush(f.get()) != 0)
    throw SnapshotError("cannot flush '" + path + "'");
}

SnapshotData read_snapshot(const std::string& path) {
  FilePtr f = open_or_throw(path, "rb");
  char magic[4];
  read_bytes(f.get(), magic, 4, path);
  if (std::memcmp(magic, kStateMagic, 4) != 0)
    throw SnapshotError("'" + path + "' has the wrong magic (not a state file)");

  SnapshotData d;
  d.n_species = read_u32(f.get(), path);
  d.nx = read_u32(f.get(), path);
  d.np1 = read_u32(f.get(), path);
  d.np2 = read_u32(f.get(), path);
  if (d.n_species == 0 || d.n_species > 64 || d.nx == 0 || d.np1 == 0 ||
      d.np2 == 0 || d.nx > (1u << 24) || d.np1 > (1u << 16) ||
      d.np2 > (1u << 16))
    throw SnapshotError("'" + path + "' declares implausible dimensions");
  d.c_storage = read_f64(f.get(), path);
  d.t = read_f64(f.get(), path);
  d.x_max = read_f64(f.get(), path);
  d.p1_max = read_f64(f.get(), path);
  d.p2_max = read_f64(f.get(), path);

  size_t cells = static_cast<size_t>(d.nx) * d.np1 * d.np2;
  d.f.resize(d.n_species);
  for (auto& fs : d.f) read_array(f.get(), fs, cells, path);
  read_array(f.get(), d.e1, d.nx, path);
  read_array(f.get(), d.e2, d.nx, path);
  read_array(f.get(), d.b, d.nx, path);

  char extra;
  if (std::fread(&extra, 1, 1, f.get()) == 1)
    throw SnapshotError("'" + path + "' has trailing bytes beyond the declared shape");
  return d;
}

void require_shape(const SnapshotData& data, const PhaseSpaceGrid& grid,
                   int n_species) {
  if (static_cast<int>(data.n_species) != n_species ||
      static_cast<int>(data.nx) != grid.nx ||
      static_cast<int>(data.np1) != grid.np1 ||
      static_cast<int>(data.np2) != grid.np2 || data.x_max != grid.x_max ||
      data.p1_max != grid.p1_max || data.p2_max != grid.p2_max)
    throw SnapshotError(
        "snapshot dimensions do not match the configured grid");
}

void write_history(const std::string& path, const RunHistory& history,
                   SpeedOfLight c) {
  FilePtr f = open_or_throw(path, "wb");
  write_bytes(f.get(), kHistoryMagic, 4, path);
  write_u32(f.get(), static_cast<std::uint32_t>(history.grid.nx), path);
  write_u32(f.get(), static_cast<std::uint32_t>(history.records.size()), path);
  write_f64(f.get(), c.storage_value(), path);
  write_f64(f.get(), history.grid.x_max, path);
  for (const HistoryRecord& r : history.records) {
    write_f64(f.get(), r.time, path);
    write_array(f.get(), r.e1, path);
    write_array(f.get(), r.e2, path);
    write_array(f.get(), r.b, path);
    write_array(f.get(), r.rho, path);
    write_array(f.get(), r.j1, path);
    write_array(f.get(), r.j2, path);
    write_array(f.get(), r.eps_tilde, path);
    write_array(f.get(), r.mom_tilde, path);
    write_array(f.get(), r.kplus, path);
    write_array(f.get(), r.kminus, path);
  }
  if (std::fflush(f.get()) != 0)
    throw SnapshotError("cannot flush '" + path + "'");
}

RunHistory read_history(const std::string& path, SpeedOfLight& c_out) {
  FilePtr f = open_or_throw(path, "rb");
  char magic[4];
  read_bytes(f.get(), magic, 4, path);
  if (std::memcmp(magic, kHistoryMagic, 4) != 0)
    throw SnapshotError("'" + path + "' has the wrong magic (not a history file)");

  std::uint32_t nx = read_u32(f.get(), path);
  std::uint32_t nrec = read_u32(f.get(), path);
  if (nx == 0 || nx > (1u << 24) || nrec > (1u << 24))
    throw SnapshotError("'" + path + "' declares implausible dimensions");
  double c_storage = read_f64(f.get(), path);
  double x_max = read_f64(f.get(), path);
  c_out = std::isfinite(c_storage) ? SpeedOfLight::finite(c_storage)
                                   : SpeedOfLight::infinite();

  RunHistory h;
  // Only the spatial slice matters for stored records; momentum counts are
  // placeholders compatible with the grid type's invariants.
  h.grid = PhaseSpaceGrid::make(static_cast<int>(nx), 8, 8, x_max, 1.0, 1.0);
  h.records.resize(nrec);
  for (auto& r : h.records) {
    r.time = read_f64(f.get(), path);
    read_array(f.get(), r.e1, nx, path);
    read_array(f.get(), r.e2, nx, path);
    read_array(f.get(), r.b, nx, path);
    read_array(f.get(), r.rho, nx, path);
    read_array(f.get(), r.j1, nx, path);
    read_array(f.get(), r.j2, nx, path);
    read_array(f.get(), r.eps_tilde, nx, path);
    read_array(f.get(), r.mom_tilde, nx, path);
    read_array(f.get(), r.kplus, nx, path);
    read_array(f.get(), r.kminus, nx, path);
  }
  return h;
}

}  // namespace vmlimit
