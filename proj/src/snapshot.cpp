#include "blgl/snapshot.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <memory>
#include <vector>

#include "blgl/errors.hpp"

namespace blgl {

namespace {

constexpr char kMagic[4] = {'B', 'L', 'G', 'L'};

// Header and payload are written through byte buffers so the on-disk layout
// is independent of struct padding. Host is assumed little-endian (checked).
bool host_little_endian() {
    std::uint32_t x = 1;
    char c;
    std::memcpy(&c, &x, 1);
    return c == 1;
}

template <typename T>
void put(std::vector<char>& buf, T v) {
    char tmp[sizeof(T)];
    std::memcpy(tmp, &v, sizeof(T));
    buf.insert(buf.end(), tmp, tmp + sizeof(T));
}

template <typename T>
T get(const std::vector<char>& buf, size_t& off) {
    T v;
    std::memcpy(&v, buf.data() + off, sizeof(T));
    off += sizeof(T);
    return v;
}

}  // namespace

void write_snapshot(const std::string& path, const SpectralField& f, double t) {
    if (!host_little_endian()) throw FormatError("snapshot: little-endian host required");
    const Grid& g = f.grid();
    std::vector<char> buf;
    buf.insert(buf.end(), kMagic, kMagic + 4);
    put<std::uint32_t>(buf, kSnapshotVersion);
    put<std::int64_t>(buf, g.K);
    put<std::int64_t>(buf, g.J);
    put<double>(buf, g.Ly);
    put<double>(buf, g.stretch);
    put<double>(buf, t);
    for (const cd& c : f.raw()) {
        put<double>(buf, c.real());
        put<double>(buf, c.imag());
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw FormatError("snapshot: cannot open " + path + " for writing");
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!out) throw FormatError("snapshot: short write to " + path);
}

std::pair<SpectralField, double> read_snapshot(const std::string& path) {
    if (!host_little_endian()) throw FormatError("snapshot: little-endian host required");
    std::ifstream in(path, std::ios::binary | std::ios::ate);
    if (!in) throw FormatError("snapshot: cannot open " + path);
    const auto size = static_cast<size_t>(in.tellg());
    in.seekg(0);

    constexpr size_t header = 4 + 4 + 8 + 8 + 8 + 8 + 8;
    if (size < header) throw TruncationError("snapshot: file shorter than header");
    std::vector<char> buf(size);
    in.read(buf.data(), static_cast<std::streamsize>(size));
    if (!in) throw TruncationError("snapshot: short read");

    size_t off = 0;
    if (std::memcmp(buf.data(), kMagic, 4) != 0)
        throw FormatError("snapshot: bad magic bytes");
    off += 4;
    auto version = get<std::uint32_t>(buf, off);
    if (version != kSnapshotVersion)
        throw VersionError("snapshot: unsupported format version " + std::to_string(version));
    auto K = get<std::int64_t>(buf, off);
    auto J = get<std::int64_t>(buf, off);
    auto Ly = get<double>(buf, off);
    auto stretch = get<double>(buf, off);
    auto t = get<double>(buf, off);
    if (K < 1 || J < 2) throw FormatError("snapshot: invalid grid descriptor");

    const size_t n = static_cast<size_t>(2 * K + 1) * static_cast<size_t>(J);
    if (size != header + n * 16) throw TruncationError("snapshot: payload size mismatch");

    auto grid = std::make_shared<const Grid>(
        detail::build_grid(static_cast<int>(K), static_cast<int>(J), Ly, stretch));
    SpectralField f(grid);
    for (cd& c : f.raw()) {
        double re = get<double>(buf, off);
        double im = get<double>(buf, off);
        c = cd{re, im};
    }
    return {std::move(f), t};
}

}  // namespace blgl
