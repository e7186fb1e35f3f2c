#include "relax/snapshot_io.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "relax/fft.hpp"

namespace relax {

namespace {

constexpr std::uint32_t kVersion = 1;

void put_u32(std::ostream& os, std::uint32_t v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof v);
}
void put_f64(std::ostream& os, double v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof v);
}
std::uint32_t get_u32(std::istream& is) {
    std::uint32_t v = 0;
    is.read(reinterpret_cast<char*>(&v), sizeof v);
    return v;
}
double get_f64(std::istream& is) {
    double v = 0;
    is.read(reinterpret_cast<char*>(&v), sizeof v);
    return v;
}

} // namespace

void save_snapshot(const std::string& path, const SpectralField& u, double time,
                   bool physical) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("snapshot: cannot open " + path + " for writing");
    os.write("RLXF", 4);
    put_u32(os, kVersion);
    put_u32(os, static_cast<std::uint32_t>(u.grid.d));
    put_u32(os, static_cast<std::uint32_t>(u.grid.n));
    put_f64(os, u.grid.L);
    put_f64(os, time);
    put_u32(os, physical ? 1u : 0u);
    if (physical) {
        auto phys = inverse_transform(u);
        for (double v : phys) put_f64(os, v);
    } else {
        for (const auto& z : u.c) {
            put_f64(os, z.real());
            put_f64(os, z.imag());
        }
    }
    if (!os) throw std::runtime_error("snapshot: write failed for " + path);
}

Snapshot load_snapshot(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("snapshot: cannot open " + path);
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, "RLXF", 4) != 0)
        throw std::runtime_error("snapshot: bad magic in " + path);
    std::uint32_t version = get_u32(is);
    if (version != kVersion)
        throw std::runtime_error("snapshot: unsupported version in " + path);
    int d = static_cast<int>(get_u32(is));
    int n = static_cast<int>(get_u32(is));
    double L = get_f64(is);
    double time = get_f64(is);
    std::uint32_t rep = get_u32(is);

    Grid grid(d, n, L);
    Snapshot snap;
    snap.time = time;
    if (rep == 1) {
        std::vector<double> phys(grid.size());
        for (auto& v : phys) v = get_f64(is);
        if (!is) throw std::runtime_error("snapshot: truncated payload in " + path);
        snap.field = forward_transform(grid, phys);
    } else if (rep == 0) {
        snap.field = SpectralField(grid);
        for (auto& z : snap.field.c) {
            double re = get_f64(is);
            double im = get_f64(is);
            z = cplx(re, im);
        }
        if (!is) throw std::runtime_error("snapshot: truncated payload in " + path);
    } else {
        throw std::runtime_error("snapshot: unknown representation flag in " + path);
    }
    return snap;
}

} // namespace relax
