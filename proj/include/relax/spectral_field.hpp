#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "relax/grid.hpp"

namespace relax {

using cplx = std::complex<double>;

// Fourier coefficients of a periodic field. Coefficient at flat index idx is
// the amplitude of exp(i xi.x) with xi = grid.wavevector(idx), i.e. the
// mean-type normalization: a constant field has only the k=0 entry.
struct SpectralField {
    Grid grid;
    std::vector<cplx> c;

    SpectralField() = default;
    explicit SpectralField(const Grid& g) : grid(g), c(g.size(), cplx(0.0, 0.0)) {}

    std::size_t size() const { return c.size(); }
    cplx& operator[](std::size_t i) { return c[i]; }
    const cplx& operator[](std::size_t i) const { return c[i]; }

    SpectralField& operator+=(const SpectralField& o) {
        check_same(o);
        for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.c[i];
        return *this;
    }
    SpectralField& operator-=(const SpectralField& o) {
        check_same(o);
        for (std::size_t i = 0; i < c.size(); ++i) c[i] -= o.c[i];
        return *this;
    }
    SpectralField& operator*=(double a) {
        for (auto& z : c) z *= a;
        return *this;
    }

    friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
    friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
    friend SpectralField operator*(double s, SpectralField a) { return a *= s; }

    cplx mean() const { return c[0]; }

    // L2 norm over the box under the weight making Parseval exact:
    // ||u||_{L2}^2 = L^d sum |u_hat|^2.
    double l2_norm() const {
        double s = 0.0;
        for (const auto& z : c) s += std::norm(z);
        return std::sqrt(box_volume() * s);
    }

    double box_volume() const {
        double v = 1.0;
        for (int i = 0; i < grid.d; ++i) v *= grid.L;
        return v;
    }

    void check_same(const SpectralField& o) const {
        if (grid != o.grid) throw std::invalid_argument("spectral field: grid mismatch");
    }
};

using VectorField = std::vector<SpectralField>; // d components

inline VectorField make_vector_field(const Grid& g) {
    return VectorField(static_cast<std::size_t>(g.d), SpectralField(g));
}

} // namespace relax
