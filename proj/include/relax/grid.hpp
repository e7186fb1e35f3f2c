#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace relax {

// Periodic box [0,L)^d sampled on n points per axis. Wavenumbers are
// integer multiples of 2*pi/L; indices follow the usual FFT layout
// (k in [0, n/2] positive, (n/2, n) negative).
struct Grid {
    int d = 1;
    int n = 8;          // points per axis, power of two, >= 8
    double L = 2.0 * 3.14159265358979323846;

    Grid() = default;
    Grid(int d_, int n_, double L_) : d(d_), n(n_), L(L_) { validate(); }

    void validate() const {
        if (d < 1 || d > 3)
            throw std::invalid_argument("grid: d must be 1, 2 or 3");
        if (n < 8 || (n & (n - 1)) != 0)
            throw std::invalid_argument("grid: n_per_axis must be a power of two >= 8");
        if (!(L > 0.0))
            throw std::invalid_argument("grid: L must be positive");
    }

    std::size_t size() const {
        std::size_t s = 1;
        for (int i = 0; i < d; ++i) s *= static_cast<std::size_t>(n);
        return s;
    }

    double dx() const { return L / n; }
    double k_fund() const { return 2.0 * 3.14159265358979323846 / L; }
    double nyquist() const { return k_fund() * (n / 2); }

    // signed integer wavenumber of axis-index m
    int k_index(int m) const { return m <= n / 2 ? m : m - n; }

    // decompose a flat index into per-axis indices (row-major, axis 0 slowest)
    std::array<int, 3> unflatten(std::size_t idx) const {
        std::array<int, 3> m{0, 0, 0};
        for (int ax = d - 1; ax >= 0; --ax) {
            m[ax] = static_cast<int>(idx % n);
            idx /= n;
        }
        return m;
    }

    // wavevector xi of a flat spectral index
    std::array<double, 3> wavevector(std::size_t idx) const {
        auto m = unflatten(idx);
        std::array<double, 3> xi{0.0, 0.0, 0.0};
        for (int ax = 0; ax < d; ++ax) xi[ax] = k_fund() * k_index(m[ax]);
        return xi;
    }

    double xi_norm2(std::size_t idx) const {
        auto xi = wavevector(idx);
        double s = 0.0;
        for (int ax = 0; ax < d; ++ax) s += xi[ax] * xi[ax];
        return s;
    }

    bool operator==(const Grid& o) const { return d == o.d && n == o.n && L == o.L; }
    bool operator!=(const Grid& o) const { return !(*this == o); }
};

} // namespace relax
