#include "relax/ops.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "relax/fft.hpp"

namespace relax {

VectorField gradient(const SpectralField& u) {
    VectorField g = make_vector_field(u.grid);
    const std::size_t n = u.size();
    for (std::size_t idx = 0; idx < n; ++idx) {
        auto xi = u.grid.wavevector(idx);
        const cplx z = u.c[idx];
        for (int ax = 0; ax < u.grid.d; ++ax)
            g[ax].c[idx] = cplx(0.0, xi[ax]) * z;
    }
    return g;
}

SpectralField divergence(const VectorField& v) {
    if (v.empty()) throw std::invalid_argument("divergence: empty vector field");
    SpectralField out(v[0].grid);
    const std::size_t n = out.size();
    for (std::size_t idx = 0; idx < n; ++idx) {
        auto xi = out.grid.wavevector(idx);
        cplx s(0.0, 0.0);
        for (int ax = 0; ax < out.grid.d; ++ax)
            s += cplx(0.0, xi[ax]) * v[ax].c[idx];
        out.c[idx] = s;
    }
    return out;
}

SpectralField laplacian(const SpectralField& u) {
    SpectralField out(u.grid);
    for (std::size_t idx = 0; idx < u.size(); ++idx)
        out.c[idx] = -u.grid.xi_norm2(idx) * u.c[idx];
    return out;
}

VectorField poisson_inverse_gradient(const SpectralField& u, double mean_tol) {
    if (std::abs(u.c[0]) > mean_tol)
        throw std::domain_error("poisson_inverse_gradient: input mean exceeds tolerance; "
                                "the potential is defined only for mean-free data");
    VectorField g = make_vector_field(u.grid);
    const std::size_t n = u.size();
    for (std::size_t idx = 1; idx < n; ++idx) {
        const double k2 = u.grid.xi_norm2(idx);
        auto xi = u.grid.wavevector(idx);
        const cplx vhat = u.c[idx] / k2;
        for (int ax = 0; ax < u.grid.d; ++ax)
            g[ax].c[idx] = cplx(0.0, xi[ax]) * vhat;
    }
    return g;
}

std::pair<VectorField, VectorField> helmholtz_project(const VectorField& v) {
    if (v.empty()) throw std::invalid_argument("helmholtz_project: empty vector field");
    const Grid& grid = v[0].grid;
    VectorField P = make_vector_field(grid);
    VectorField Q = make_vector_field(grid);
    const std::size_t n = grid.size();
    for (std::size_t idx = 0; idx < n; ++idx) {
        if (idx == 0) {
            for (int ax = 0; ax < grid.d; ++ax) P[ax].c[0] = v[ax].c[0];
            continue;
        }
        auto xi = grid.wavevector(idx);
        const double k2 = grid.xi_norm2(idx);
        cplx xidotv(0.0, 0.0);
        for (int ax = 0; ax < grid.d; ++ax) xidotv += xi[ax] * v[ax].c[idx];
        for (int ax = 0; ax < grid.d; ++ax) {
            const cplx q = xi[ax] * xidotv / k2;
            Q[ax].c[idx] = q;
            P[ax].c[idx] = v[ax].c[idx] - q;
        }
    }
    return {std::move(P), std::move(Q)};
}

double inner_l2(const SpectralField& u, const SpectralField& v) {
    u.check_same(v);
    double s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i)
        s += u.c[i].real() * v.c[i].real() + u.c[i].imag() * v.c[i].imag();
    return u.box_volume() * s;
}

double inner_l2(const VectorField& u, const VectorField& v) {
    if (u.size() != v.size()) throw std::invalid_argument("inner_l2: component mismatch");
    double s = 0.0;
    for (std::size_t ax = 0; ax < u.size(); ++ax) s += inner_l2(u[ax], v[ax]);
    return s;
}

double l2_norm(const VectorField& v) {
    double s = 0.0;
    for (const auto& comp : v)
        for (const auto& z : comp.c) s += std::norm(z);
    return v.empty() ? 0.0 : std::sqrt(v[0].box_volume() * s);
}

void dealias_23(SpectralField& u) {
    const int kmax = u.grid.n / 3;
    const std::size_t n = u.size();
    for (std::size_t idx = 0; idx < n; ++idx) {
        auto m = u.grid.unflatten(idx);
        for (int ax = 0; ax < u.grid.d; ++ax) {
            if (std::abs(u.grid.k_index(m[ax])) > kmax) {
                u.c[idx] = cplx(0.0, 0.0);
                break;
            }
        }
    }
}

namespace {
std::size_t conj_index(const Grid& g, std::size_t idx) {
    auto m = g.unflatten(idx);
    std::size_t out = 0;
    for (int ax = 0; ax < g.d; ++ax) {
        int mm = (g.n - m[ax]) % g.n;
        out = out * g.n + static_cast<std::size_t>(mm);
    }
    return out;
}
} // namespace

void hermitian_symmetrize(SpectralField& u) {
    const std::size_t n = u.size();
    for (std::size_t idx = 0; idx < n; ++idx) {
        std::size_t j = conj_index(u.grid, idx);
        if (j < idx) continue;
        if (j == idx) {
            u.c[idx] = cplx(u.c[idx].real(), 0.0);
        } else {
            cplx a = 0.5 * (u.c[idx] + std::conj(u.c[j]));
            u.c[idx] = a;
            u.c[j] = std::conj(a);
        }
    }
}

double hermitian_defect(const SpectralField& u) {
    double worst = 0.0;
    const std::size_t n = u.size();
    for (std::size_t idx = 0; idx < n; ++idx) {
        std::size_t j = conj_index(u.grid, idx);
        worst = std::max(worst, std::abs(u.c[idx] - std::conj(u.c[j])));
    }
    return worst;
}

double max_abs_phys(const SpectralField& u) {
    auto phys = inverse_transform_c(u);
    double m = 0.0;
    for (const auto& z : phys) m = std::max(m, std::abs(z));
    return m;
}

} // namespace relax
