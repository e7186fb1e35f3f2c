#include "relax/init.hpp"

#include <cmath>
#include <stdexcept>

#include "relax/fft.hpp"
#include "relax/ops.hpp"
#include "relax/rng.hpp"

namespace relax {

SpectralField make_gaussian(const Grid& grid, double amp, double cx, double cy,
                            double cz, double sigma_frac) {
    grid.validate();
    const double sigma = sigma_frac * grid.L;
    const double c[3] = {cx * grid.L, cy * grid.L, cz * grid.L};
    std::vector<double> u(grid.size());
    for (std::size_t idx = 0; idx < u.size(); ++idx) {
        auto m = grid.unflatten(idx);
        double r2 = 0.0;
        for (int ax = 0; ax < grid.d; ++ax) {
            // nearest periodic image
            double dxv = std::fmod(m[ax] * grid.dx() - c[ax] + 1.5 * grid.L, grid.L) - 0.5 * grid.L;
            r2 += dxv * dxv;
        }
        u[idx] = amp * std::exp(-r2 / (2.0 * sigma * sigma));
    }
    SpectralField f = forward_transform(grid, u);
    f.c[0] = cplx(0.0, 0.0);
    dealias_23(f);
    hermitian_symmetrize(f);
    return f;
}

SpectralField make_single_mode(const Grid& grid, double amp, int kx, int ky, int kz) {
    grid.validate();
    const int k[3] = {kx, ky, kz};
    std::vector<double> u(grid.size());
    const double kf = grid.k_fund();
    for (std::size_t idx = 0; idx < u.size(); ++idx) {
        auto m = grid.unflatten(idx);
        double phase = 0.0;
        for (int ax = 0; ax < grid.d; ++ax)
            phase += kf * k[ax] * (m[ax] * grid.dx());
        u[idx] = amp * std::cos(phase);
    }
    SpectralField f = forward_transform(grid, u);
    f.c[0] = cplx(0.0, 0.0);
    hermitian_symmetrize(f);
    return f;
}

SpectralField make_random_band(const Grid& grid, double amp, double klo, double khi,
                               std::uint64_t seed) {
    grid.validate();
    if (!(klo >= 0.0 && khi > klo))
        throw std::invalid_argument("make_random_band: need 0 <= klo < khi");
    SpectralField f(grid);
    bool any = false;
    for (std::size_t idx = 1; idx < f.size(); ++idx) {
        const double k = std::sqrt(grid.xi_norm2(idx));
        if (k < klo || k > khi) continue;
        any = true;
        f.c[idx] = cplx(keyed_symmetric(seed, 2 * idx), keyed_symmetric(seed, 2 * idx + 1));
    }
    if (!any)
        throw std::invalid_argument("make_random_band: no resolved modes in [klo, khi]");
    hermitian_symmetrize(f);
    dealias_23(f);
    const double peak = max_abs_phys(f);
    if (peak > 0.0) f *= amp / peak;
    return f;
}

} // namespace relax
