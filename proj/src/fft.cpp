#include "relax/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace relax {

namespace {

// fftw plans keyed by (d, n, sign); plan creation is not thread safe, so the
// cache is guarded. Execution via fftw_execute_dft on distinct buffers is safe.
struct PlanCache {
    std::mutex mu;
    std::map<std::tuple<int, int, int>, fftw_plan> plans;

    fftw_plan get(int d, int n, int sign) {
        std::lock_guard<std::mutex> lock(mu);
        auto key = std::make_tuple(d, n, sign);
        auto it = plans.find(key);
        if (it != plans.end()) return it->second;

        std::size_t total = 1;
        std::vector<int> dims(d, n);
        for (int i = 0; i < d; ++i) total *= static_cast<std::size_t>(n);
        // scratch buffer only for planning; FFTW_ESTIMATE leaves it untouched
        std::vector<fftw_complex> buf(total);
        fftw_plan p = fftw_plan_dft(d, dims.data(), buf.data(), buf.data(),
                                    sign, FFTW_ESTIMATE);
        if (!p) throw std::runtime_error("fftw plan creation failed");
        plans.emplace(key, p);
        return p;
    }
};

PlanCache& cache() {
    static PlanCache c;
    return c;
}

} // namespace

SpectralField forward_transform_c(const Grid& grid, const std::vector<cplx>& u_phys) {
    grid.validate();
    if (u_phys.size() != grid.size())
        throw std::invalid_argument("forward_transform: sample count does not match grid");
    SpectralField out(grid);
    std::vector<cplx> buf(u_phys);
    fftw_plan p = cache().get(grid.d, grid.n, FFTW_FORWARD);
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(buf.data()),
                     reinterpret_cast<fftw_complex*>(out.c.data()));
    const double scale = 1.0 / static_cast<double>(grid.size());
    for (auto& z : out.c) z *= scale;
    return out;
}

SpectralField forward_transform(const Grid& grid, const std::vector<double>& u_phys) {
    if (u_phys.size() != grid.size())
        throw std::invalid_argument("forward_transform: sample count does not match grid");
    std::vector<cplx> tmp(u_phys.begin(), u_phys.end());
    return forward_transform_c(grid, tmp);
}

std::vector<cplx> inverse_transform_c(const SpectralField& u) {
    std::vector<cplx> out(u.c);
    fftw_plan p = cache().get(u.grid.d, u.grid.n, FFTW_BACKWARD);
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(out.data()),
                     reinterpret_cast<fftw_complex*>(out.data()));
    return out;
}

std::vector<double> inverse_transform(const SpectralField& u) {
    auto z = inverse_transform_c(u);
    std::vector<double> out(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) out[i] = z[i].real();
    return out;
}

} // namespace relax
