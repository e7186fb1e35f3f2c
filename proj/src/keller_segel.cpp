#include "relax/keller_segel.hpp"

#include <cmath>
#include <limits>

#include "relax/fft.hpp"
#include "relax/ops.hpp"

namespace relax {

namespace {

double phi1(double z) {
    if (std::abs(z) < 1e-6) return 1.0 + 0.5 * z + z * z / 6.0;
    return std::expm1(z) / z;
}

double phi2(double z) {
    if (std::abs(z) < 1e-4) return 0.5 + z / 6.0 + z * z / 24.0;
    return (std::expm1(z) - z) / (z * z);
}

} // namespace

SpectralField ks_rhs(const KSState& s, const ModelParams& p) {
    p.validate();
    const Grid& g = s.n_pert.grid;
    const int d = g.d;

    std::vector<double> np = inverse_transform(s.n_pert);
    std::vector<double> N(np.size());
    for (std::size_t i = 0; i < np.size(); ++i) {
        N[i] = p.rho_bar + np[i];
        if (!(N[i] > 0.0)) throw VacuumError("ks_rhs: nonpositive density sample");
    }

    SpectralField Pn = forward_transform(g, pressure(N, p));
    Pn.c[0] = cplx(0.0, 0.0); // constants drop under the laplacian anyway
    dealias_23(Pn);
    SpectralField out = laplacian(Pn);

    VectorField gV = poisson_inverse_gradient(s.n_pert, 1e-8);
    VectorField flux = make_vector_field(g);
    for (int ax = 0; ax < d; ++ax) {
        std::vector<double> gv = inverse_transform(gV[ax]);
        for (std::size_t i = 0; i < gv.size(); ++i) gv[i] *= N[i];
        flux[ax] = forward_transform(g, gv);
        dealias_23(flux[ax]);
    }
    out += divergence(flux);
    out.c[0] = cplx(0.0, 0.0);
    return out;
}

KSStepper::KSStepper(const Grid& grid, const ModelParams& params)
    : grid_(grid), params_(params) {
    grid_.validate();
    params_.validate();
}

void KSStepper::set_dt(double dt) {
    if (!(dt > 0.0)) throw StepSizeError("ks_step: dt must be positive");
    if (dt == dt_) return;
    dt_ = dt;
    const std::size_t n = grid_.size();
    E_.assign(n, 1.0);
    P1_.assign(n, dt);
    P2_.assign(n, 0.5 * dt);
    const double pp = params_.P_prime_bar();
    for (std::size_t idx = 1; idx < n; ++idx) {
        const double lam = pp * grid_.xi_norm2(idx) + params_.rho_bar;
        const double z = -dt * lam;
        E_[idx] = std::exp(z);
        P1_[idx] = dt * phi1(z);
        P2_[idx] = dt * phi2(z);
    }
}

SpectralField KSStepper::nonlinear(const KSState& s) const {
    const Grid& g = grid_;
    const int d = g.d;
    const double pp = params_.P_prime_bar();

    std::vector<double> np = inverse_transform(s.n_pert);
    const double Pbar = params_.A * std::pow(params_.rho_bar, params_.gamma);
    std::vector<double> gval(np.size());
    double nmin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < np.size(); ++i) {
        const double N = params_.rho_bar + np[i];
        nmin = std::min(nmin, N);
        if (!(N > 0.0)) throw VacuumError("ks_step: nonpositive density sample");
        gval[i] = params_.A * std::pow(N, params_.gamma) - Pbar - pp * np[i];
    }
    if (nmin < 0.1 * params_.rho_bar)
        throw VacuumError("ks_step: density fell below the vacuum guard 0.1 rho_bar (min = " +
                          std::to_string(nmin) + ")");

    SpectralField gs = forward_transform(g, gval);
    dealias_23(gs);
    SpectralField out = laplacian(gs);

    // div(N' grad V); the rho_bar part is in the linear propagator
    VectorField gV = poisson_inverse_gradient(s.n_pert, 1e-8);
    VectorField flux = make_vector_field(g);
    for (int ax = 0; ax < d; ++ax) {
        std::vector<double> gv = inverse_transform(gV[ax]);
        for (std::size_t i = 0; i < gv.size(); ++i) gv[i] *= np[i];
        flux[ax] = forward_transform(g, gv);
        dealias_23(flux[ax]);
    }
    out += divergence(flux);
    out.c[0] = cplx(0.0, 0.0);
    return out;
}

void KSStepper::step(KSState& s) {
    if (dt_ <= 0.0) throw StepSizeError("ks_step: set_dt must be called first");
    if (s.n_pert.grid != grid_) throw std::invalid_argument("ks_step: state grid mismatch");

    SpectralField n0 = nonlinear(s);
    KSState a = s;
    for (std::size_t i = 0; i < s.n_pert.size(); ++i)
        a.n_pert.c[i] = E_[i] * s.n_pert.c[i] + P1_[i] * n0.c[i];
    a.n_pert.c[0] = s.n_pert.c[0];

    SpectralField na = nonlinear(a);
    for (std::size_t i = 0; i < s.n_pert.size(); ++i)
        s.n_pert.c[i] = a.n_pert.c[i] + P2_[i] * (na.c[i] - n0.c[i]);
    s.time += dt_;
    hermitian_symmetrize(s.n_pert);

    for (const auto& zc : s.n_pert.c)
        if (!std::isfinite(zc.real()) || !std::isfinite(zc.imag()))
            throw BlowUpError("ks_step: NaN/Inf at t = " + std::to_string(s.time));
}

double KSStepper::min_density(const KSState& s) const {
    auto np = inverse_transform(s.n_pert);
    double m = std::numeric_limits<double>::infinity();
    for (double x : np) m = std::min(m, params_.rho_bar + x);
    return m;
}

KSAprioriReport ks_apriori_functional(const std::vector<KSState>& trajectory,
                                      const DyadicPartition& partition) {
    KSAprioriReport rep;
    if (trajectory.empty()) return rep;
    const double sd2 = 0.5 * trajectory[0].n_pert.grid.d;

    double prev_t = 0.0, prev_hi = 0.0;
    bool first = true;
    for (const auto& s : trajectory) {
        const double low = besov_norm(s.n_pert, sd2 - 1.0, Regime::Full, partition) +
                           besov_norm(s.n_pert, sd2, Regime::Full, partition);
        const double hi = besov_norm(s.n_pert, sd2 + 2.0, Regime::Full, partition) +
                          besov_norm(s.n_pert, sd2 + 1.0, Regime::Full, partition);
        rep.sup_low = std::max(rep.sup_low, low);
        if (first) {
            rep.initial = low;
        } else {
            rep.int_high += 0.5 * (s.time - prev_t) * (prev_hi + hi);
        }
        prev_hi = hi;
        prev_t = s.time;
        first = false;
    }
    if (rep.initial > 0.0) {
        rep.ratio = (rep.sup_low + rep.int_high) / rep.initial;
        rep.ratio_defined = true;
    }
    return rep;
}

} // namespace relax
