#include "relax/euler_poisson.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <limits>

#include "relax/fft.hpp"

namespace relax {

namespace {

// enthalpy h with grad P(rho)/rho = grad h(rho); h'(rho_bar) = P'(rho_bar)/rho_bar
double enthalpy(double rho, const ModelParams& p) {
    return p.A * p.gamma / (p.gamma - 1.0) * std::pow(rho, p.gamma - 1.0);
}

double pair_besov(const SpectralField& rho, const VectorField& v, double s,
                  Regime regime, const DyadicPartition& part) {
    double total = 0.0;
    for (int j = part.j_min; j <= part.j_max; ++j) {
        if (!part.in_regime(j, regime)) continue;
        double b2 = 0.0;
        double b = block_l2(rho, j, part);
        b2 += b * b;
        for (const auto& comp : v) {
            b = block_l2(comp, j, part);
            b2 += b * b;
        }
        total += std::pow(2.0, j * s) * std::sqrt(b2);
    }
    return total;
}

} // namespace

std::vector<double> pressure(const std::vector<double>& rho_phys, const ModelParams& p) {
    p.validate();
    std::vector<double> out(rho_phys.size());
    for (std::size_t i = 0; i < rho_phys.size(); ++i) {
        if (!(rho_phys[i] > 0.0))
            throw VacuumError("pressure: nonpositive density sample");
        out[i] = p.A * std::pow(rho_phys[i], p.gamma);
    }
    return out;
}

std::vector<double> makino_transform(const std::vector<double>& rho_phys, const ModelParams& p) {
    p.validate();
    const double coef = std::sqrt(p.gamma * p.A) / p.gamma_tilde();
    std::vector<double> out(rho_phys.size());
    for (std::size_t i = 0; i < rho_phys.size(); ++i) {
        if (!(rho_phys[i] > 0.0))
            throw VacuumError("makino_transform: nonpositive density sample");
        out[i] = coef * std::pow(rho_phys[i], p.gamma_tilde());
    }
    return out;
}

std::vector<double> makino_inverse(const std::vector<double>& c_phys, const ModelParams& p) {
    p.validate();
    const double coef = std::sqrt(p.gamma * p.A) / p.gamma_tilde();
    std::vector<double> out(c_phys.size());
    for (std::size_t i = 0; i < c_phys.size(); ++i) {
        if (!(c_phys[i] > 0.0))
            throw VacuumError("makino_inverse: nonpositive input sample");
        out[i] = std::pow(c_phys[i] / coef, 1.0 / p.gamma_tilde());
    }
    return out;
}

std::pair<SpectralField, VectorField> rhs(const FlowState& s, const ModelParams& p) {
    p.validate();
    const Grid& g = s.rho_pert.grid;
    const int d = g.d;
    // frame-dependent weights on the stiff terms
    const double damp = s.frame == Frame::Rescaled ? 1.0 / (p.eps * p.eps) : 1.0 / p.eps;
    const double pcoef = s.frame == Frame::Rescaled ? 1.0 / (p.eps * p.eps) : 1.0;

    const std::vector<double> rp = inverse_transform(s.rho_pert);
    std::vector<std::vector<double>> vp(d);
    for (int ax = 0; ax < d; ++ax) vp[ax] = inverse_transform(s.v[ax]);

    // density tendency: -div(rho v) = -rho_bar div v - div(rho' v)
    VectorField flux = make_vector_field(g);
    for (int ax = 0; ax < d; ++ax) {
        std::vector<double> prod(rp.size());
        for (std::size_t i = 0; i < rp.size(); ++i)
            prod[i] = (p.rho_bar + rp[i]) * vp[ax][i];
        flux[ax] = forward_transform(g, prod);
        dealias_23(flux[ax]);
    }
    SpectralField drho = divergence(flux);
    drho *= -1.0;
    drho.c[0] = cplx(0.0, 0.0);

    // velocity tendency
    VectorField dv = make_vector_field(g);
    // transport term
    for (int ax = 0; ax < d; ++ax) {
        std::vector<double> acc(rp.size(), 0.0);
        VectorField grad_vax = gradient(s.v[ax]);
        for (int b = 0; b < d; ++b) {
            std::vector<double> gb = inverse_transform(grad_vax[b]);
            for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += vp[b][i] * gb[i];
        }
        dv[ax] = forward_transform(g, acc);
        dealias_23(dv[ax]);
        dv[ax] *= -1.0;
    }
    // pressure gradient via the enthalpy form grad P(rho)/rho = grad h(rho)
    std::vector<double> hval(rp.size());
    const double h_bar = enthalpy(p.rho_bar, p);
    for (std::size_t i = 0; i < rp.size(); ++i) {
        const double rho = p.rho_bar + rp[i];
        if (!(rho > 0.0)) throw VacuumError("rhs: nonpositive density sample");
        hval[i] = enthalpy(rho, p) - h_bar;
    }
    SpectralField hspec = forward_transform(g, hval);
    dealias_23(hspec);
    VectorField gh = gradient(hspec);
    VectorField pois = poisson_inverse_gradient(s.rho_pert, 1e-8);
    for (int ax = 0; ax < d; ++ax) {
        for (std::size_t i = 0; i < dv[ax].size(); ++i)
            dv[ax].c[i] -= pcoef * (gh[ax].c[i] + pois[ax].c[i]) + damp * s.v[ax].c[i];
    }
    return {std::move(drho), std::move(dv)};
}

VectorField damped_mode(const FlowState& s, const ModelParams& p) {
    p.validate();
    const Grid& g = s.rho_pert.grid;
    const int d = g.d;
    const double w_eps = s.frame == Frame::Rescaled ? 1.0 : p.eps;

    std::vector<double> rp = inverse_transform(s.rho_pert);
    std::vector<double> rho(rp.size());
    for (std::size_t i = 0; i < rp.size(); ++i) {
        rho[i] = p.rho_bar + rp[i];
        if (!(rho[i] > 0.0)) throw VacuumError("damped_mode: nonpositive density sample");
    }
    SpectralField P = forward_transform(g, pressure(rho, p));
    VectorField gP = gradient(P);
    VectorField pois = poisson_inverse_gradient(s.rho_pert, 1e-8);

    VectorField W = make_vector_field(g);
    for (int ax = 0; ax < d; ++ax) {
        std::vector<double> gp_phys = inverse_transform(gP[ax]);
        for (std::size_t i = 0; i < gp_phys.size(); ++i) gp_phys[i] /= rho[i];
        W[ax] = forward_transform(g, gp_phys);
        dealias_23(W[ax]);
        for (std::size_t i = 0; i < W[ax].size(); ++i)
            W[ax].c[i] = w_eps * (W[ax].c[i] + pois[ax].c[i]) + s.v[ax].c[i];
    }
    return W;
}

EPStepper::EPStepper(const Grid& grid, const ModelParams& params, Frame frame)
    : grid_(grid), params_(params), frame_(frame) {
    grid_.validate();
    params_.validate();
}

void EPStepper::set_dt(double dt) {
    if (!(dt > 0.0)) throw StepSizeError("step: dt must be positive");
    if (dt > 0.5) throw StepSizeError("step: dt exceeds the 0.5 cap");
    if (dt == dt_) return;
    dt_ = dt;

    const int d = grid_.d;
    const int m = d + 1;
    const std::size_t nmodes = grid_.size();
    E_.assign(nmodes, Eigen::MatrixXcd());
    P1_.assign(nmodes, Eigen::MatrixXcd());
    P2_.assign(nmodes, Eigen::MatrixXcd());

    const double hp_bar = params_.P_prime_bar() / params_.rho_bar;
    const double damp = frame_ == Frame::Rescaled ? 1.0 / (params_.eps * params_.eps)
                                                  : 1.0 / params_.eps;
    const double pcoef = frame_ == Frame::Rescaled ? 1.0 / (params_.eps * params_.eps) : 1.0;
    const cplx iu(0.0, 1.0);

    for (std::size_t idx = 0; idx < nmodes; ++idx) {
        Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(m, m);
        const double k2 = grid_.xi_norm2(idx);
        auto xi = grid_.wavevector(idx);
        for (int a = 0; a < d; ++a) {
            M(1 + a, 1 + a) = damp;
            if (idx != 0) {
                M(0, 1 + a) = iu * params_.rho_bar * xi[a];
                M(1 + a, 0) = iu * pcoef * (hp_bar + 1.0 / k2) * xi[a];
            }
        }
        // augmented exponential yields exp(Z), phi1(Z), phi2(Z) in the top row
        Eigen::MatrixXcd W = Eigen::MatrixXcd::Zero(3 * m, 3 * m);
        W.topLeftCorner(m, m) = (-dt) * M;
        for (int i = 0; i < m; ++i) {
            W(i, m + i) = 1.0;
            W(m + i, 2 * m + i) = 1.0;
        }
        Eigen::MatrixXcd Wexp = W.exp();
        E_[idx] = Wexp.topLeftCorner(m, m);
        P1_[idx] = dt * Wexp.block(0, m, m, m);
        P2_[idx] = dt * Wexp.block(0, 2 * m, m, m);
    }
}

std::pair<SpectralField, VectorField> EPStepper::nonlinear(const FlowState& s) const {
    const Grid& g = grid_;
    const int d = g.d;
    const double pcoef = frame_ == Frame::Rescaled ? 1.0 / (params_.eps * params_.eps) : 1.0;

    const std::vector<double> rp = inverse_transform(s.rho_pert);
    double rho_min = std::numeric_limits<double>::infinity();
    for (double r : rp) rho_min = std::min(rho_min, params_.rho_bar + r);
    if (rho_min < 0.1 * params_.rho_bar)
        throw VacuumError("step: density fell below the vacuum guard 0.1 rho_bar (min = " +
                          std::to_string(rho_min) + ")");

    std::vector<std::vector<double>> vp(d);
    double vmax = 0.0;
    for (int ax = 0; ax < d; ++ax) {
        vp[ax] = inverse_transform(s.v[ax]);
        for (double x : vp[ax]) vmax = std::max(vmax, std::abs(x));
    }
    if (vmax > 0.0 && dt_ > 0.5 * g.dx() / vmax)
        throw StepSizeError("step: dt violates the CFL limit 0.5 dx / max|v|");

    // N_rho = -div(rho' v)
    VectorField flux = make_vector_field(g);
    for (int ax = 0; ax < d; ++ax) {
        std::vector<double> prod(rp.size());
        for (std::size_t i = 0; i < rp.size(); ++i) prod[i] = rp[i] * vp[ax][i];
        flux[ax] = forward_transform(g, prod);
        dealias_23(flux[ax]);
    }
    SpectralField nr = divergence(flux);
    nr *= -1.0;
    nr.c[0] = cplx(0.0, 0.0);

    // N_v = -(v.grad)v - pcoef * grad[h(rho) - h(rho_bar) - h'(rho_bar) rho']
    VectorField nv = make_vector_field(g);
    for (int ax = 0; ax < d; ++ax) {
        std::vector<double> acc(rp.size(), 0.0);
        VectorField grad_vax = gradient(s.v[ax]);
        for (int b = 0; b < d; ++b) {
            std::vector<double> gb = inverse_transform(grad_vax[b]);
            for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += vp[b][i] * gb[i];
        }
        nv[ax] = forward_transform(g, acc);
        dealias_23(nv[ax]);
        nv[ax] *= -1.0;
    }
    const double hp_bar = params_.P_prime_bar() / params_.rho_bar;
    const double h_bar = enthalpy(params_.rho_bar, params_);
    std::vector<double> q(rp.size());
    for (std::size_t i = 0; i < rp.size(); ++i)
        q[i] = enthalpy(params_.rho_bar + rp[i], params_) - h_bar - hp_bar * rp[i];
    SpectralField qs = forward_transform(g, q);
    dealias_23(qs);
    VectorField gq = gradient(qs);
    for (int ax = 0; ax < d; ++ax)
        for (std::size_t i = 0; i < nv[ax].size(); ++i)
            nv[ax].c[i] -= pcoef * gq[ax].c[i];
    return {std::move(nr), std::move(nv)};
}

void EPStepper::step(FlowState& s) {
    if (dt_ <= 0.0) throw StepSizeError("step: set_dt must be called first");
    if (s.frame != frame_) throw std::invalid_argument("step: state frame mismatch");
    if (s.rho_pert.grid != grid_) throw std::invalid_argument("step: state grid mismatch");

    const int d = grid_.d;
    const int m = d + 1;
    auto [nr, nv] = nonlinear(s);

    // predictor a = E z + P1 N(z)
    FlowState a = s;
    Eigen::VectorXcd z(m), n(m), za(m);
    for (std::size_t idx = 0; idx < grid_.size(); ++idx) {
        z(0) = s.rho_pert.c[idx];
        n(0) = nr.c[idx];
        for (int ax = 0; ax < d; ++ax) {
            z(1 + ax) = s.v[ax].c[idx];
            n(1 + ax) = nv[ax].c[idx];
        }
        za = E_[idx] * z + P1_[idx] * n;
        a.rho_pert.c[idx] = za(0);
        for (int ax = 0; ax < d; ++ax) a.v[ax].c[idx] = za(1 + ax);
    }

    auto [nra, nva] = nonlinear(a);

    // corrector z+ = a + P2 (N(a) - N(z))
    for (std::size_t idx = 0; idx < grid_.size(); ++idx) {
        n(0) = nra.c[idx] - nr.c[idx];
        za(0) = a.rho_pert.c[idx];
        for (int ax = 0; ax < d; ++ax) {
            n(1 + ax) = nva[ax].c[idx] - nv[ax].c[idx];
            za(1 + ax) = a.v[ax].c[idx];
        }
        za += P2_[idx] * n;
        s.rho_pert.c[idx] = za(0);
        for (int ax = 0; ax < d; ++ax) s.v[ax].c[idx] = za(1 + ax);
    }
    s.time += dt_;
    hermitian_symmetrize(s.rho_pert);
    for (int ax = 0; ax < d; ++ax) hermitian_symmetrize(s.v[ax]);

    for (const auto& zc : s.rho_pert.c)
        if (!std::isfinite(zc.real()) || !std::isfinite(zc.imag()))
            throw BlowUpError("step: NaN/Inf in density at t = " + std::to_string(s.time));
    for (int ax = 0; ax < d; ++ax)
        for (const auto& zc : s.v[ax].c)
            if (!std::isfinite(zc.real()) || !std::isfinite(zc.imag()))
                throw BlowUpError("step: NaN/Inf in velocity at t = " + std::to_string(s.time));
}

double EPStepper::min_density(const FlowState& s) const {
    auto rp = inverse_transform(s.rho_pert);
    double m = std::numeric_limits<double>::infinity();
    for (double r : rp) m = std::min(m, params_.rho_bar + r);
    return m;
}

double EPStepper::cfl_limit(const FlowState& s) const {
    double vmax = 0.0;
    for (const auto& comp : s.v) vmax = std::max(vmax, max_abs_phys(comp));
    return vmax > 0.0 ? 0.5 * grid_.dx() / vmax : std::numeric_limits<double>::infinity();
}

double Theorem1Components::total() const {
    return sup_rho_low + sup_rho_lplus + sup_v_lminus + sup_high + int_rho_low +
           int_v_low + int_rho_lplus + int_v_lplus + int_high + sup_w + int_w;
}

Theorem1Components theorem1_functional(const std::vector<FlowState>& trajectory,
                                       const ModelParams& p,
                                       const DyadicPartition& partition) {
    p.validate();
    Theorem1Components out;
    out.j_min = partition.j_min;
    out.j_max = partition.j_max;
    if (trajectory.empty()) return out;

    const double sd2 = 0.5 * trajectory[0].rho_pert.grid.d;
    double prev_t = 0.0;
    struct Integrands {
        double rho_low, v_low, rho_lplus, v_lplus, high, w;
    } prev{0, 0, 0, 0, 0, 0};

    bool first = true;
    for (const auto& s : trajectory) {
        if (s.frame != Frame::Original)
            throw std::invalid_argument("theorem1_functional: original-frame trajectory required");
        const double rl = besov_norm(s.rho_pert, sd2 - 1.0, Regime::Low, partition);
        const double rlp = besov_norm(s.rho_pert, sd2, Regime::LowPlusEps, partition);
        const double vlm = besov_norm(s.v, sd2, Regime::LowMinusEps, partition);
        const double high = pair_besov(s.rho_pert, s.v, sd2 + 1.0, Regime::High, partition);
        const double rlp2 = besov_norm(s.rho_pert, sd2 + 2.0, Regime::LowPlusEps, partition);
        const double vl = besov_norm(s.v, sd2, Regime::Low, partition);
        const double vlp1 = besov_norm(s.v, sd2 + 1.0, Regime::LowPlusEps, partition);
        const double wn = besov_norm(damped_mode(s, p), sd2, Regime::Full, partition);

        out.sup_rho_low = std::max(out.sup_rho_low, rl);
        out.sup_rho_lplus = std::max(out.sup_rho_lplus, rlp);
        out.sup_v_lminus = std::max(out.sup_v_lminus, vlm);
        out.sup_high = std::max(out.sup_high, p.eps * high);
        out.sup_w = std::max(out.sup_w, wn);
        out.pointwise_mid.push_back(pair_besov(s.rho_pert, s.v, sd2, Regime::Full, partition));

        Integrands cur{rl, vl, rlp2, vlp1, high, wn};
        if (!first) {
            const double h = 0.5 * (s.time - prev_t);
            out.int_rho_low += h * p.eps * (prev.rho_low + cur.rho_low);
            out.int_v_low += h * (prev.v_low + cur.v_low);
            out.int_rho_lplus += h * p.eps * (prev.rho_lplus + cur.rho_lplus);
            out.int_v_lplus += h * (prev.v_lplus + cur.v_lplus);
            out.int_high += h * (prev.high + cur.high);
            out.int_w += h * (prev.w + cur.w) / p.eps;
        }
        prev = cur;
        prev_t = s.time;
        first = false;
    }
    return out;
}

} // namespace relax
