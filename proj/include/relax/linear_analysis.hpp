#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "relax/ops.hpp"
#include "relax/spectral_field.hpp"

namespace relax {

// All of this module works in the normalized frame (background density and
// sound speed scaled to 1); physical parameters map in via eps' = eps/sqrt(P'(rho_bar)).

// (d+1)x(d+1) matrix M with d/dt (rho, v) + M (rho, v) = 0:
//   [[0, i xi^T], [i (1 + eps^2 |xi|^-2) xi, I_d]]
Eigen::MatrixXcd symbol_matrix(const std::vector<double>& xi, double eps);

struct ModeEigenvalues {
    cplx lambda_plus;
    cplx lambda_minus;
    int mult_one; // eigenvalue 1 with multiplicity d-1
};

// closed form lambda_pm = (1 +- sqrt(1 - 4(|xi|^2 + eps^2))) / 2
ModeEigenvalues eigenvalues(const std::vector<double>& xi, double eps);

struct ModeSolution {
    std::vector<double> xi;
    double eps = 0.0;
    double t = 0.0;
    Eigen::VectorXcd initial; // (rho, v_1..v_d)
    Eigen::VectorXcd evolved;
    cplx u_hat() const; // i xi . v
    cplx w_hat() const; // u / sqrt(|xi|^2 + eps^2)
};

// exact per-mode solution exp(-t M) z0
ModeSolution evolve_mode(const Eigen::VectorXcd& z0, const std::vector<double>& xi,
                         double eps, double t);

struct DecaySample {
    double xi_norm = 0.0, eps = 0.0, t = 0.0;
    double measured = 0.0, bound = 0.0, margin = 0.0;
};

struct DecayReport {
    std::vector<DecaySample> rows;
    int violations = 0;
    double worst_margin = 0.0; // min over rows of (bound - measured)
    std::string note;
};

// Checks |(rho, w)(t)| <= 2 exp(-(|xi|^2+eps^2) t / 8) |(rho, w)(0)| on the
// coupled 2x2 subsystem, measured as the operator norm of the propagator
// (dominates every choice of initial data). Samples must satisfy
// |xi|^2 + eps^2 <= 1; others are rejected.
DecayReport certify_low_frequency_decay(const std::vector<double>& xi_norms,
                                        const std::vector<double>& eps_values,
                                        const std::vector<double>& times);

// default logarithmic sweep used by the CLI
DecayReport certify_default_sweep();

// L_j = 1/2 ||grad rho_j||^2 + 1/2 ||grad v_j||^2 + 1/4 int grad rho_j . v_j
// for data supported at frequencies |xi| >= 3/8 (block 2^j >= 1/2).
double lyapunov_high(const SpectralField& rho_j, const VectorField& v_j);

// W = grad rho + eps^2 grad (-Lap)^-1 rho + v
VectorField damped_mode_linear(const SpectralField& rho, const VectorField& v, double eps);

// Field-level exact linear evolution: each nonzero mode advanced by
// exp(-t M(xi, eps)); the zero mode keeps rho and damps v by exp(-t).
void evolve_linear_field(SpectralField& rho, VectorField& v, double eps, double t);

} // namespace relax
