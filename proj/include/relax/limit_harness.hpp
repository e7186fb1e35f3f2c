#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "relax/euler_poisson.hpp"
#include "relax/keller_segel.hpp"

namespace relax {

struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual_max = 0.0;
    int n_used = 0;
    bool defined = false;
    std::vector<std::string> warnings;
};

// least squares of log(error) against log(eps); nonpositive errors excluded
SlopeFit fit_slope(const std::vector<std::pair<double, double>>& eps_error);

// Interpolate an original-frame trajectory at rescaled times: state at tau is
// the source at t = tau/eps with velocity scaled by 1/eps.
FlowState diffusive_rescale(const std::vector<FlowState>& source, double eps, double tau);

struct LadderConfig {
    Grid grid{2, 128, 8.0 * 3.14159265358979323846};
    ModelParams base;                        // eps field ignored, set per rung
    std::vector<double> epsilons{0.2, 0.1, 0.05, 0.025};
    double t_final = 16.0;
    double dt_main = 0.01;
    double amp_rho = 0.01;
    double amp_v = 0.02;                     // original-frame velocity amplitude
    double band_lo = 0.25, band_hi = 1.0;    // spectral support of the data
    std::uint64_t seed = 7;
    int tail_doublings = 2;                  // horizon extensions allowed by the tail rule
};

struct LadderRow {
    double eps = 0.0;
    double value = 0.0;       // quantity under study (integral or sup error)
    double l1_high = 0.0;     // ep_ks only: int ||diff||^h_{d/2+1}
    double l1_low = 0.0;      // ep_ks only: int ||diff||^l_{d/2}
    double horizon = 0.0;
    double tail_fraction = 0.0; // norm at T / running max
    bool completed = false;
    std::string error;
};

struct StudyReport {
    std::vector<LadderRow> rows;
    SlopeFit fit;
    bool complete = false;
    bool pass = false;
    std::string summary; // "slope=<x> residual=<y> pass=<bool>"
};

// integral over time of ||W_eps||_{B^{d/2}} per rung, log-log slope vs eps
StudyReport damped_mode_decay_study(const LadderConfig& cfg);

// sup_t ||N - rho_eps||_{B^{d/2-1}} per rung (plus the two L1 difference
// norms), with the Keller-Segel run advanced in lockstep on the same grid
StudyReport ep_ks_convergence_study(const LadderConfig& cfg);

// max over sampled rescaled times of the state difference between a rescaled
// original-frame run and a direct rescaled-frame run (linear-regime check)
double frame_consistency_error(const LadderConfig& cfg, double eps);

} // namespace relax
