#pragma once

#include <vector>

#include "relax/euler_poisson.hpp" // error types, ModelParams
#include "relax/littlewood_paley.hpp"
#include "relax/spectral_field.hpp"

namespace relax {

// perturbation N - rho_bar of the chemotaxis density
struct KSState {
    double time = 0.0;
    SpectralField n_pert;

    static KSState equilibrium(const Grid& g) {
        KSState s;
        s.n_pert = SpectralField(g);
        return s;
    }
};

// d/dt N = Lap P(N) + div(N grad V), -Lap V = N - rho_bar; returned tendency
// has exactly zero mean (both terms are divergences)
SpectralField ks_rhs(const KSState& s, const ModelParams& p);

// Exponential stepper: the linear part -(P'(rho_bar)|xi|^2 + rho_bar) per
// nonzero mode is exact; the remainder Lap g(N) + div(N' grad V) is explicit
// through the phi1/phi2 weights (ETD2RK).
class KSStepper {
  public:
    KSStepper(const Grid& grid, const ModelParams& params);

    void set_dt(double dt);
    double dt() const { return dt_; }
    void step(KSState& s);

    double min_density(const KSState& s) const;

  private:
    SpectralField nonlinear(const KSState& s) const;

    Grid grid_;
    ModelParams params_;
    double dt_ = 0.0;
    std::vector<double> E_, P1_, P2_; // scalar per-mode propagator weights
};

struct KSAprioriReport {
    double sup_low = 0.0;    // sup_t ( ||N-rho_bar||_{d/2-1} + ||.||_{d/2} )
    double int_high = 0.0;   // int_0^T ( ||N-rho_bar||_{d/2+2} + ||.||_{d/2+1} )
    double initial = 0.0;    // ||N0 - rho_bar||_{d/2-1} + ||.||_{d/2}
    double ratio = 0.0;      // (sup_low + int_high) / initial
    bool ratio_defined = false;
};

KSAprioriReport ks_apriori_functional(const std::vector<KSState>& trajectory,
                                      const DyadicPartition& partition);

} // namespace relax
