#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <utility>
#include <vector>

#include "relax/littlewood_paley.hpp"
#include "relax/model_params.hpp"
#include "relax/ops.hpp"
#include "relax/spectral_field.hpp"

namespace relax {

struct VacuumError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct BlowUpError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct StepSizeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Frame { Original, Rescaled };

// (density perturbation, velocity) at a time stamp. The density field stores
// rho - rho_bar; positivity of rho_bar + perturbation is the vacuum guard.
struct FlowState {
    double time = 0.0;
    SpectralField rho_pert;
    VectorField v;
    Frame frame = Frame::Rescaled;

    static FlowState equilibrium(const Grid& g, Frame f = Frame::Rescaled) {
        FlowState s;
        s.rho_pert = SpectralField(g);
        s.v = make_vector_field(g);
        s.frame = f;
        return s;
    }
};

// pointwise A rho^gamma; throws VacuumError on nonpositive samples
std::vector<double> pressure(const std::vector<double>& rho_phys, const ModelParams& p);

// Makino variable c = sqrt(gamma A)/gamma_tilde * rho^gamma_tilde and inverse
std::vector<double> makino_transform(const std::vector<double>& rho_phys, const ModelParams& p);
std::vector<double> makino_inverse(const std::vector<double>& c_phys, const ModelParams& p);

// full tendency of the state in its frame; products dealiased by the 2/3 rule
std::pair<SpectralField, VectorField> rhs(const FlowState& s, const ModelParams& p);

// damped mode of the state's frame:
//   rescaled: W = grad P(rho)/rho + v + grad(-Lap)^-1 (rho - rho_bar)
//   original: w = eps grad P(rho)/rho + v + eps grad(-Lap)^-1 (rho - rho_bar)
VectorField damped_mode(const FlowState& s, const ModelParams& p);

// Exponential (ETD2RK) stepper: the linearization about (rho_bar, 0) is
// advanced exactly per mode; the nonlinear remainder enters through the
// phi1/phi2 weights. Propagators are cached per dt.
class EPStepper {
  public:
    EPStepper(const Grid& grid, const ModelParams& params, Frame frame);

    void set_dt(double dt);
    double dt() const { return dt_; }

    // advance one step of the current dt; validates vacuum, CFL and NaNs
    void step(FlowState& s);

    double min_density(const FlowState& s) const;
    double cfl_limit(const FlowState& s) const;

  private:
    std::pair<SpectralField, VectorField> nonlinear(const FlowState& s) const;

    Grid grid_;
    ModelParams params_;
    Frame frame_;
    double dt_ = 0.0;
    // per-mode propagators: E = exp(-dt M), P1 = dt*phi1, P2 = dt*phi2
    std::vector<Eigen::MatrixXcd> E_, P1_, P2_;
};

// Summands of the global-in-time norm functional for an original-frame
// trajectory: sup-in-time regime norms and trapezoid L1-in-time norms at the
// regularity indices of the a priori estimate, plus the damped-mode terms.
struct Theorem1Components {
    double sup_rho_low = 0.0;       // sup ||rho'||^{l}_{d/2-1}
    double sup_rho_lplus = 0.0;     // sup ||rho'||^{l+}_{d/2}
    double sup_v_lminus = 0.0;      // sup ||v||^{l-}_{d/2}
    double sup_high = 0.0;          // eps * sup ||(rho', v)||^{h}_{d/2+1}
    double int_rho_low = 0.0;       // eps * int ||rho'||^{l}_{d/2-1}
    double int_v_low = 0.0;         // int ||v||^{l}_{d/2}
    double int_rho_lplus = 0.0;     // eps * int ||rho'||^{l+}_{d/2+2}
    double int_v_lplus = 0.0;       // int ||v||^{l+}_{d/2+1}
    double int_high = 0.0;          // int ||(rho', v)||^{h}_{d/2+1}
    double sup_w = 0.0;             // sup ||w||_{d/2}
    double int_w = 0.0;             // eps^-1 int ||w||_{d/2}
    double total() const;
    // instantaneous medium-frequency norm per sample, for decay scans
    std::vector<double> pointwise_mid;
    int j_min = 0, j_max = 0;
};

Theorem1Components theorem1_functional(const std::vector<FlowState>& trajectory,
                                       const ModelParams& p,
                                       const DyadicPartition& partition);

} // namespace relax
