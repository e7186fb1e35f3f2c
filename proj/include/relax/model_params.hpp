#pragma once

#include <cmath>
#include <stdexcept>

namespace relax {

// Parameters of the pressure law P(z) = A z^gamma and the relaxation strength.
struct ModelParams {
    double A = 1.0;
    double gamma = 2.0;
    double rho_bar = 1.0;
    double eps = 0.1;

    void validate() const {
        if (!(A > 0.0)) throw std::invalid_argument("params: A must be positive");
        if (!(gamma > 1.0)) throw std::invalid_argument("params: gamma must exceed 1");
        if (!(rho_bar > 0.0)) throw std::invalid_argument("params: rho_bar must be positive");
        if (!(eps > 0.0)) throw std::invalid_argument("params: eps must be positive");
        if (eps > 0.5) throw std::invalid_argument("params: eps must be <= 0.5");
    }

    double gamma_tilde() const { return 0.5 * (gamma - 1.0); }

    // sound-speed variable at the background: c_bar = sqrt(gamma A)/gamma_tilde * rho_bar^gamma_tilde
    double c_bar() const {
        return std::sqrt(gamma * A) / gamma_tilde() * std::pow(rho_bar, gamma_tilde());
    }

    double P_prime_bar() const { return A * gamma * std::pow(rho_bar, gamma - 1.0); }

    // relaxation parameter in the unit-sound-speed frame
    double eps_prime() const { return eps / std::sqrt(P_prime_bar()); }
};

} // namespace relax
