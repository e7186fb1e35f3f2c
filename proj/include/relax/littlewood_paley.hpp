#pragma once

#include <string>
#include <vector>

#include "relax/spectral_field.hpp"

namespace relax {

enum class Regime { Full, Low, High, LowMinusEps, LowPlusEps };

std::string regime_name(Regime r);

// Smooth radial profile supported in {3/4 <= r <= 8/3} built from the
// exp(-1/t) transition; sum_j phi(2^-j r) = 1 for r > 0.
double lp_profile(double r);

struct DyadicPartition {
    int j_min = 0;
    int j_max = 0;
    double eps_threshold = 0.0; // splits the low regime: 2^j <= eps is "very low"
    double hf_threshold = 0.5;  // low regime is 2^j <= 2*hf_threshold
    Grid grid;

    bool contains(int j) const { return j >= j_min && j <= j_max; }
    bool in_regime(int j, Regime r) const;
};

// Partition resolving all nonzero grid modes: blocks below j_min vanish on the
// resolved annulus and blocks above j_max are not needed below the Nyquist
// radius, so the finite sum is exactly 1 there. hf_threshold is a physical
// frequency (0.5 in the nondimensionalized frame; set eps/.. for rescaled frames).
DyadicPartition build_partition(const Grid& grid, double eps, double hf_threshold = 0.5);

SpectralField dyadic_block(const SpectralField& u, int j, const DyadicPartition& p);

// L2 norm of block j, evaluated directly on coefficients
double block_l2(const SpectralField& u, int j, const DyadicPartition& p);

// homogeneous Besov norm B^s_{2,1} restricted to a frequency regime:
// sum over j in the regime of 2^{js} ||block_j u||_{L2}
double besov_norm(const SpectralField& u, double s, Regime regime,
                  const DyadicPartition& p);

double besov_norm(const VectorField& u, double s, Regime regime,
                  const DyadicPartition& p);

} // namespace relax
