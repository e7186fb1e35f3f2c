#pragma once

#include <cstdint>

#include "relax/spectral_field.hpp"

namespace relax {

// Mean-free Gaussian bump exp(-|x-c|^2 / (2 sigma^2)) scaled to peak amplitude
// `amp`; center given as fractions of L, sigma as a fraction of L.
SpectralField make_gaussian(const Grid& grid, double amp, double cx = 0.5,
                            double cy = 0.5, double cz = 0.5, double sigma_frac = 0.125);

// amp * cos(k . x) for an integer mode vector (defaults to the first mode on axis 0)
SpectralField make_single_mode(const Grid& grid, double amp, int kx = 1, int ky = 0,
                               int kz = 0);

// Random real field spectrally supported in klo <= |xi| <= khi, coefficients
// keyed by (seed, flat mode index) so the draw is schedule independent; the
// result is rescaled to peak physical amplitude `amp`.
SpectralField make_random_band(const Grid& grid, double amp, double klo, double khi,
                               std::uint64_t seed);

} // namespace relax
