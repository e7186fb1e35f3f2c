#pragma once

#include <vector>

#include "relax/spectral_field.hpp"

namespace relax {

// Forward transform of real samples (row-major over the grid) into mean-type
// Fourier coefficients: u_hat(k) = N^{-d} sum_x u(x) exp(-i xi_k . x).
SpectralField forward_transform(const Grid& grid, const std::vector<double>& u_phys);

// Inverse: u(x) = sum_k u_hat(k) exp(i xi_k . x); imaginary residue discarded
// (callers asserting real data should check hermitian symmetry separately).
std::vector<double> inverse_transform(const SpectralField& u);

// Complex-valued companions used internally (products of real fields are formed
// through these to keep a single FFT code path).
std::vector<cplx> inverse_transform_c(const SpectralField& u);
SpectralField forward_transform_c(const Grid& grid, const std::vector<cplx>& u_phys);

} // namespace relax
