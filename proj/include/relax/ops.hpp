#pragma once

#include <utility>

#include "relax/spectral_field.hpp"

namespace relax {

// component i is multiplication by i*xi_i
VectorField gradient(const SpectralField& u);

SpectralField divergence(const VectorField& v);

SpectralField laplacian(const SpectralField& u);

// grad (-Laplace)^{-1} u for zero-mean u; the k=0 mode of the potential is
// gauged to zero. Inputs whose mean exceeds `mean_tol` are rejected.
VectorField poisson_inverse_gradient(const SpectralField& u, double mean_tol = 1e-10);

// Helmholtz split v = Pv + Qv with div Pv = 0 and Qv a gradient; the zero
// mode goes entirely to Pv.
std::pair<VectorField, VectorField> helmholtz_project(const VectorField& v);

// L2 inner product of the real fields behind u and v (box-weighted)
double inner_l2(const SpectralField& u, const SpectralField& v);
double inner_l2(const VectorField& u, const VectorField& v);
double l2_norm(const VectorField& v);

// zero out coefficients with any |k_axis| > n/3 (2/3-rule dealiasing)
void dealias_23(SpectralField& u);

// enforce u_hat(-k) = conj(u_hat(k)) by averaging; keeps real data exactly real
void hermitian_symmetrize(SpectralField& u);

// largest deviation from hermitian symmetry (diagnostic)
double hermitian_defect(const SpectralField& u);

// max pointwise |u| on the physical grid
double max_abs_phys(const SpectralField& u);

} // namespace relax
