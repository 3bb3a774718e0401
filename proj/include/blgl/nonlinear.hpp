#pragma once

#include <vector>

#include "blgl/operators.hpp"

namespace blgl {

/// Evaluate the field at Nx equispaced x-points: phys[m*J + j] = f(x_m, y_j).
/// Requires Hermitian symmetry (the result is the real part of the sum).
std::vector<double> to_physical(const SpectralField& f, int Nx);

/// Project Nx-point physical samples back onto modes |xi| <= grid.K.
SpectralField to_spectral(const std::vector<double>& phys, int Nx,
                          std::shared_ptr<const Grid> grid);

/// Advection source N = -(u1 d_x omega + u2 d_y omega), computed
/// pseudo-spectrally; dealias pads the physical grid to >= 3K+1 points so the
/// retained modes are alias-free (2/3 rule).
SpectralField nonlinear_term(const SpectralField& omega, bool dealias = true);

/// Wall datum per mode from the source field: B_xi = -d_y phi_xi(0) where
/// (d_y^2 - xi^2) phi = N, phi(0) = 0 and d_y phi + |xi| phi = 0 at Ly (the
/// decaying half-line closure). Indexed by grid.mode_index.
std::vector<cd> boundary_datum_from_source(const SpectralField& n);

/// Same datum through the half-line representation +int e^{-|xi| z} N_xi(z) dz
/// (truncated at Ly); kept as an independent cross-check path.
std::vector<cd> boundary_datum_quadrature(const SpectralField& n);

/// B for a vorticity state: boundary_datum_from_source(nonlinear_term(omega)).
std::vector<cd> boundary_datum(const SpectralField& omega);

}  // namespace blgl
