#pragma once

// Time integration of the toy model lattice ODE
//
//   -i db_j/dt = -|b_j|^2 b_j + 2 b_{j-1}^2 conj(b_j) + 2 b_{j+1}^2 conj(b_j),
//
// j = 1..n with b_0 = b_{n+1} = 0, by fixed-step RK4 with mass and
// Hamiltonian drift monitoring.

#include <span>

#include "toymodel/integrator.hpp"
#include "toymodel/lattice.hpp"

namespace toymodel {

ComplexLattice toy_rhs(const ComplexLattice& state);

/// Throws Error{drift_exceeded} if the relative mass drift or the Hamiltonian
/// drift (normalised by max(1, |H0|)) exceeds cfg.drift_tol at any sample, and
/// Error{non_finite} on NaN/Inf.
Trajectory<ComplexLattice> integrate_toy(const ComplexLattice& b0, const IntegratorConfig& cfg);

/// Final state only; no drift monitoring.
ComplexLattice evolve_toy(const ComplexLattice& b0, double dt, double t_end);

/// Empirical order from successive refinements: with errors
/// e_k = |y(dt_k) - y(dt_{k+1})|_inf the order is log(e_k / e_{k+1}) / log(r)
/// for the common ratio r; the mean over the available pairs is returned.
double convergence_order(const ComplexLattice& b0, std::span<const double> dts, double t_end = 1.0);

// Initial data generators.

/// b_j = exp(i (j-1) pi / 4).
ComplexLattice shock_initial_data(std::size_t n);
/// b_j = sqrt(eps/8) exp(i j pi / 4): rho_j = eps/8 and theta_j = pi/4 for all j.
ComplexLattice rarefaction_initial_data(std::size_t n, double eps);
/// |b_j| = 1 at a single node (the invariant circle T_j), zero elsewhere.
ComplexLattice circle_initial_data(std::size_t n, std::size_t node, double phase = 0.0);

}  // namespace toymodel
