#pragma once

// Fluxes through node N of the truncated invariants
//   M_N = sum_{j<=N} |b_j|^2,
//   H_N = sum_{j<=N} |b_j|^4/4 - Re(conj(b_j)^2 b_{j-1}^2).
// Along the toy model flow
//   dM_N/dt = -4 Im(b_{N+1}^2 conj(b_N)^2),
//   dH_N/dt = 2 |b_N|^2 Im(2 b_{N+1}^2 conj(b_{N-1})^2 - b_{N+1}^2 conj(b_N)^2).

#include <cstddef>
#include <vector>

#include "toymodel/integrator.hpp"
#include "toymodel/lattice.hpp"

namespace toymodel {

double truncated_mass(const ComplexLattice& state, std::size_t n_trunc);
double truncated_hamiltonian(const ComplexLattice& state, std::size_t n_trunc);

/// Requires 1 <= n_trunc < n.
double mass_flux(const ComplexLattice& state, std::size_t n_trunc);
/// Requires 2 <= n_trunc < n.
double hamiltonian_flux(const ComplexLattice& state, std::size_t n_trunc);

enum class FluxDirection { inflow, outflow, neutral };

struct FluxClassification {
  /// sin(2 phi_{N+1} - 2 phi_{N-1}) - sin(2 phi_{N+1} - 2 phi_N) / 2
  double energy_bracket = 0.0;
  /// -sin(2 (phi_{N+1} - phi_N))
  double mass_bracket = 0.0;
  FluxDirection energy = FluxDirection::neutral;
  FluxDirection mass = FluxDirection::neutral;
};

/// Brackets with |value| below this classify as neutral.
inline constexpr double neutral_band = 1e-9;

/// Equal-amplitude sign analysis of the two fluxes from the three phases at
/// nodes N-1, N and N+1. Positive brackets mean flow into the first N nodes.
FluxClassification flux_sign_classifier(double phi_prev, double phi_n, double phi_next);

struct CumulativeFlux {
  double integrated_flux = 0.0;  // corrected trapezoid integral of mass_flux
  double mass_change = 0.0;      // M_N(T) - M_N(0)
  double mismatch() const noexcept { return integrated_flux - mass_change; }
};

CumulativeFlux cumulative_mass_flux(const Trajectory<ComplexLattice>& traj, std::size_t n_trunc);

struct FluxSample {
  double t = 0.0;
  std::size_t n_trunc = 0;
  double mass_flux = 0.0;
  double ham_flux = 0.0;
  double mass_n = 0.0;
  double ham_n = 0.0;
};

std::vector<FluxSample> flux_series(const Trajectory<ComplexLattice>& traj, std::size_t n_trunc);

}  // namespace toymodel
