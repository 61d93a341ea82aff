#pragma once

// Hydrodynamic forms of the toy model.
//
// Madelung form (rho, phi):
//   phi'_j = -rho_j + 2 rho_{j-1} cos 2(phi_{j-1} - phi_j) + 2 rho_{j+1} cos 2(phi_{j+1} - phi_j)
//   rho'_j = -4 rho_j rho_{j-1} sin 2(phi_{j-1} - phi_j) - 4 rho_j rho_{j+1} sin 2(phi_{j+1} - phi_j)
//
// Difference-phase form (rho, theta), theta_j = phi_j - phi_{j-1}:
//   theta'_j = -(rho_j - rho_{j-1}) - 2 (rho_j - rho_{j-1}) cos 2theta_j
//              + 2 rho_{j+1} cos 2theta_{j+1} - 2 rho_{j-2} cos 2theta_{j-1}
//   rho'_j   = 4 rho_j rho_{j-1} sin 2theta_j - 4 rho_j rho_{j+1} sin 2theta_{j+1}
//
// Both break down at vacuum (phases undefined), so every entry point rejects
// states with a density at or below the phase floor.

#include "toymodel/integrator.hpp"
#include "toymodel/kernels.hpp"
#include "toymodel/lattice.hpp"

namespace toymodel {

struct HydroDerivative {
  std::vector<double> drho;
  std::vector<double> dphi;
};

struct AltHydroDerivative {
  std::vector<double> drho;
  std::vector<double> dtheta;
};

/// Throws Error{vacuum_node} if some rho_j <= phase_floor.
void require_positive_density(std::span<const double> rho, double phase_floor,
                              const char* where);

HydroDerivative hydro_rhs(const HydroState& h, double phase_floor = default_phase_floor);

AltHydroDerivative alt_hydro_rhs(const AltHydroState& a,
                                 FirstNodePhase first = FirstNodePhase::anchored,
                                 double phase_floor = default_phase_floor);

/// RK4 in Madelung coordinates. Diagnostics carry sum rho and the Hamiltonian.
/// Throws vacuum_node if a density drops below cfg.phase_floor, non_finite on
/// NaN/Inf and drift_exceeded as integrate_toy does.
Trajectory<HydroState> integrate_hydro(const HydroState& h0, const IntegratorConfig& cfg);

Trajectory<AltHydroState> integrate_alt(const AltHydroState& a0, const IntegratorConfig& cfg,
                                        FirstNodePhase first = FirstNodePhase::anchored);

/// Maps a complex trajectory into Madelung coordinates, unwrapping each
/// node's phase in time against the previous sample.
Trajectory<HydroState> to_hydro_series(const Trajectory<ComplexLattice>& traj,
                                       double phase_floor = default_phase_floor);
Trajectory<AltHydroState> to_alt_series(const Trajectory<ComplexLattice>& traj,
                                        double phase_floor = default_phase_floor);
Trajectory<AltHydroState> to_alt_series(const Trajectory<HydroState>& traj);

/// theta_j(0) = pi/4 and rho_j(0) = eps/8 on j = 1..n.
AltHydroState rarefaction_alt_data(std::size_t n, double eps);

}  // namespace toymodel
