#pragma once

// Right-hand-side kernels for every lattice system in the library.
//
// Each kernel exists twice: an OpenMP version in toymodel::kernels, used by
// the integrators, and a plain loop in toymodel::kernels::serial kept as the
// reference the parallel code is tested against. Both read ghost values as 0
// outside the active block, and both write every output entry, so results
// are bitwise identical (no reductions are involved).
//
// All spans are 0-based: element k is lattice node j = k + 1.

#include <cstddef>
#include <span>

#include "toymodel/lattice.hpp"

namespace toymodel {

/// Boundary convention for the phase-difference equation at the first node.
/// anchored: phi_0 is held at 0, so theta_1 evolves like phi_1.
/// formal:   the phase-difference equation is applied verbatim at j = 1 with
///           zero ghost densities, which keeps a -2 rho_1 cos(2 theta_1) term.
enum class FirstNodePhase { anchored, formal };

namespace kernels {

/// Lattices shorter than this run the OpenMP kernels on one thread.
inline constexpr std::size_t parallel_threshold = 1024;

void toy_rhs(std::span<const cplx> b, std::span<cplx> db);
void hydro_rhs(std::span<const double> rho, std::span<const double> phi,
               std::span<double> drho, std::span<double> dphi);
void alt_hydro_rhs(std::span<const double> rho, std::span<const double> theta,
                   std::span<double> drho, std::span<double> dtheta,
                   FirstNodePhase first = FirstNodePhase::anchored);
void backward_burgers_rhs(std::span<const double> rho, double coeff, std::span<double> drho);
void symmetric_burgers_rhs(std::span<const double> rho, std::span<double> drho);
/// theta'_j = -(rho_j - rho_{j-1}), rho'_j = -8 rho_j (rho_j - rho_{j-1}).
void modified_burgers_rhs(std::span<const double> rho, std::span<double> drho,
                          std::span<double> dtheta);

namespace serial {
void toy_rhs(std::span<const cplx> b, std::span<cplx> db);
void hydro_rhs(std::span<const double> rho, std::span<const double> phi,
               std::span<double> drho, std::span<double> dphi);
void alt_hydro_rhs(std::span<const double> rho, std::span<const double> theta,
                   std::span<double> drho, std::span<double> dtheta,
                   FirstNodePhase first = FirstNodePhase::anchored);
void backward_burgers_rhs(std::span<const double> rho, double coeff, std::span<double> drho);
void symmetric_burgers_rhs(std::span<const double> rho, std::span<double> drho);
void modified_burgers_rhs(std::span<const double> rho, std::span<double> drho,
                          std::span<double> dtheta);
}  // namespace serial

}  // namespace kernels
}  // namespace toymodel
