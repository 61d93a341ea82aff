#pragma once

// Lattice state types for the toy model and the coordinate changes between
// the complex amplitudes b_j, the Madelung pair (rho_j, phi_j) and the
// difference-phase pair (rho_j, theta_j = phi_j - phi_{j-1}).
//
// Indexing: every public accessor that takes a node index uses the 1-based
// lattice index j = 1..n. Storage is 0-based, so values()[j-1] is node j.
// Reads outside 1..n return exactly zero (Dirichlet ghost nodes).

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace toymodel {

using cplx = std::complex<double>;

inline constexpr double default_phase_floor = 1e-12;

class ComplexLattice {
 public:
  ComplexLattice() = default;
  explicit ComplexLattice(std::size_t n) : b_(n) {}
  explicit ComplexLattice(std::vector<cplx> values) : b_(std::move(values)) {}

  std::size_t size() const noexcept { return b_.size(); }

  /// Node j (1-based); zero outside 1..n.
  cplx at(long j) const noexcept {
    return (j >= 1 && j <= static_cast<long>(b_.size())) ? b_[j - 1] : cplx{};
  }
  void set(long j, cplx value) { b_.at(static_cast<std::size_t>(j - 1)) = value; }

  std::span<const cplx> values() const noexcept { return b_; }
  std::span<cplx> values() noexcept { return b_; }
  std::vector<cplx>& storage() noexcept { return b_; }
  const std::vector<cplx>& storage() const noexcept { return b_; }

  bool all_finite() const noexcept;

 private:
  std::vector<cplx> b_;
};

/// Madelung coordinates. phase_undefined[j-1] is set where rho_j is at or
/// below the phase floor; phi is stored as 0 there.
struct HydroState {
  std::vector<double> rho;
  std::vector<double> phi;
  std::vector<bool> phase_undefined;

  HydroState() = default;
  HydroState(std::vector<double> rho_, std::vector<double> phi_);

  std::size_t size() const noexcept { return rho.size(); }
  double rho_at(long j) const noexcept {
    return (j >= 1 && j <= static_cast<long>(rho.size())) ? rho[j - 1] : 0.0;
  }
  bool any_phase_undefined() const noexcept;
};

/// Density and phase differences theta_j = phi_j - phi_{j-1}, with phi_0 = 0.
struct AltHydroState {
  std::vector<double> rho;
  std::vector<double> theta;

  std::size_t size() const noexcept { return rho.size(); }
  double rho_at(long j) const noexcept {
    return (j >= 1 && j <= static_cast<long>(rho.size())) ? rho[j - 1] : 0.0;
  }
  double theta_at(long j) const noexcept {
    return (j >= 1 && j <= static_cast<long>(theta.size())) ? theta[j - 1] : 0.0;
  }
};

double mass(const ComplexLattice& state);
double hamiltonian(const ComplexLattice& state);

/// Mass and Hamiltonian written in density/phase-difference coordinates.
double mass(std::span<const double> rho);
double hamiltonian(const AltHydroState& state);

/// Returns angle + 2 pi k for the integer k that lands closest to reference.
double nearest_representative(double angle, double reference);

/// rho_j = |b_j|^2 and phi_j = arg b_j, unwrapped along the lattice index.
HydroState madelung_decompose(const ComplexLattice& state,
                              double phase_floor = default_phase_floor);

/// Same as madelung_decompose but each phase is unwrapped against the phase of
/// the same node in `previous` (time continuity). Nodes without a defined
/// previous phase fall back to lattice-index unwrapping.
HydroState madelung_decompose_continued(const ComplexLattice& state, const HydroState& previous,
                                        double phase_floor = default_phase_floor);

ComplexLattice madelung_compose(const HydroState& h);

AltHydroState to_alt(const HydroState& h);
HydroState from_alt(const AltHydroState& a);

}  // namespace toymodel
