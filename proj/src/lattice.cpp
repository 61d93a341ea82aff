#include "toymodel/lattice.hpp"

#include <cmath>
#include <numbers>

#include "toymodel/error.hpp"

namespace toymodel {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::domain: return "domain_error";
    case ErrorKind::precondition: return "precondition";
    case ErrorKind::drift_exceeded: return "drift_exceeded";
    case ErrorKind::non_finite: return "non_finite";
    case ErrorKind::vacuum_node: return "vacuum_node";
    case ErrorKind::shape_mismatch: return "shape_mismatch";
    case ErrorKind::index_out_of_range: return "index_out_of_range";
    case ErrorKind::config: return "config";
  }
  return "unknown";
}

bool ComplexLattice::all_finite() const noexcept {
  for (const auto& z : b_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

HydroState::HydroState(std::vector<double> rho_, std::vector<double> phi_)
    : rho(std::move(rho_)), phi(std::move(phi_)), phase_undefined(rho.size(), false) {
  if (rho.size() != phi.size()) {
    throw Error(ErrorKind::shape_mismatch, "HydroState: rho and phi lengths differ");
  }
}

bool HydroState::any_phase_undefined() const noexcept {
  for (bool flag : phase_undefined) {
    if (flag) return true;
  }
  return false;
}

double mass(const ComplexLattice& state) {
  double total = 0.0;
  for (const auto& z : state.values()) total += std::norm(z);
  return total;
}

double hamiltonian(const ComplexLattice& state) {
  const auto b = state.values();
  double total = 0.0;
  for (std::size_t k = 0; k < b.size(); ++k) {
    const double m = std::norm(b[k]);
    total += 0.25 * m * m;
    if (k > 0) {
      const cplx cb = std::conj(b[k]);
      total -= std::real(cb * cb * b[k - 1] * b[k - 1]);
    }
  }
  return total;
}

double mass(std::span<const double> rho) {
  double total = 0.0;
  for (double r : rho) total += r;
  return total;
}

double hamiltonian(const AltHydroState& state) {
  double total = 0.0;
  for (std::size_t k = 0; k < state.size(); ++k) {
    total += 0.25 * state.rho[k] * state.rho[k];
    if (k > 0) total -= state.rho[k] * state.rho[k - 1] * std::cos(2.0 * state.theta[k]);
  }
  return total;
}

double nearest_representative(double angle, double reference) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  return angle + two_pi * std::round((reference - angle) / two_pi);
}

namespace {

HydroState decompose_impl(const ComplexLattice& state, const HydroState* previous,
                          double phase_floor) {
  const std::size_t n = state.size();
  HydroState h;
  h.rho.resize(n);
  h.phi.assign(n, 0.0);
  h.phase_undefined.assign(n, false);
  for (std::size_t k = 0; k < n; ++k) {
    const cplx z = state.values()[k];
    h.rho[k] = std::norm(z);
    if (h.rho[k] <= phase_floor) {
      h.phase_undefined[k] = true;
      continue;
    }
    double phase = std::arg(z);
    if (previous && k < previous->size() && !previous->phase_undefined[k]) {
      phase = nearest_representative(phase, previous->phi[k]);
    } else if (k > 0 && !h.phase_undefined[k - 1]) {
      phase = nearest_representative(phase, h.phi[k - 1]);
    }
    h.phi[k] = phase;
  }
  return h;
}

}  // namespace

HydroState madelung_decompose(const ComplexLattice& state, double phase_floor) {
  if (!(phase_floor > 0.0)) {
    throw Error(ErrorKind::precondition, "madelung_decompose: phase_floor must be positive");
  }
  return decompose_impl(state, nullptr, phase_floor);
}

HydroState madelung_decompose_continued(const ComplexLattice& state, const HydroState& previous,
                                        double phase_floor) {
  if (!(phase_floor > 0.0)) {
    throw Error(ErrorKind::precondition, "madelung_decompose: phase_floor must be positive");
  }
  return decompose_impl(state, &previous, phase_floor);
}

ComplexLattice madelung_compose(const HydroState& h) {
  if (h.rho.size() != h.phi.size()) {
    throw Error(ErrorKind::shape_mismatch, "madelung_compose: rho and phi lengths differ");
  }
  ComplexLattice out(h.size());
  for (std::size_t k = 0; k < h.size(); ++k) {
    if (h.rho[k] < 0.0) {
      throw Error(ErrorKind::domain, "madelung_compose: negative density at node " +
                                         std::to_string(k + 1));
    }
    out.values()[k] = std::polar(std::sqrt(h.rho[k]), h.phi[k]);
  }
  return out;
}

AltHydroState to_alt(const HydroState& h) {
  AltHydroState a;
  a.rho = h.rho;
  a.theta.resize(h.size());
  double previous = 0.0;  // phi_0
  for (std::size_t k = 0; k < h.size(); ++k) {
    a.theta[k] = h.phi[k] - previous;
    previous = h.phi[k];
  }
  return a;
}

HydroState from_alt(const AltHydroState& a) {
  if (a.rho.size() != a.theta.size()) {
    throw Error(ErrorKind::shape_mismatch, "from_alt: rho and theta lengths differ");
  }
  std::vector<double> phi(a.size());
  double running = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    running += a.theta[k];
    phi[k] = running;
  }
  return HydroState(a.rho, std::move(phi));
}

}  // namespace toymodel
