#include "toymodel/hydro.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace toymodel {

void require_positive_density(std::span<const double> rho, double phase_floor, const char* where) {
  for (std::size_t k = 0; k < rho.size(); ++k) {
    if (!(rho[k] > phase_floor)) {
      std::ostringstream msg;
      msg << where << ": density " << rho[k] << " at node " << (k + 1)
          << " is at or below the phase floor " << phase_floor;
      throw Error(ErrorKind::vacuum_node, msg.str());
    }
  }
}

HydroDerivative hydro_rhs(const HydroState& h, double phase_floor) {
  require_positive_density(h.rho, phase_floor, "hydro_rhs");
  HydroDerivative d{std::vector<double>(h.size()), std::vector<double>(h.size())};
  kernels::hydro_rhs(h.rho, h.phi, d.drho, d.dphi);
  return d;
}

AltHydroDerivative alt_hydro_rhs(const AltHydroState& a, FirstNodePhase first, double phase_floor) {
  require_positive_density(a.rho, phase_floor, "alt_hydro_rhs");
  AltHydroDerivative d{std::vector<double>(a.size()), std::vector<double>(a.size())};
  kernels::alt_hydro_rhs(a.rho, a.theta, d.drho, d.dtheta, first);
  return d;
}

namespace {

bool finite(std::span<const double> v) {
  for (double x : v) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

// Integrates a packed [rho..., angle...] vector and hands every sample to
// `emit`. The packing keeps one RK4 stepper for both hydro forms.
template <class Kernel, class Emit>
void integrate_packed(std::vector<double> y, std::size_t n, const IntegratorConfig& cfg,
                      Kernel&& kernel, Emit&& emit, const char* where) {
  const std::size_t steps = cfg.steps();
  const double h = cfg.t_end / static_cast<double>(steps);
  Rk4<double> rk(y.size());
  auto rhs = [&](std::span<const double> s, std::span<double> ds) {
    kernel(s.first(n), s.subspan(n), ds.first(n), ds.subspan(n));
  };
  for (std::size_t s = 1; s <= steps; ++s) {
    rk.step(y, h, rhs);
    const std::span<const double> rho(y.data(), n);
    if (!finite(y)) {
      throw Error(ErrorKind::non_finite, std::string(where) + ": non-finite state");
    }
    require_positive_density(rho, cfg.phase_floor, where);
    if (s % cfg.sample_every == 0 || s == steps) emit(h * static_cast<double>(s), y);
  }
}

void check_mass_energy(const Diagnostics& d, const Diagnostics& d0, double t, double tol) {
  const double dm = relative_drift(d.mass, d0.mass);
  const double dh = energy_drift(*d.hamiltonian, *d0.hamiltonian);
  if (dm > tol || dh > tol) {
    std::ostringstream msg;
    msg << "conservation drift exceeded at t=" << t << ": mass drift " << dm
        << ", hamiltonian drift " << dh << " (tol " << tol << ")";
    throw Error(ErrorKind::drift_exceeded, msg.str());
  }
}

}  // namespace

Trajectory<HydroState> integrate_hydro(const HydroState& h0, const IntegratorConfig& cfg) {
  cfg.validate();
  const std::size_t n = h0.size();
  if (h0.phi.size() != n) throw Error(ErrorKind::shape_mismatch, "integrate_hydro: bad state");
  require_positive_density(h0.rho, cfg.phase_floor, "integrate_hydro");

  auto diagnostics = [](const HydroState& s) {
    return Diagnostics{mass(s.rho), hamiltonian(to_alt(s)), std::nullopt};
  };
  Trajectory<HydroState> traj;
  const Diagnostics d0 = diagnostics(h0);
  traj.push(0.0, HydroState(h0.rho, h0.phi), d0);

  std::vector<double> y(h0.rho);
  y.insert(y.end(), h0.phi.begin(), h0.phi.end());
  integrate_packed(
      std::move(y), n, cfg,
      [](auto rho, auto phi, auto drho, auto dphi) { kernels::hydro_rhs(rho, phi, drho, dphi); },
      [&](double t, const std::vector<double>& s) {
        HydroState state(std::vector<double>(s.begin(), s.begin() + n),
                         std::vector<double>(s.begin() + n, s.end()));
        const Diagnostics d = diagnostics(state);
        check_mass_energy(d, d0, t, cfg.drift_tol);
        traj.push(t, std::move(state), d);
      },
      "integrate_hydro");
  return traj;
}

Trajectory<AltHydroState> integrate_alt(const AltHydroState& a0, const IntegratorConfig& cfg,
                                        FirstNodePhase first) {
  cfg.validate();
  const std::size_t n = a0.size();
  if (a0.theta.size() != n) throw Error(ErrorKind::shape_mismatch, "integrate_alt: bad state");
  require_positive_density(a0.rho, cfg.phase_floor, "integrate_alt");

  auto diagnostics = [](const AltHydroState& s) {
    return Diagnostics{mass(s.rho), hamiltonian(s), std::nullopt};
  };
  Trajectory<AltHydroState> traj;
  const Diagnostics d0 = diagnostics(a0);
  traj.push(0.0, a0, d0);

  std::vector<double> y(a0.rho);
  y.insert(y.end(), a0.theta.begin(), a0.theta.end());
  integrate_packed(
      std::move(y), n, cfg,
      [first](auto rho, auto theta, auto drho, auto dtheta) {
        kernels::alt_hydro_rhs(rho, theta, drho, dtheta, first);
      },
      [&](double t, const std::vector<double>& s) {
        AltHydroState state{std::vector<double>(s.begin(), s.begin() + n),
                            std::vector<double>(s.begin() + n, s.end())};
        const Diagnostics d = diagnostics(state);
        check_mass_energy(d, d0, t, cfg.drift_tol);
        traj.push(t, std::move(state), d);
      },
      "integrate_alt");
  return traj;
}

Trajectory<HydroState> to_hydro_series(const Trajectory<ComplexLattice>& traj, double phase_floor) {
  Trajectory<HydroState> out;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    HydroState h = i == 0 ? madelung_decompose(traj.states[0], phase_floor)
                          : madelung_decompose_continued(traj.states[i], out.states.back(),
                                                         phase_floor);
    out.push(traj.times[i], std::move(h), traj.diagnostics[i]);
  }
  return out;
}

Trajectory<AltHydroState> to_alt_series(const Trajectory<HydroState>& traj) {
  Trajectory<AltHydroState> out;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    out.push(traj.times[i], to_alt(traj.states[i]), traj.diagnostics[i]);
  }
  return out;
}

Trajectory<AltHydroState> to_alt_series(const Trajectory<ComplexLattice>& traj, double phase_floor) {
  return to_alt_series(to_hydro_series(traj, phase_floor));
}

AltHydroState rarefaction_alt_data(std::size_t n, double eps) {
  return AltHydroState{std::vector<double>(n, eps / 8.0),
                       std::vector<double>(n, std::numbers::pi / 4.0)};
}

}  // namespace toymodel
