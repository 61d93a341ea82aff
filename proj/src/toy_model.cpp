#include "toymodel/toy_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "toymodel/kernels.hpp"

namespace toymodel {

void IntegratorConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw Error(ErrorKind::precondition, "dt must be positive");
  if (!(t_end > 0.0) || !std::isfinite(t_end)) {
    throw Error(ErrorKind::precondition, "t_end must be positive");
  }
  if (dt > t_end) throw Error(ErrorKind::precondition, "dt must not exceed t_end");
  if (sample_every == 0) throw Error(ErrorKind::precondition, "sample_every must be positive");
  if (!(drift_tol > 0.0)) throw Error(ErrorKind::precondition, "drift_tol must be positive");
  if (!(phase_floor > 0.0)) throw Error(ErrorKind::precondition, "phase_floor must be positive");
}

std::size_t IntegratorConfig::steps() const {
  const double ratio = t_end / dt;
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(ratio * (1.0 - 1e-12))));
}

double default_step(double eps) { return 1e-3 * std::min(1.0, 8.0 / eps); }

ComplexLattice toy_rhs(const ComplexLattice& state) {
  ComplexLattice out(state.size());
  kernels::toy_rhs(state.values(), out.values());
  return out;
}

namespace {

Diagnostics toy_diagnostics(const ComplexLattice& s) {
  return Diagnostics{mass(s), hamiltonian(s), std::nullopt};
}

void check_drift(const Diagnostics& d, const Diagnostics& d0, double t, double tol) {
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

Trajectory<ComplexLattice> integrate_toy(const ComplexLattice& b0, const IntegratorConfig& cfg) {
  cfg.validate();
  if (!b0.all_finite()) throw Error(ErrorKind::non_finite, "integrate_toy: initial data not finite");

  const std::size_t steps = cfg.steps();
  const double h = cfg.t_end / static_cast<double>(steps);
  std::vector<cplx> y(b0.storage());
  Rk4<cplx> rk(y.size());
  auto rhs = [](std::span<const cplx> b, std::span<cplx> db) { kernels::toy_rhs(b, db); };

  Trajectory<ComplexLattice> traj;
  const Diagnostics d0 = toy_diagnostics(b0);
  traj.push(0.0, b0, d0);
  for (std::size_t s = 1; s <= steps; ++s) {
    rk.step(y, h, rhs);
    if (s % cfg.sample_every == 0 || s == steps) {
      ComplexLattice state(y);
      const double t = h * static_cast<double>(s);
      if (!state.all_finite()) {
        throw Error(ErrorKind::non_finite, "integrate_toy: non-finite state at t=" + std::to_string(t));
      }
      const Diagnostics d = toy_diagnostics(state);
      check_drift(d, d0, t, cfg.drift_tol);
      traj.push(t, std::move(state), d);
    }
  }
  return traj;
}

ComplexLattice evolve_toy(const ComplexLattice& b0, double dt, double t_end) {
  IntegratorConfig cfg;
  cfg.dt = dt;
  cfg.t_end = t_end;
  cfg.validate();
  const std::size_t steps = cfg.steps();
  const double h = t_end / static_cast<double>(steps);
  std::vector<cplx> y(b0.storage());
  Rk4<cplx> rk(y.size());
  for (std::size_t s = 0; s < steps; ++s) {
    rk.step(y, h, [](std::span<const cplx> b, std::span<cplx> db) { kernels::toy_rhs(b, db); });
  }
  return ComplexLattice(std::move(y));
}

double convergence_order(const ComplexLattice& b0, std::span<const double> dts, double t_end) {
  if (dts.size() < 3) {
    throw Error(ErrorKind::precondition, "convergence_order: need at least three step sizes");
  }
  const double ratio = dts[0] / dts[1];
  if (!(ratio > 1.0 + 1e-12) && !(ratio < 1.0 - 1e-12)) {
    throw Error(ErrorKind::precondition, "convergence_order: step sizes must differ");
  }
  for (std::size_t k = 1; k + 1 < dts.size(); ++k) {
    if (std::abs(dts[k] / dts[k + 1] - ratio) > 1e-9 * ratio) {
      throw Error(ErrorKind::precondition,
                  "convergence_order: step sizes must form a geometric progression");
    }
  }
  std::vector<ComplexLattice> finals;
  finals.reserve(dts.size());
  for (double dt : dts) finals.push_back(evolve_toy(b0, dt, t_end));

  std::vector<double> errors;
  for (std::size_t k = 0; k + 1 < finals.size(); ++k) {
    double e = 0.0;
    for (std::size_t i = 0; i < b0.size(); ++i) {
      e = std::max(e, std::abs(finals[k].values()[i] - finals[k + 1].values()[i]));
    }
    errors.push_back(e);
  }
  double sum = 0.0;
  for (std::size_t k = 0; k + 1 < errors.size(); ++k) {
    sum += std::log(errors[k] / errors[k + 1]) / std::log(std::abs(ratio));
  }
  return sum / static_cast<double>(errors.size() - 1);
}

ComplexLattice shock_initial_data(std::size_t n) {
  ComplexLattice b(n);
  for (std::size_t k = 0; k < n; ++k) {
    b.values()[k] = std::polar(1.0, static_cast<double>(k) * std::numbers::pi / 4.0);
  }
  return b;
}

ComplexLattice rarefaction_initial_data(std::size_t n, double eps) {
  ComplexLattice b(n);
  const double amp = std::sqrt(eps / 8.0);
  for (std::size_t k = 0; k < n; ++k) {
    b.values()[k] = std::polar(amp, static_cast<double>(k + 1) * std::numbers::pi / 4.0);
  }
  return b;
}

ComplexLattice circle_initial_data(std::size_t n, std::size_t node, double phase) {
  if (node < 1 || node > n) {
    throw Error(ErrorKind::index_out_of_range, "circle_initial_data: node outside 1..n");
  }
  ComplexLattice b(n);
  b.set(static_cast<long>(node), std::polar(1.0, phase));
  return b;
}

}  // namespace toymodel
