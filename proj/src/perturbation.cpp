#include "toymodel/perturbation.hpp"

#include <algorithm>
#include <exception>
#include <numbers>

#include "toymodel/error.hpp"
#include "toymodel/kernels.hpp"

namespace toymodel {

namespace {

double ghost(const std::vector<double>& v, long j) {
  return (j >= 1 && j <= static_cast<long>(v.size())) ? v[j - 1] : 0.0;
}

void require_uniform_size(const Trajectory<AltHydroState>& traj, const char* where) {
  if (traj.empty()) throw Error(ErrorKind::precondition, std::string(where) + ": empty trajectory");
  const std::size_t n = traj.states.front().size();
  for (const auto& s : traj.states) {
    if (s.size() != n || s.theta.size() != n) {
      throw Error(ErrorKind::shape_mismatch, std::string(where) + ": samples differ in size");
    }
  }
}

}  // namespace

DeviationSeries deviations(const Trajectory<AltHydroState>& traj, double eps) {
  require_uniform_size(traj, "deviations");
  const std::size_t n = traj.states.front().size();
  DeviationSeries out;
  out.times = traj.times;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const AltHydroState ref = modified_exact(traj.times[i], eps, n);
    const AltHydroState& s = traj.states[i];
    std::vector<double> th(n), rh(n);
    for (std::size_t k = 0; k < n; ++k) {
      th[k] = s.theta[k] - ref.theta[k];
      rh[k] = s.rho[k] - ref.rho[k];
    }
    out.sup_theta.push_back(sup_norm(th));
    out.sup_rho.push_back(sup_norm(rh));
    out.theta_hat.push_back(std::move(th));
    out.rho_hat.push_back(std::move(rh));
  }
  return out;
}

double forcing_f1(const RarefactionSnapshot& w, long j) {
  return 4.0 * w.sigma_at(j) * w.gamma_at(j) -
         4.0 * (w.rho_at(j + 1) * w.gamma_at(j + 1) - w.rho_at(j - 2) * w.gamma_at(j - 1));
}

double forcing_f2(const RarefactionSnapshot& w, long j) {
  return -4.0 * w.rho_at(j) * (w.sigma_at(j + 1) - w.sigma_at(j));
}

namespace {
void require_node(long j, std::size_t n, const char* where) {
  if (j < 1 || j > static_cast<long>(n)) {
    throw Error(ErrorKind::index_out_of_range, std::string(where) + ": node outside 1..n");
  }
}
}  // namespace

double forcing_f1(long j, double t, double eps, std::size_t n) {
  require_node(j, n, "forcing_f1");
  return forcing_f1(rarefaction_snapshot(t, eps, n), j);
}

double forcing_f2(long j, double t, double eps, std::size_t n) {
  require_node(j, n, "forcing_f2");
  return forcing_f2(rarefaction_snapshot(t, eps, n), j);
}

LinearizationTerms linearization_terms(const AltHydroState& state, double t, double eps,
                                       FirstNodePhase first) {
  const std::size_t n = state.size();
  if (state.theta.size() != n) throw Error(ErrorKind::shape_mismatch, "linearization_terms: bad state");
  const RarefactionSnapshot w = rarefaction_snapshot(t, eps, n);

  std::vector<double> drho(n), dtheta(n);
  kernels::alt_hydro_rhs(state.rho, state.theta, drho, dtheta, first);

  LinearizationTerms L;
  for (auto* v : {&L.theta_hat, &L.rho_hat, &L.theta_hat_rate, &L.rho_hat_rate, &L.linear_theta,
                  &L.linear_rho, &L.f1, &L.f2, &L.hot1, &L.hot2, &L.forcing_total}) {
    v->assign(n, 0.0);
  }
  for (std::size_t k = 0; k < n; ++k) {
    L.theta_hat[k] = state.theta[k] - w.theta_at(static_cast<long>(k) + 1);
    L.rho_hat[k] = state.rho[k] - w.rho[k];
  }
  const auto th = [&](long j) { return ghost(L.theta_hat, j); };
  const auto rh = [&](long j) { return ghost(L.rho_hat, j); };

  for (std::size_t k = 0; k < n; ++k) {
    const long j = static_cast<long>(k) + 1;
    L.theta_hat_rate[k] = dtheta[k] + w.sigma_at(j);
    L.rho_hat_rate[k] = drho[k] - w.rho_rate_at(j);

    L.linear_theta[k] = -(rh(j) - rh(j - 1)) * (1.0 - 4.0 * w.gamma_at(j)) +
                        4.0 * w.sigma_at(j) * th(j) - 4.0 * w.gamma_at(j + 1) * rh(j + 1) -
                        4.0 * w.rho_at(j + 1) * th(j + 1) + 4.0 * w.gamma_at(j - 1) * rh(j - 2) +
                        4.0 * w.rho_at(j - 2) * th(j - 1);
    L.linear_rho[k] = -4.0 * rh(j) * (w.rho_at(j + 1) - w.rho_at(j - 1)) -
                      4.0 * w.rho_at(j) * rh(j + 1) + 4.0 * w.rho_at(j) * rh(j - 1);
    L.f1[k] = forcing_f1(w, j);
    L.f2[k] = forcing_f2(w, j);
    L.hot1[k] = L.theta_hat_rate[k] - L.linear_theta[k] - L.f1[k];
    L.hot2[k] = L.rho_hat_rate[k] - L.linear_rho[k] - L.f2[k];
    L.forcing_total[k] = L.rho_hat_rate[k] - L.linear_rho[k];
  }
  return L;
}

double drift_exponent_factor(long j, double horizon, double eps) {
  if (j <= 0) return 1.0;
  return std::exp(log_partial_exp(static_cast<std::size_t>(j), eps * horizon) / 8.0);
}

GronwallReport gronwall_envelopes(const Trajectory<AltHydroState>& traj, double eps, double horizon,
                                  double constant, FirstNodePhase first) {
  require_uniform_size(traj, "gronwall_envelopes");
  const std::size_t n = traj.states.front().size();
  GronwallReport rep;
  rep.constant = constant;
  rep.horizon = horizon;

  // Running trapezoid integrals of the integrands.
  double exp_theta = 0.0, exp_rho = 0.0, src_theta = 0.0, src_rho = 0.0;
  double prev_t = 0.0, prev_a = 0.0, prev_b = 0.0, prev_c = 0.0, prev_d = 0.0;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const double t = traj.times[i];
    const LinearizationTerms L = linearization_terms(traj.states[i], t, eps, first);
    const RarefactionSnapshot w = rarefaction_snapshot(t, eps, n);

    double drift_theta = 0.0, drift_rho = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      drift_theta = std::max(drift_theta, std::abs(w.rho[k]));
      drift_rho = std::max(drift_rho, std::abs(w.rho[k] * (1.0 + w.gamma[k] * w.gamma[k])));
    }
    const double r = sup_norm(L.rho_hat), f1 = sup_norm(L.f1), h1 = sup_norm(L.hot1);
    const double f2 = sup_norm(L.f2), h2 = sup_norm(L.hot2);
    const double a = drift_theta, b = drift_rho;
    const double c = horizon * (r * r + f1 * f1 + h1 * h1);
    const double d = horizon * (f2 * f2 + h2 * h2);
    if (i > 0) {
      const double dt = t - prev_t;
      exp_theta += 0.5 * dt * (a + prev_a);
      exp_rho += 0.5 * dt * (b + prev_b);
      src_theta += 0.5 * dt * (c + prev_c);
      src_rho += 0.5 * dt * (d + prev_d);
    }
    prev_t = t, prev_a = a, prev_b = b, prev_c = c, prev_d = d;

    const double th = sup_norm(L.theta_hat);
    rep.times.push_back(t);
    rep.lhs_theta.push_back(th * th);
    rep.envelope_theta.push_back(constant * std::exp(exp_theta) * src_theta);
    rep.lhs_rho.push_back(r * r);
    rep.envelope_rho.push_back(constant * std::exp(exp_rho) * src_rho);
    if (rep.lhs_theta.back() > rep.envelope_theta.back() ||
        rep.lhs_rho.back() > rep.envelope_rho.back()) {
      rep.violations.push_back(i);
    }
  }
  return rep;
}

TheoremReport verify_theorem(double eps, std::size_t n, double delta, const TheoremOptions& options) {
  if (!(eps > 0.0) || eps / 8.0 > 1.0) {
    throw Error(ErrorKind::precondition, "verify_theorem: requires 0 < eps/8 <= 1");
  }
  if (!(delta > 0.0) || !(delta < 1.0)) {
    throw Error(ErrorKind::precondition, "verify_theorem: requires 0 < delta < 1");
  }
  if (n == 0) throw Error(ErrorKind::precondition, "verify_theorem: requires n >= 1");

  TheoremReport rep;
  rep.eps = eps;
  rep.n = n;
  rep.delta = delta;
  rep.horizon = delta / eps;
  rep.bound_theta = delta / 8.0;
  rep.bound_rho = delta * eps / 12.0;

  IntegratorConfig cfg;
  cfg.t_end = rep.horizon;
  cfg.dt = std::min(options.dt > 0.0 ? options.dt : default_step(eps), rep.horizon);
  cfg.sample_every = options.sample_every;
  cfg.phase_floor = options.phase_floor;
  cfg.drift_tol = options.drift_tol;
  const auto traj = integrate_alt(rarefaction_alt_data(n, eps), cfg, options.first);

  for (std::size_t i = 0; i < traj.size(); ++i) {
    const double t = traj.times[i];
    const RarefactionSnapshot w = rarefaction_snapshot(t, eps, n);
    const AltHydroState& s = traj.states[i];
    for (std::size_t k = 0; k < n; ++k) {
      const long j = static_cast<long>(k) + 1;
      const double th = std::abs(s.theta[k] - w.theta_at(j));
      const double rh = std::abs(s.rho[k] - w.rho[k]);
      if (th > rep.max_sup_theta) {
        rep.max_sup_theta = th;
        rep.worst_theta_node = j;
        rep.worst_theta_time = t;
      }
      if (rh > rep.max_sup_rho) {
        rep.max_sup_rho = rh;
        rep.worst_rho_node = j;
        rep.worst_rho_time = t;
      }
      rep.bootstrap_max = std::max(rep.bootstrap_max, th + std::abs(w.gamma[k]));
    }
  }
  rep.pass = rep.max_sup_theta <= rep.bound_theta && rep.max_sup_rho <= rep.bound_rho;
  return rep;
}

std::vector<TheoremReport> verify_theorem_sweep(std::span<const double> eps_values,
                                                std::span<const std::size_t> sizes, double delta,
                                                const TheoremOptions& options) {
  const std::size_t total = eps_values.size() * sizes.size();
  std::vector<TheoremReport> reports(total);
  std::vector<std::exception_ptr> failures(total);
#pragma omp parallel for schedule(dynamic)
  for (std::size_t idx = 0; idx < total; ++idx) {
    try {
      reports[idx] =
          verify_theorem(eps_values[idx / sizes.size()], sizes[idx % sizes.size()], delta, options);
    } catch (...) {
      failures[idx] = std::current_exception();
    }
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
  return reports;
}

std::vector<L2Sample> l2_growth_check(const Trajectory<AltHydroState>& traj, double eps,
                                      FirstNodePhase first) {
  require_uniform_size(traj, "l2_growth_check");
  const std::size_t n = traj.states.front().size();
  std::vector<L2Sample> out;
  out.reserve(traj.size());
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const double t = traj.times[i];
    const LinearizationTerms L = linearization_terms(traj.states[i], t, eps, first);
    const RarefactionSnapshot w = rarefaction_snapshot(t, eps, n);
    L2Sample s;
    s.t = t;
    for (std::size_t k = 0; k < n; ++k) {
      s.lhs += L.rho_hat[k] * L.rho_hat_rate[k];
      s.forcing += L.forcing_total[k] * L.rho_hat[k];
    }
    const long last = static_cast<long>(n);
    const double edge = L.rho_hat[n - 1];
    s.boundary = 2.0 * edge * edge * (w.rho_at(last) + w.rho_at(last - 1));
    s.margin = s.boundary + s.forcing - s.lhs;
    out.push_back(s);
  }
  return out;
}

}  // namespace toymodel
