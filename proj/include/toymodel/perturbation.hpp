#pragma once

// Deviations of the toy model (difference-phase form) from the exact
// modified-Burgers rarefaction wave, started from theta_j = pi/4,
// rho_j = eps/8 on 1..n:
//
//   theta_hat_j = theta_j - (pi/4 + gamma_j),   rho_hat_j = rho_j - rho~_j.
//
// Their rates split into a linear part, explicit forcing (f1, f2) and a
// remainder. The remainders ("higher order terms") are not modelled: they
// are measured as whatever is left of the exact nonlinear rate after the
// linear and forcing parts are removed.

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "toymodel/burgers.hpp"
#include "toymodel/hydro.hpp"
#include "toymodel/integrator.hpp"
#include "toymodel/lattice.hpp"

namespace toymodel {

struct DeviationSeries {
  std::vector<double> times;
  std::vector<std::vector<double>> theta_hat;
  std::vector<std::vector<double>> rho_hat;
  std::vector<double> sup_theta;
  std::vector<double> sup_rho;
};

/// Subtracts modified_exact(t, eps, n) from every sample. Throws
/// shape_mismatch if the samples do not all have the same lattice size.
DeviationSeries deviations(const Trajectory<AltHydroState>& traj, double eps);

/// (f1)_j = 4 sigma_j gamma_j - 4 (rho_{j+1} gamma_{j+1} - rho_{j-2} gamma_{j-1})
/// on the finite lattice 1..n (see RarefactionSnapshot for ghost reads).
double forcing_f1(long j, double t, double eps, std::size_t n);
/// (f2)_j = -4 rho_j (sigma_{j+1} - sigma_j).
double forcing_f2(long j, double t, double eps, std::size_t n);

double forcing_f1(const RarefactionSnapshot& wave, long j);
double forcing_f2(const RarefactionSnapshot& wave, long j);

/// Every term of the linearised deviation dynamics at one sample. All vectors
/// have n entries; element k belongs to node j = k + 1.
struct LinearizationTerms {
  std::vector<double> theta_hat, rho_hat;
  std::vector<double> theta_hat_rate, rho_hat_rate;
  std::vector<double> linear_theta, linear_rho;
  std::vector<double> f1, f2;
  std::vector<double> hot1, hot2;
  /// F_j = rho_hat_rate_j - linear_rho_j = f2_j + hot2_j.
  std::vector<double> forcing_total;
};

LinearizationTerms linearization_terms(const AltHydroState& state, double t, double eps,
                                       FirstNodePhase first = FirstNodePhase::anchored);

inline double sup_norm(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

/// Lemma constant used when none is given: exp(1/2) / 2.
inline double default_gronwall_constant() { return std::exp(0.5) / 2.0; }

struct GronwallReport {
  double constant = 0.0;
  double horizon = 0.0;
  std::vector<double> times;
  std::vector<double> lhs_theta, envelope_theta;  // |theta_hat|^2 and its bound
  std::vector<double> lhs_rho, envelope_rho;      // |rho_hat|^2 and its bound
  std::vector<std::size_t> violations;            // sample indices
  bool holds() const noexcept { return violations.empty(); }
};

/// Evaluates the two integral bounds
///   |theta_hat(t)|^2 <= C e^{int |rho~|}      int_0^t T (|rho_hat|^2 + |f1|^2 + |hot1|^2) ds
///   |rho_hat(t)|^2   <= C e^{int |rho~ (1 + gamma^2)|} int_0^t T (|f2|^2 + |hot2|^2) ds
/// (sup norms over the lattice, trapezoid rule over the samples) and flags
/// every sample where a left side exceeds its envelope.
GronwallReport gronwall_envelopes(const Trajectory<AltHydroState>& traj, double eps, double horizon,
                                  double constant = default_gronwall_constant(),
                                  FirstNodePhase first = FirstNodePhase::anchored);

/// exp(int_0^T rho~_j ds) = Q_j(eps T)^{1/8}.
double drift_exponent_factor(long j, double horizon, double eps);

struct TheoremOptions {
  double dt = 0.0;  // 0 selects default_step(eps)
  std::size_t sample_every = 1;
  double phase_floor = default_phase_floor;
  double drift_tol = 1e-8;
  FirstNodePhase first = FirstNodePhase::anchored;
};

struct TheoremReport {
  double eps = 0.0;
  std::size_t n = 0;
  double delta = 0.0;
  double horizon = 0.0;
  double max_sup_theta = 0.0;
  double bound_theta = 0.0;  // delta / 8
  double max_sup_rho = 0.0;
  double bound_rho = 0.0;  // delta eps / 12
  long worst_theta_node = 0;
  double worst_theta_time = 0.0;
  long worst_rho_node = 0;
  double worst_rho_time = 0.0;
  /// max over samples and nodes of |theta_hat_j| + |gamma_j|.
  double bootstrap_max = 0.0;
  bool pass = false;
};

/// Integrates the difference-phase system from the rarefaction data up to
/// T = delta / eps and compares with the exact wave. Requires
/// 0 < eps <= 8, 0 < delta < 1 and n >= 1.
TheoremReport verify_theorem(double eps, std::size_t n, double delta,
                             const TheoremOptions& options = {});

/// Runs verify_theorem over the eps x n grid, in parallel across grid points.
/// Reports are ordered eps-major.
std::vector<TheoremReport> verify_theorem_sweep(std::span<const double> eps_values,
                                                std::span<const std::size_t> sizes, double delta,
                                                const TheoremOptions& options = {});

struct L2Sample {
  double t = 0.0;
  double lhs = 0.0;       // (1/2) d/dt sum rho_hat^2
  double boundary = 0.0;  // 2 rho_hat_n^2 (rho~_n + rho~_{n-1})
  double forcing = 0.0;   // sum F_j rho_hat_j
  double margin = 0.0;    // boundary + forcing - lhs
};

std::vector<L2Sample> l2_growth_check(const Trajectory<AltHydroState>& traj, double eps,
                                      FirstNodePhase first = FirstNodePhase::anchored);

}  // namespace toymodel
