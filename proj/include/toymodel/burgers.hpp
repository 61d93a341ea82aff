#pragma once

// Discrete Burgers systems and the exact backward rarefaction wave.
//
//   backward:  rho'_j = -c rho_j (rho_j - rho_{j-1})
//   symmetric: rho'_j = -4 rho_j (rho_{j+1} - rho_{j-1})
//   modified:  theta'_j = -(rho_j - rho_{j-1}),  rho'_j = -8 rho_j (rho_j - rho_{j-1})
//
// From step data rho_j(0) = beta (j >= 1), 0 (j <= 0), the backward system
// with coefficient alpha is solved exactly by
//
//   rho_j(t) = beta Q_{j-1}(alpha beta t) / Q_j(alpha beta t),
//   Q_j(x)   = sum_{k=0..j} x^k / k!.
//
// The backward stencil only reads j and j-1, so restricting this
// half-infinite solution to j = 1..n is an exact solution of the finite
// lattice as well. That restriction is what the perturbation harness
// compares against.

#include <cstddef>
#include <vector>

#include "toymodel/integrator.hpp"
#include "toymodel/lattice.hpp"

namespace toymodel {

struct BurgersProfile {
  std::vector<double> rho;

  std::size_t size() const noexcept { return rho.size(); }
  double at(long j) const noexcept {
    return (j >= 1 && j <= static_cast<long>(rho.size())) ? rho[j - 1] : 0.0;
  }
};

struct ScalingParams {
  double alpha = 1.0;
  double beta = 1.0;

  /// alpha = 8, beta = eps / 8, so alpha * beta = eps.
  static ScalingParams from_epsilon(double eps);
  double epsilon() const noexcept { return alpha * beta; }
  void validate() const;
};

/// Arguments above this are summed in log space.
inline constexpr double log_space_threshold = 600.0;

/// Q_j(x) = sum_{k=0..j} x^k/k!. Overflows to +inf only when the true value does.
double partial_exp(std::size_t j, double x);
/// log Q_j(x), finite for all x >= 0.
double log_partial_exp(std::size_t j, double x);

/// Q_0(x)..Q_m(x) at one argument, kept as the ratios the rarefaction wave
/// needs. Linear arithmetic below log_space_threshold, log space above.
class PartialExpTable {
 public:
  PartialExpTable(std::size_t max_index, double x);

  std::size_t max_index() const noexcept { return log_q_.size() - 1; }
  double x() const noexcept { return x_; }

  /// Q_k itself (may overflow in log mode).
  double value(std::size_t k) const;
  /// Q_{k-1} / Q_k; zero for k = 0.
  double ratio(std::size_t k) const;
  /// (x^k/k!) / Q_k, in (0, 1].
  double tail(std::size_t k) const;
  /// log of tail(k); finite for x > 0 even where tail(k) underflows.
  double log_tail(std::size_t k) const;
  /// log(Q_k / Q_{k-1}) for k >= 1.
  double log_step(std::size_t k) const;
  double log_q(std::size_t k) const { return log_q_.at(k); }

 private:
  double x_;
  bool log_space_;
  std::vector<double> q_, term_;          // linear mode
  std::vector<double> log_q_, log_term_;  // both modes
};

/// beta Q_{j-1}(alpha beta t) / Q_j(alpha beta t); zero for j <= 0.
double exact_backward(long j, double t, const ScalingParams& p);
BurgersProfile exact_backward_profile(std::size_t n, double t, const ScalingParams& p);

/// gamma_j(t) = -(1/8) log(Q_j(eps t) / Q_{j-1}(eps t)), the integrated drift
/// -int_0^t (rho_j - rho_{j-1}) ds of the eps-scaled wave. Zero for j <= 0.
double gamma_tilde(long j, double t, double eps);
/// sigma_j(t) = rho_j(t) - rho_{j-1}(t) for the eps-scaled wave (rho_0 = 0).
double sigma_tilde(long j, double t, double eps);

/// The eps-scaled rarefaction wave on a finite lattice 1..n at one time.
/// Out-of-range reads follow the ghost-zero rule: rho_j = gamma_j = 0 outside
/// 1..n, and sigma_j = rho_j - rho_{j-1} with those ghosts, so
/// sigma_{n+1} = -rho_n and sigma_j = 0 for j <= 0 or j > n + 1.
struct RarefactionSnapshot {
  double t = 0.0;
  double eps = 0.0;
  std::vector<double> rho;
  std::vector<double> gamma;
  std::vector<double> sigma;  // n + 1 entries: sigma_1 .. sigma_{n+1}

  std::size_t size() const noexcept { return rho.size(); }
  double rho_at(long j) const noexcept;
  double gamma_at(long j) const noexcept;
  double sigma_at(long j) const noexcept;
  double theta_at(long j) const noexcept;
  /// d rho_j / dt = -8 rho_j sigma_j.
  double rho_rate_at(long j) const noexcept;
};

RarefactionSnapshot rarefaction_snapshot(double t, double eps, std::size_t n);

/// rho = exact backward wave, theta = pi/4 + gamma on 1..n.
AltHydroState modified_exact(double t, double eps, std::size_t n);

BurgersProfile backward_rhs(const BurgersProfile& p, double coeff);
BurgersProfile symmetric_rhs(const BurgersProfile& p);

/// Even/odd split of a profile: s_j = rho_{2j} for j = 1..floor(n/2) and
/// r_j = rho_{2j+1} for j = 0..floor((n-1)/2), so r_0 = rho_1. Storage is
/// s[k] = s_{k+1} and r[k] = r_k. Under the symmetric system
///   s'_j = -4 s_j (r_j - r_{j-1}),  r'_j = -4 r_j (s_{j+1} - s_j)
/// with s_0 = r_{-1} = 0 and zeros past the end.
struct EvenOddSplit {
  std::vector<double> s;
  std::vector<double> r;

  double s_at(long j) const noexcept {
    return (j >= 1 && j <= static_cast<long>(s.size())) ? s[j - 1] : 0.0;
  }
  double r_at(long j) const noexcept {
    return (j >= 0 && j < static_cast<long>(r.size())) ? r[j] : 0.0;
  }
};

EvenOddSplit even_odd_decompose(const BurgersProfile& p);
BurgersProfile even_odd_merge(const EvenOddSplit& split, std::size_t n);
/// The coupled s/r right-hand side, evaluated on the split variables.
EvenOddSplit even_odd_rhs(const EvenOddSplit& split);

/// rho_j = amplitude on 1..n.
BurgersProfile step_profile(std::size_t n, double amplitude);

enum class BurgersVariant { backward, symmetric, modified };

Trajectory<BurgersProfile> integrate_backward(const BurgersProfile& p0, double coeff,
                                              const IntegratorConfig& cfg);
Trajectory<BurgersProfile> integrate_symmetric(const BurgersProfile& p0,
                                               const IntegratorConfig& cfg);
Trajectory<AltHydroState> integrate_modified(const AltHydroState& a0, const IntegratorConfig& cfg);

}  // namespace toymodel
