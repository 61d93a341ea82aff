#include "toymodel/burgers.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "toymodel/error.hpp"
#include "toymodel/kernels.hpp"

namespace toymodel {

namespace {

double log_add_exp(double a, double b) {
  if (a < b) std::swap(a, b);
  if (b == -INFINITY) return a;
  return a + std::log1p(std::exp(b - a));
}

// log(1 + exp(z)) without overflow.
double softplus(double z) { return z > 30.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

void require_nonnegative(double x, const char* what) {
  if (!(x >= 0.0) || !std::isfinite(x)) throw Error(ErrorKind::precondition, what);
}

}  // namespace

ScalingParams ScalingParams::from_epsilon(double eps) {
  ScalingParams p{8.0, eps / 8.0};
  p.validate();
  return p;
}

void ScalingParams::validate() const {
  if (!(alpha > 0.0) || !(beta > 0.0)) {
    throw Error(ErrorKind::precondition, "ScalingParams: alpha and beta must be positive");
  }
}

// ---------------------------------------------------------------------------

PartialExpTable::PartialExpTable(std::size_t max_index, double x)
    : x_(x), log_space_(x >= log_space_threshold) {
  require_nonnegative(x, "PartialExpTable: argument must be finite and nonnegative");
  const std::size_t m = max_index + 1;
  log_q_.resize(m);
  log_term_.resize(m);
  if (!log_space_) {
    q_.resize(m);
    term_.resize(m);
    // Neumaier-compensated running sum; every term is positive.
    double term = 1.0, sum = 1.0, comp = 0.0;
    term_[0] = 1.0;
    q_[0] = 1.0;
    for (std::size_t k = 1; k < m; ++k) {
      term *= x / static_cast<double>(k);
      const double next = sum + term;
      comp += (sum >= term) ? (sum - next) + term : (term - next) + sum;
      sum = next;
      term_[k] = term;
      q_[k] = sum + comp;
    }
    // The log terms come from their own recurrence so they stay finite where
    // the linear terms underflow.
    const double log_x = std::log(x);
    for (std::size_t k = 0; k < m; ++k) {
      log_q_[k] = std::log(q_[k]);
      log_term_[k] = (k == 0 || x == 0.0)
                         ? std::log(term_[k])
                         : log_term_[k - 1] + log_x - std::log(static_cast<double>(k));
    }
  } else {
    const double log_x = std::log(x);
    log_term_[0] = 0.0;
    log_q_[0] = 0.0;
    for (std::size_t k = 1; k < m; ++k) {
      log_term_[k] = log_term_[k - 1] + log_x - std::log(static_cast<double>(k));
      log_q_[k] = log_add_exp(log_q_[k - 1], log_term_[k]);
    }
  }
}

double PartialExpTable::ratio(std::size_t k) const {
  if (k == 0) return 0.0;
  // Q_{k-1}/Q_k = 1 - tail_k; near 1 this form is monotone in x and k after rounding.
  const double tl = tail(k);
  if (tl <= 0.5) return 1.0 - tl;
  if (!log_space_) return q_.at(k - 1) / q_.at(k);
  return std::exp(log_q_.at(k - 1) - log_q_.at(k));
}

double PartialExpTable::value(std::size_t k) const {
  return log_space_ ? std::exp(log_q_.at(k)) : q_.at(k);
}

double PartialExpTable::tail(std::size_t k) const {
  if (!log_space_) return term_.at(k) / q_.at(k);
  return std::exp(log_term_.at(k) - log_q_.at(k));
}

double PartialExpTable::log_tail(std::size_t k) const {
  return log_term_.at(k) - log_q_.at(k);
}

double PartialExpTable::log_step(std::size_t k) const {
  if (k == 0) throw Error(ErrorKind::index_out_of_range, "PartialExpTable::log_step needs k >= 1");
  if (!log_space_) return std::log1p(term_.at(k) / q_.at(k - 1));
  return softplus(log_term_.at(k) - log_q_.at(k - 1));
}

double partial_exp(std::size_t j, double x) {
  require_nonnegative(x, "partial_exp: argument must be finite and nonnegative");
  if (x < log_space_threshold) {
    return PartialExpTable(j, x).value(j);
  }
  return std::exp(log_partial_exp(j, x));
}

double log_partial_exp(std::size_t j, double x) { return PartialExpTable(j, x).log_q(j); }

// ---------------------------------------------------------------------------

double exact_backward(long j, double t, const ScalingParams& p) {
  p.validate();
  require_nonnegative(t, "exact_backward: t must be nonnegative");
  if (j <= 0) return 0.0;
  const PartialExpTable table(static_cast<std::size_t>(j), p.alpha * p.beta * t);
  return p.beta * table.ratio(static_cast<std::size_t>(j));
}

BurgersProfile exact_backward_profile(std::size_t n, double t, const ScalingParams& p) {
  p.validate();
  require_nonnegative(t, "exact_backward_profile: t must be nonnegative");
  const PartialExpTable table(n, p.alpha * p.beta * t);
  BurgersProfile out{std::vector<double>(n)};
  for (std::size_t k = 0; k < n; ++k) out.rho[k] = p.beta * table.ratio(k + 1);
  return out;
}

namespace {

// rho_j - rho_{j-1} from the table, in whichever form avoids cancellation:
// rho_k / beta = 1 - tail_k, so the difference is tail_{j-1} - tail_j.
double sigma_from_table(const PartialExpTable& table, std::size_t j, double beta) {
  const double upper = table.tail(j - 1);
  if (upper <= 0.5) return beta * (upper - table.tail(j));
  return beta * (table.ratio(j) - table.ratio(j - 1));
}

}  // namespace

double gamma_tilde(long j, double t, double eps) {
  require_nonnegative(t, "gamma_tilde: t must be nonnegative");
  if (!(eps > 0.0)) throw Error(ErrorKind::precondition, "gamma_tilde: eps must be positive");
  if (j <= 0) return 0.0;
  const PartialExpTable table(static_cast<std::size_t>(j), eps * t);
  return -table.log_step(static_cast<std::size_t>(j)) / 8.0;
}

double sigma_tilde(long j, double t, double eps) {
  require_nonnegative(t, "sigma_tilde: t must be nonnegative");
  if (!(eps > 0.0)) throw Error(ErrorKind::precondition, "sigma_tilde: eps must be positive");
  if (j <= 0) return 0.0;
  const PartialExpTable table(static_cast<std::size_t>(j), eps * t);
  return sigma_from_table(table, static_cast<std::size_t>(j), eps / 8.0);
}

double RarefactionSnapshot::rho_at(long j) const noexcept {
  return (j >= 1 && j <= static_cast<long>(rho.size())) ? rho[j - 1] : 0.0;
}

double RarefactionSnapshot::gamma_at(long j) const noexcept {
  return (j >= 1 && j <= static_cast<long>(gamma.size())) ? gamma[j - 1] : 0.0;
}

double RarefactionSnapshot::sigma_at(long j) const noexcept {
  return (j >= 1 && j <= static_cast<long>(sigma.size())) ? sigma[j - 1] : 0.0;
}

double RarefactionSnapshot::theta_at(long j) const noexcept {
  return std::numbers::pi / 4.0 + gamma_at(j);
}

double RarefactionSnapshot::rho_rate_at(long j) const noexcept {
  if (j < 1 || j > static_cast<long>(rho.size())) return 0.0;
  return -8.0 * rho[j - 1] * sigma[j - 1];
}

RarefactionSnapshot rarefaction_snapshot(double t, double eps, std::size_t n) {
  require_nonnegative(t, "rarefaction_snapshot: t must be nonnegative");
  if (!(eps > 0.0)) throw Error(ErrorKind::precondition, "rarefaction_snapshot: eps must be positive");
  const PartialExpTable table(n, eps * t);
  const double beta = eps / 8.0;
  RarefactionSnapshot snap;
  snap.t = t;
  snap.eps = eps;
  snap.rho.resize(n);
  snap.gamma.resize(n);
  snap.sigma.resize(n + 1);
  for (std::size_t j = 1; j <= n; ++j) {
    snap.rho[j - 1] = beta * table.ratio(j);
    snap.gamma[j - 1] = -table.log_step(j) / 8.0;
    snap.sigma[j - 1] = sigma_from_table(table, j, beta);
  }
  snap.sigma[n] = n > 0 ? -snap.rho[n - 1] : 0.0;
  return snap;
}

AltHydroState modified_exact(double t, double eps, std::size_t n) {
  const RarefactionSnapshot snap = rarefaction_snapshot(t, eps, n);
  AltHydroState out;
  out.rho = snap.rho;
  out.theta.resize(n);
  for (std::size_t k = 0; k < n; ++k) out.theta[k] = std::numbers::pi / 4.0 + snap.gamma[k];
  return out;
}

// ---------------------------------------------------------------------------

BurgersProfile backward_rhs(const BurgersProfile& p, double coeff) {
  BurgersProfile out{std::vector<double>(p.size())};
  kernels::backward_burgers_rhs(p.rho, coeff, out.rho);
  return out;
}

BurgersProfile symmetric_rhs(const BurgersProfile& p) {
  BurgersProfile out{std::vector<double>(p.size())};
  kernels::symmetric_burgers_rhs(p.rho, out.rho);
  return out;
}

EvenOddSplit even_odd_decompose(const BurgersProfile& p) {
  EvenOddSplit split;
  for (std::size_t j = 2; j <= p.size(); j += 2) split.s.push_back(p.rho[j - 1]);
  for (std::size_t j = 1; j <= p.size(); j += 2) split.r.push_back(p.rho[j - 1]);
  return split;
}

BurgersProfile even_odd_merge(const EvenOddSplit& split, std::size_t n) {
  if (split.s.size() != n / 2 || split.r.size() != (n + 1) / 2) {
    throw Error(ErrorKind::shape_mismatch, "even_odd_merge: split does not match lattice size");
  }
  BurgersProfile p{std::vector<double>(n)};
  for (std::size_t k = 0; k < split.s.size(); ++k) p.rho[2 * k + 1] = split.s[k];
  for (std::size_t k = 0; k < split.r.size(); ++k) p.rho[2 * k] = split.r[k];
  return p;
}

EvenOddSplit even_odd_rhs(const EvenOddSplit& split) {
  EvenOddSplit d{std::vector<double>(split.s.size()), std::vector<double>(split.r.size())};
  for (std::size_t k = 0; k < split.s.size(); ++k) {
    const long j = static_cast<long>(k) + 1;
    d.s[k] = -4.0 * split.s[k] * (split.r_at(j) - split.r_at(j - 1));
  }
  for (std::size_t k = 0; k < split.r.size(); ++k) {
    const long j = static_cast<long>(k);
    d.r[k] = -4.0 * split.r[k] * (split.s_at(j + 1) - split.s_at(j));
  }
  return d;
}

BurgersProfile step_profile(std::size_t n, double amplitude) {
  return BurgersProfile{std::vector<double>(n, amplitude)};
}

namespace {

bool finite(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

template <class Kernel>
Trajectory<BurgersProfile> integrate_profile(const BurgersProfile& p0, const IntegratorConfig& cfg,
                                             Kernel&& kernel, const char* where) {
  cfg.validate();
  const std::size_t steps = cfg.steps();
  const double h = cfg.t_end / static_cast<double>(steps);
  std::vector<double> y(p0.rho);
  Rk4<double> rk(y.size());
  Trajectory<BurgersProfile> traj;
  traj.push(0.0, p0, Diagnostics{mass(p0.rho), std::nullopt, std::nullopt});
  for (std::size_t s = 1; s <= steps; ++s) {
    rk.step(y, h, kernel);
    if (s % cfg.sample_every == 0 || s == steps) {
      if (!finite(y)) throw Error(ErrorKind::non_finite, std::string(where) + ": non-finite state");
      traj.push(h * static_cast<double>(s), BurgersProfile{y},
                Diagnostics{mass(y), std::nullopt, std::nullopt});
    }
  }
  return traj;
}

}  // namespace

Trajectory<BurgersProfile> integrate_backward(const BurgersProfile& p0, double coeff,
                                              const IntegratorConfig& cfg) {
  return integrate_profile(
      p0, cfg,
      [coeff](std::span<const double> r, std::span<double> dr) {
        kernels::backward_burgers_rhs(r, coeff, dr);
      },
      "integrate_backward");
}

Trajectory<BurgersProfile> integrate_symmetric(const BurgersProfile& p0,
                                               const IntegratorConfig& cfg) {
  return integrate_profile(
      p0, cfg,
      [](std::span<const double> r, std::span<double> dr) { kernels::symmetric_burgers_rhs(r, dr); },
      "integrate_symmetric");
}

Trajectory<AltHydroState> integrate_modified(const AltHydroState& a0, const IntegratorConfig& cfg) {
  cfg.validate();
  const std::size_t n = a0.size();
  if (a0.theta.size() != n) throw Error(ErrorKind::shape_mismatch, "integrate_modified: bad state");
  const std::size_t steps = cfg.steps();
  const double h = cfg.t_end / static_cast<double>(steps);
  std::vector<double> y(a0.rho);
  y.insert(y.end(), a0.theta.begin(), a0.theta.end());
  Rk4<double> rk(y.size());
  auto rhs = [n](std::span<const double> s, std::span<double> ds) {
    kernels::modified_burgers_rhs(s.first(n), ds.first(n), ds.subspan(n));
  };
  Trajectory<AltHydroState> traj;
  traj.push(0.0, a0, Diagnostics{mass(a0.rho), std::nullopt, std::nullopt});
  for (std::size_t s = 1; s <= steps; ++s) {
    rk.step(y, h, rhs);
    if (s % cfg.sample_every == 0 || s == steps) {
      if (!finite(y)) throw Error(ErrorKind::non_finite, "integrate_modified: non-finite state");
      AltHydroState state{std::vector<double>(y.begin(), y.begin() + n),
                          std::vector<double>(y.begin() + n, y.end())};
      const Diagnostics d{mass(state.rho), std::nullopt, std::nullopt};
      traj.push(h * static_cast<double>(s), std::move(state), d);
    }
  }
  return traj;
}

}  // namespace toymodel
