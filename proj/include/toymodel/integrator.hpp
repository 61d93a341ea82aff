#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "toymodel/error.hpp"

namespace toymodel {

struct IntegratorConfig {
  double dt = 1e-3;
  double t_end = 1.0;
  std::size_t sample_every = 1;
  /// Largest tolerated relative drift of the conserved quantities.
  double drift_tol = 1e-8;
  double phase_floor = 1e-12;

  void validate() const;
  /// Number of equal steps covering [0, t_end]; the step is t_end / steps.
  std::size_t steps() const;
};

/// Step size used when none is configured: 1e-3, shrunk for large amplitudes.
double default_step(double eps);

struct Diagnostics {
  double mass = 0.0;
  std::optional<double> hamiltonian;
  std::optional<double> flux;
};

template <class State>
struct Trajectory {
  std::vector<double> times;
  std::vector<State> states;
  std::vector<Diagnostics> diagnostics;

  std::size_t size() const noexcept { return times.size(); }
  bool empty() const noexcept { return times.empty(); }

  void push(double t, State state, Diagnostics diag) {
    if (!times.empty() && !(t > times.back())) {
      throw Error(ErrorKind::precondition, "Trajectory: sample times must increase strictly");
    }
    times.push_back(t);
    states.push_back(std::move(state));
    diagnostics.push_back(diag);
  }
};

/// Classical fourth-order Runge-Kutta on a flat vector. The right-hand side
/// is any callable rhs(std::span<const T> y, std::span<T> dydt).
template <class T>
class Rk4 {
 public:
  explicit Rk4(std::size_t size) : k1_(size), k2_(size), k3_(size), k4_(size), tmp_(size) {}

  template <class Rhs>
  void step(std::vector<T>& y, double h, Rhs&& rhs) {
    const std::size_t n = y.size();
    rhs(std::span<const T>(y), std::span<T>(k1_));
    for (std::size_t i = 0; i < n; ++i) tmp_[i] = y[i] + (0.5 * h) * k1_[i];
    rhs(std::span<const T>(tmp_), std::span<T>(k2_));
    for (std::size_t i = 0; i < n; ++i) tmp_[i] = y[i] + (0.5 * h) * k2_[i];
    rhs(std::span<const T>(tmp_), std::span<T>(k3_));
    for (std::size_t i = 0; i < n; ++i) tmp_[i] = y[i] + h * k3_[i];
    rhs(std::span<const T>(tmp_), std::span<T>(k4_));
    const double w = h / 6.0;
    for (std::size_t i = 0; i < n; ++i) {
      y[i] += w * (k1_[i] + 2.0 * (k2_[i] + k3_[i]) + k4_[i]);
    }
  }

 private:
  std::vector<T> k1_, k2_, k3_, k4_, tmp_;
};

/// Relative drift |q - q0| / scale with scale = |q0| if nonzero, else 1.
inline double relative_drift(double q, double q0) {
  const double scale = q0 != 0.0 ? std::abs(q0) : 1.0;
  return std::abs(q - q0) / scale;
}

/// Hamiltonian drift normalised by max(1, |H0|).
inline double energy_drift(double h, double h0) {
  return std::abs(h - h0) / std::max(1.0, std::abs(h0));
}

}  // namespace toymodel
