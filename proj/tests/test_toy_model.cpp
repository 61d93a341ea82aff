#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "support.hpp"
#include "toymodel/error.hpp"
#include "toymodel/toy_model.hpp"

using namespace toymodel;
using std::numbers::pi;

TEST_CASE("right-hand side at hand-solvable states") {
  ComplexLattice single(10);
  single.set(5, 1.0);
  const ComplexLattice d = toy_rhs(single);
  CHECK(d.at(5) == cplx(0.0, -1.0));
  for (long j = 1; j <= 10; ++j) {
    if (j != 5) CHECK(d.at(j) == cplx{});
  }

  const ComplexLattice zero = toy_rhs(ComplexLattice(4));
  for (const auto& z : zero.values()) CHECK(z == cplx{});

  ComplexLattice pair(2);
  pair.set(1, 1.0);
  pair.set(2, 1.0);
  const ComplexLattice dp = toy_rhs(pair);
  CHECK(dp.at(1) == cplx(0.0, 1.0));
  CHECK(dp.at(2) == cplx(0.0, 1.0));
}

TEST_CASE("single node rotates as exp(-i t)") {
  ComplexLattice b(10);
  b.set(5, 1.0);
  IntegratorConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_end = pi;
  const auto traj = integrate_toy(b, cfg);
  CHECK(std::abs(traj.states.back().at(5) - cplx(-1.0, 0.0)) < 1e-10);
  CHECK(traj.times.back() == doctest::Approx(pi).epsilon(1e-15));
}

TEST_CASE("invariant circles stay invariant") {
  for (std::size_t node : {1u, 4u, 9u}) {
    IntegratorConfig cfg;
    cfg.t_end = 2.0;
    cfg.sample_every = 50;
    const auto traj = integrate_toy(circle_initial_data(9, node, 0.3), cfg);
    for (const auto& s : traj.states) {
      CHECK(std::abs(std::abs(s.at(static_cast<long>(node))) - 1.0) < 1e-10);
      for (long j = 1; j <= 9; ++j) {
        if (j != static_cast<long>(node)) CHECK(std::abs(s.at(j)) < 1e-12);
      }
    }
  }
}

TEST_CASE("conservation on the shock data") {
  IntegratorConfig cfg;
  cfg.t_end = 1.0;
  cfg.drift_tol = 1e-10;
  const auto traj = integrate_toy(shock_initial_data(32), cfg);
  const auto& d0 = traj.diagnostics.front();
  for (const auto& d : traj.diagnostics) {
    CHECK(relative_drift(d.mass, d0.mass) < 1e-10);
    CHECK(energy_drift(*d.hamiltonian, *d0.hamiltonian) < 1e-10);
  }
  // Step halving: the final state moves by O(dt^4) only.
  const ComplexLattice half = evolve_toy(shock_initial_data(32), 5e-4, 1.0);
  double diff = 0.0;
  for (std::size_t k = 0; k < 32; ++k) {
    diff = std::max(diff, std::abs(half.values()[k] - traj.states.back().values()[k]));
  }
  CHECK(diff < 1e-9);
}

TEST_CASE("empirical order of accuracy is four") {
  ComplexLattice single(3);
  single.set(2, 1.0);
  const std::vector<double> dts = {1e-2, 5e-3, 2.5e-3};
  const double p1 = convergence_order(single, dts, 1.0);
  CHECK(p1 >= 3.8);
  CHECK(p1 <= 4.2);

  auto g = testing::rng(4);
  const ComplexLattice small = testing::random_lattice(g, 12, 0.05, 0.1);
  const std::vector<double> coarse = {0.4, 0.2, 0.1};
  const double p2 = convergence_order(small, coarse, 40.0);
  CHECK(p2 >= 3.8);
  CHECK(p2 <= 4.2);

  const std::vector<double> same = {1e-3, 1e-3, 1e-3};
  CHECK_THROWS_AS(convergence_order(single, same), Error);
  const std::vector<double> two = {1e-2, 5e-3};
  CHECK_THROWS_AS(convergence_order(single, two), Error);
  const std::vector<double> uneven = {1e-2, 5e-3, 1e-3};
  CHECK_THROWS_AS(convergence_order(single, uneven), Error);
}

TEST_CASE("global phase equivariance") {
  auto g = testing::rng(9);
  const ComplexLattice b = testing::random_lattice(g, 16);
  const cplx rot = std::polar(1.0, 1.234);
  ComplexLattice rb = b;
  for (auto& z : rb.storage()) z *= rot;
  const ComplexLattice x = evolve_toy(b, 1e-3, 1.0);
  const ComplexLattice y = evolve_toy(rb, 1e-3, 1.0);
  for (std::size_t k = 0; k < 16; ++k) CHECK(std::abs(y.values()[k] - rot * x.values()[k]) < 1e-10);
}

TEST_CASE("nodes outside the initial support stay exactly zero") {
  ComplexLattice b(10);
  b.set(1, 0.8);
  b.set(2, cplx(0.3, 0.4));
  b.set(3, -0.5);
  const ComplexLattice end = evolve_toy(b, 1e-3, 3.0);
  for (long j = 4; j <= 10; ++j) CHECK(end.at(j) == cplx{});
}

TEST_CASE("integration errors") {
  IntegratorConfig bad;
  bad.dt = 0.0;
  CHECK_THROWS_AS(integrate_toy(shock_initial_data(4), bad), Error);

  IntegratorConfig coarse;
  coarse.dt = 0.2;
  coarse.t_end = 2.0;
  coarse.drift_tol = 1e-14;
  try {
    integrate_toy(shock_initial_data(8), coarse);
    FAIL("expected drift failure");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::drift_exceeded);
  }

  ComplexLattice nan(3);
  nan.set(2, cplx(std::nan(""), 0.0));
  try {
    integrate_toy(nan, IntegratorConfig{});
    FAIL("expected non-finite failure");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::non_finite);
  }
}

TEST_CASE("sampling keeps the first and last times") {
  IntegratorConfig cfg;
  cfg.dt = 0.01;
  cfg.t_end = 1.0;
  cfg.sample_every = 30;
  cfg.drift_tol = 1e-6;
  const auto traj = integrate_toy(shock_initial_data(4), cfg);
  CHECK(traj.times.front() == 0.0);
  CHECK(traj.times.back() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(traj.size() == 5);  // 0, 0.3, 0.6, 0.9, 1.0
  CHECK(default_step(1.0) == 1e-3);
  CHECK(default_step(16.0) == doctest::Approx(5e-4));
}

TEST_CASE("initial data generators") {
  const ComplexLattice r = rarefaction_initial_data(5, 2.0);
  CHECK(std::arg(r.at(1)) == doctest::Approx(pi / 4).epsilon(1e-14));
  for (long j = 1; j <= 5; ++j) {
    CHECK(std::norm(r.at(j)) == doctest::Approx(0.25).epsilon(1e-15));
    if (j > 1) CHECK(std::arg(r.at(j) * std::conj(r.at(j - 1))) == doctest::Approx(pi / 4).epsilon(1e-14));
  }
  CHECK_THROWS_AS(circle_initial_data(4, 5), Error);
}
