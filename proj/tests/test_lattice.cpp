#include <doctest.h>

#include <cmath>
#include <numbers>

#include "support.hpp"
#include "toymodel/error.hpp"
#include "toymodel/lattice.hpp"

using namespace toymodel;
using std::numbers::pi;

namespace {
ComplexLattice shock(std::size_t n) {
  ComplexLattice b(n);
  for (std::size_t j = 1; j <= n; ++j) b.set(static_cast<long>(j), std::polar(1.0, (j - 1.0) * pi / 4));
  return b;
}
}  // namespace

TEST_CASE("mass of hand-evaluable states") {
  CHECK(mass(ComplexLattice(6)) == 0.0);
  ComplexLattice single(10);
  single.set(5, 1.0);
  CHECK(mass(single) == 1.0);
  CHECK(mass(shock(8)) == doctest::Approx(8.0).epsilon(1e-15));
}

TEST_CASE("hamiltonian of hand-evaluable states") {
  ComplexLattice single(10);
  single.set(5, 1.0);
  CHECK(hamiltonian(single) == 0.25);

  ComplexLattice pair(2);
  pair.set(1, 1.0);
  pair.set(2, 1.0);
  CHECK(hamiltonian(pair) == doctest::Approx(-0.5).epsilon(1e-15));

  // every coupling is Re(exp(-i pi / 2)) = 0, leaving 4 x 1/4
  CHECK(hamiltonian(shock(4)) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("ghost reads are exactly zero") {
  ComplexLattice b = shock(5);
  CHECK(b.at(0) == cplx{});
  CHECK(b.at(-3) == cplx{});
  CHECK(b.at(6) == cplx{});
  HydroState h = madelung_decompose(b);
  CHECK(h.rho_at(0) == 0.0);
  CHECK(h.rho_at(6) == 0.0);
  AltHydroState a = to_alt(h);
  CHECK(a.theta_at(0) == 0.0);
  CHECK(a.rho_at(6) == 0.0);
}

TEST_CASE("invariants are unchanged by a global phase rotation") {
  auto g = testing::rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    ComplexLattice b = testing::random_lattice(g, 17);
    const double alpha = testing::uniform(g, 1, -10.0, 10.0)[0];
    ComplexLattice r = b;
    for (auto& z : r.storage()) z *= std::polar(1.0, alpha);
    CHECK(std::abs(mass(r) - mass(b)) <= 1e-13 * mass(b));
    CHECK(std::abs(hamiltonian(r) - hamiltonian(b)) <= 1e-13 * std::max(1.0, std::abs(hamiltonian(b))));
  }
}

TEST_CASE("madelung decomposition") {
  SUBCASE("unit amplitude at zero phase") {
    ComplexLattice b(1);
    b.set(1, 1.0);
    const HydroState h = madelung_decompose(b);
    CHECK(h.rho[0] == 1.0);
    CHECK(h.phi[0] == 0.0);
    CHECK_FALSE(h.phase_undefined[0]);
  }
  SUBCASE("phases are unwrapped past pi along the index") {
    const HydroState h = madelung_decompose(shock(8));
    for (std::size_t k = 0; k < 8; ++k) {
      CHECK(h.rho[k] == doctest::Approx(1.0).epsilon(1e-15));
      CHECK(h.phi[k] == doctest::Approx(k * pi / 4).epsilon(1e-14));
    }
  }
  SUBCASE("vacuum node is flagged with phase 0") {
    ComplexLattice b = shock(5);
    b.set(3, 0.0);
    const HydroState h = madelung_decompose(b);
    CHECK(h.rho[2] == 0.0);
    CHECK(h.phi[2] == 0.0);
    CHECK(h.phase_undefined[2]);
    CHECK(h.any_phase_undefined());
  }
  SUBCASE("non-positive floor is rejected") {
    CHECK_THROWS_AS(madelung_decompose(shock(3), 0.0), Error);
  }
  SUBCASE("time continuation picks the nearest branch") {
    ComplexLattice b(1);
    b.set(1, std::polar(1.0, -3.1));
    HydroState prev({1.0}, {3.1});
    const HydroState h = madelung_decompose_continued(b, prev);
    CHECK(h.phi[0] == doctest::Approx(2 * pi - 3.1).epsilon(1e-14));
  }
}

TEST_CASE("nearest representative") {
  CHECK(nearest_representative(0.1, 2 * pi) == doctest::Approx(2 * pi + 0.1));
  CHECK(nearest_representative(-3.0, 3.0) == doctest::Approx(2 * pi - 3.0));
  CHECK(nearest_representative(1.0, 1.0) == 1.0);
}

TEST_CASE("madelung composition") {
  const ComplexLattice b = madelung_compose(HydroState({1.0}, {pi / 2}));
  CHECK(std::abs(b.at(1) - cplx(0.0, 1.0)) < 1e-16);

  const double eps = 1.0;
  std::vector<double> rho(4, eps / 8), phi(4);
  for (std::size_t k = 0; k < 4; ++k) phi[k] = k * pi / 4;
  const ComplexLattice c = madelung_compose(HydroState(rho, phi));
  for (std::size_t k = 0; k < 4; ++k) {
    CHECK(std::abs(c.values()[k] - std::polar(1.0 / std::sqrt(8.0), k * pi / 4)) < 1e-15);
  }
  CHECK_THROWS_AS(madelung_compose(HydroState({-1.0}, {0.0})), Error);
}

TEST_CASE("compose after decompose reproduces the lattice") {
  auto g = testing::rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexLattice b = testing::random_lattice(g, 25, 1e-4, 2.0);
    const ComplexLattice back = madelung_compose(madelung_decompose(b));
    for (std::size_t k = 0; k < b.size(); ++k) {
      CHECK(std::abs(back.values()[k] - b.values()[k]) <= 1e-14 * std::abs(b.values()[k]) + 1e-300);
    }
  }
}

TEST_CASE("difference-phase coordinates") {
  std::vector<double> phi(6);
  for (std::size_t k = 0; k < 6; ++k) phi[k] = k * pi / 4;
  const AltHydroState a = to_alt(HydroState(std::vector<double>(6, 1.0), phi));
  CHECK(a.theta[0] == 0.0);
  for (std::size_t k = 1; k < 6; ++k) CHECK(a.theta[k] == doctest::Approx(pi / 4).epsilon(1e-15));

  const AltHydroState c = to_alt(HydroState(std::vector<double>(4, 1.0), std::vector<double>(4, 0.7)));
  CHECK(c.theta[0] == 0.7);
  for (std::size_t k = 1; k < 4; ++k) CHECK(c.theta[k] == 0.0);

  auto g = testing::rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto rho = testing::uniform(g, 30, 0.01, 1.0);
    const auto ph = testing::uniform(g, 30, -5.0, 5.0);
    const HydroState back = from_alt(to_alt(HydroState(rho, ph)));
    CHECK(testing::max_abs_diff(back.phi, ph) < 1e-14 * 30);
    CHECK(back.rho == rho);
  }
}

TEST_CASE("hamiltonian in difference-phase coordinates matches the complex form") {
  auto g = testing::rng(8);
  const ComplexLattice b = testing::random_lattice(g, 40);
  const AltHydroState a = to_alt(madelung_decompose(b));
  CHECK(hamiltonian(a) == doctest::Approx(hamiltonian(b)).epsilon(1e-13));
  CHECK(mass(std::span<const double>(a.rho)) == doctest::Approx(mass(b)).epsilon(1e-14));
}

TEST_CASE("error kinds have stable names") {
  CHECK(to_string(ErrorKind::vacuum_node) == "vacuum_node");
  CHECK(to_string(ErrorKind::drift_exceeded) == "drift_exceeded");
}
