#include <doctest.h>

#include <vector>

#include "support.hpp"
#include "toymodel/kernels.hpp"

using namespace toymodel;
namespace k = toymodel::kernels;

// Sizes straddle the threshold so both the single-thread fallback and the
// parallel loop with explicit edge nodes are exercised.
static const std::size_t sizes[] = {1, 2, 3, 7, k::parallel_threshold - 1, k::parallel_threshold,
                                    3000};

TEST_CASE("parallel and serial toy kernels agree bitwise") {
  auto g = testing::rng(21);
  for (std::size_t n : sizes) {
    const ComplexLattice b = testing::random_lattice(g, n);
    std::vector<cplx> a(n), s(n);
    k::toy_rhs(b.values(), a);
    k::serial::toy_rhs(b.values(), s);
    CHECK(a == s);
  }
}

TEST_CASE("parallel and serial hydro kernels agree bitwise") {
  auto g = testing::rng(22);
  for (std::size_t n : sizes) {
    const auto rho = testing::uniform(g, n, 0.01, 1.0);
    const auto ang = testing::uniform(g, n, -4.0, 4.0);
    std::vector<double> r1(n), p1(n), r2(n), p2(n);
    k::hydro_rhs(rho, ang, r1, p1);
    k::serial::hydro_rhs(rho, ang, r2, p2);
    CHECK(r1 == r2);
    CHECK(p1 == p2);
    for (auto first : {FirstNodePhase::anchored, FirstNodePhase::formal}) {
      k::alt_hydro_rhs(rho, ang, r1, p1, first);
      k::serial::alt_hydro_rhs(rho, ang, r2, p2, first);
      CHECK(r1 == r2);
      CHECK(p1 == p2);
    }
  }
}

TEST_CASE("parallel and serial Burgers kernels agree bitwise") {
  auto g = testing::rng(23);
  for (std::size_t n : sizes) {
    const auto rho = testing::uniform(g, n, 0.0, 2.0);
    std::vector<double> a(n), s(n), ta(n), ts(n);
    k::backward_burgers_rhs(rho, 8.0, a);
    k::serial::backward_burgers_rhs(rho, 8.0, s);
    CHECK(a == s);
    k::symmetric_burgers_rhs(rho, a);
    k::serial::symmetric_burgers_rhs(rho, s);
    CHECK(a == s);
    k::modified_burgers_rhs(rho, a, ta);
    k::serial::modified_burgers_rhs(rho, s, ts);
    CHECK(a == s);
    CHECK(ta == ts);
  }
}

TEST_CASE("kernels handle an empty lattice") {
  std::vector<double> none;
  std::vector<cplx> cnone;
  k::toy_rhs(cnone, cnone);
  k::symmetric_burgers_rhs(none, none);
  k::alt_hydro_rhs(none, none, none, none);
  CHECK(none.empty());
}
