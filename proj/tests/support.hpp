#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "toymodel/lattice.hpp"

namespace testing {

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline std::vector<double> uniform(std::mt19937_64& g, std::size_t n, double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = d(g);
  return v;
}

inline toymodel::ComplexLattice random_lattice(std::mt19937_64& g, std::size_t n,
                                               double amp_lo = 0.2, double amp_hi = 1.0) {
  std::uniform_real_distribution<double> a(amp_lo, amp_hi), p(-M_PI, M_PI);
  std::vector<toymodel::cplx> b(n);
  for (auto& z : b) z = std::polar(a(g), p(g));
  return toymodel::ComplexLattice(std::move(b));
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

/// Q_j(x) by direct summation of x^k / k!, independent of the library's table.
inline double direct_partial_exp(int j, double x) {
  double sum = 0.0;
  for (int k = 0; k <= j; ++k) sum += std::exp(k * std::log(x) - std::lgamma(k + 1.0));
  return j < 0 ? 0.0 : (x == 0.0 ? 1.0 : sum);
}

}  // namespace testing
