#include "toymodel/kernels.hpp"

#include <cmath>

#include "toymodel/error.hpp"

namespace toymodel::kernels {

namespace {

template <class T>
T ghost(std::span<const T> v, long k) {
  return (k >= 0 && k < static_cast<long>(v.size())) ? v[static_cast<std::size_t>(k)] : T{};
}

template <class A, class B>
void require_same_size(const A& a, const B& b, const char* what) {
  if (a.size() != b.size()) throw Error(ErrorKind::shape_mismatch, what);
}

inline cplx toy_node(cplx left, cplx self, cplx right) {
  const cplx drive = -std::norm(self) * self + 2.0 * (left * left + right * right) * std::conj(self);
  return cplx{-drive.imag(), drive.real()};  // i * drive
}

inline void hydro_node(double rho_l, double phi_l, double rho, double phi, double rho_r,
                       double phi_r, double& drho, double& dphi) {
  const double dl = 2.0 * (phi_l - phi);
  const double dr = 2.0 * (phi_r - phi);
  dphi = -rho + 2.0 * rho_l * std::cos(dl) + 2.0 * rho_r * std::cos(dr);
  drho = -4.0 * rho * rho_l * std::sin(dl) - 4.0 * rho * rho_r * std::sin(dr);
}

// rho_ll = rho_{j-2}, theta_l = theta_{j-1}, theta_r = theta_{j+1}.
inline void alt_node(double rho_ll, double rho_l, double rho, double rho_r, double theta_l,
                     double theta, double theta_r, double& drho, double& dtheta) {
  const double jump = rho - rho_l;
  const double c_r = std::cos(2.0 * theta_r);
  dtheta = -jump - 2.0 * jump * std::cos(2.0 * theta) + 2.0 * rho_r * c_r -
           2.0 * rho_ll * std::cos(2.0 * theta_l);
  drho = 4.0 * rho * rho_l * std::sin(2.0 * theta) - 4.0 * rho * rho_r * std::sin(2.0 * theta_r);
}

inline double anchored_first_theta(double rho, double rho_r, double theta_r) {
  return -rho + 2.0 * rho_r * std::cos(2.0 * theta_r);
}

}  // namespace

// ---------------------------------------------------------------------------
// Serial reference kernels.

namespace serial {

void toy_rhs(std::span<const cplx> b, std::span<cplx> db) {
  require_same_size(b, db, "toy_rhs: output size mismatch");
  const long n = static_cast<long>(b.size());
  for (long k = 0; k < n; ++k) {
    db[k] = toy_node(ghost(b, k - 1), b[k], ghost(b, k + 1));
  }
}

void hydro_rhs(std::span<const double> rho, std::span<const double> phi,
               std::span<double> drho, std::span<double> dphi) {
  require_same_size(rho, phi, "hydro_rhs: rho/phi size mismatch");
  require_same_size(rho, drho, "hydro_rhs: output size mismatch");
  require_same_size(rho, dphi, "hydro_rhs: output size mismatch");
  const long n = static_cast<long>(rho.size());
  for (long k = 0; k < n; ++k) {
    hydro_node(ghost(rho, k - 1), ghost(phi, k - 1), rho[k], phi[k], ghost(rho, k + 1),
               ghost(phi, k + 1), drho[k], dphi[k]);
  }
}

void alt_hydro_rhs(std::span<const double> rho, std::span<const double> theta,
                   std::span<double> drho, std::span<double> dtheta, FirstNodePhase first) {
  require_same_size(rho, theta, "alt_hydro_rhs: rho/theta size mismatch");
  require_same_size(rho, drho, "alt_hydro_rhs: output size mismatch");
  require_same_size(rho, dtheta, "alt_hydro_rhs: output size mismatch");
  const long n = static_cast<long>(rho.size());
  for (long k = 0; k < n; ++k) {
    alt_node(ghost(rho, k - 2), ghost(rho, k - 1), rho[k], ghost(rho, k + 1), ghost(theta, k - 1),
             theta[k], ghost(theta, k + 1), drho[k], dtheta[k]);
  }
  if (n > 0 && first == FirstNodePhase::anchored) {
    dtheta[0] = anchored_first_theta(rho[0], ghost(rho, 1), ghost(theta, 1));
  }
}

void backward_burgers_rhs(std::span<const double> rho, double coeff, std::span<double> drho) {
  require_same_size(rho, drho, "backward_burgers_rhs: output size mismatch");
  const long n = static_cast<long>(rho.size());
  for (long k = 0; k < n; ++k) {
    drho[k] = -coeff * rho[k] * (rho[k] - ghost(rho, k - 1));
  }
}

void symmetric_burgers_rhs(std::span<const double> rho, std::span<double> drho) {
  require_same_size(rho, drho, "symmetric_burgers_rhs: output size mismatch");
  const long n = static_cast<long>(rho.size());
  for (long k = 0; k < n; ++k) {
    drho[k] = -4.0 * rho[k] * (ghost(rho, k + 1) - ghost(rho, k - 1));
  }
}

void modified_burgers_rhs(std::span<const double> rho, std::span<double> drho,
                          std::span<double> dtheta) {
  require_same_size(rho, drho, "modified_burgers_rhs: output size mismatch");
  require_same_size(rho, dtheta, "modified_burgers_rhs: output size mismatch");
  const long n = static_cast<long>(rho.size());
  for (long k = 0; k < n; ++k) {
    const double jump = rho[k] - ghost(rho, k - 1);
    dtheta[k] = -jump;
    drho[k] = -8.0 * rho[k] * jump;
  }
}

}  // namespace serial

// ---------------------------------------------------------------------------
// OpenMP kernels. Interior nodes run branch-free; the (at most two) nodes on
// each edge that touch a ghost are handled after the parallel loop.

void toy_rhs(std::span<const cplx> b, std::span<cplx> db) {
  require_same_size(b, db, "toy_rhs: output size mismatch");
  const long n = static_cast<long>(b.size());
  if (n < 3) return serial::toy_rhs(b, db);
#pragma omp parallel for schedule(static) if (static_cast<std::size_t>(n) >= parallel_threshold)
  for (long k = 1; k < n - 1; ++k) {
    db[k] = toy_node(b[k - 1], b[k], b[k + 1]);
  }
  db[0] = toy_node(cplx{}, b[0], b[1]);
  db[n - 1] = toy_node(b[n - 2], b[n - 1], cplx{});
}

void hydro_rhs(std::span<const double> rho, std::span<const double> phi,
               std::span<double> drho, std::span<double> dphi) {
  require_same_size(rho, phi, "hydro_rhs: rho/phi size mismatch");
  require_same_size(rho, drho, "hydro_rhs: output size mismatch");
  require_same_size(rho, dphi, "hydro_rhs: output size mismatch");
  const long n = static_cast<long>(rho.size());
  if (n < 3) return serial::hydro_rhs(rho, phi, drho, dphi);
#pragma omp parallel for schedule(static) if (static_cast<std::size_t>(n) >= parallel_threshold)
  for (long k = 1; k < n - 1; ++k) {
    hydro_node(rho[k - 1], phi[k - 1], rho[k], phi[k], rho[k + 1], phi[k + 1], drho[k], dphi[k]);
  }
  hydro_node(0.0, 0.0, rho[0], phi[0], rho[1], phi[1], drho[0], dphi[0]);
  hydro_node(rho[n - 2], phi[n - 2], rho[n - 1], phi[n - 1], 0.0, 0.0, drho[n - 1], dphi[n - 1]);
}

void alt_hydro_rhs(std::span<const double> rho, std::span<const double> theta,
                   std::span<double> drho, std::span<double> dtheta, FirstNodePhase first) {
  require_same_size(rho, theta, "alt_hydro_rhs: rho/theta size mismatch");
  require_same_size(rho, drho, "alt_hydro_rhs: output size mismatch");
  require_same_size(rho, dtheta, "alt_hydro_rhs: output size mismatch");
  const long n = static_cast<long>(rho.size());
  if (n < 4) return serial::alt_hydro_rhs(rho, theta, drho, dtheta, first);
#pragma omp parallel for schedule(static) if (static_cast<std::size_t>(n) >= parallel_threshold)
  for (long k = 2; k < n - 1; ++k) {
    alt_node(rho[k - 2], rho[k - 1], rho[k], rho[k + 1], theta[k - 1], theta[k], theta[k + 1],
             drho[k], dtheta[k]);
  }
  alt_node(0.0, 0.0, rho[0], rho[1], 0.0, theta[0], theta[1], drho[0], dtheta[0]);
  alt_node(0.0, rho[0], rho[1], rho[2], theta[0], theta[1], theta[2], drho[1], dtheta[1]);
  alt_node(rho[n - 3], rho[n - 2], rho[n - 1], 0.0, theta[n - 2], theta[n - 1], 0.0, drho[n - 1],
           dtheta[n - 1]);
  if (first == FirstNodePhase::anchored) {
    dtheta[0] = anchored_first_theta(rho[0], rho[1], theta[1]);
  }
}

void backward_burgers_rhs(std::span<const double> rho, double coeff, std::span<double> drho) {
  require_same_size(rho, drho, "backward_burgers_rhs: output size mismatch");
  const long n = static_cast<long>(rho.size());
  if (n == 0) return;
#pragma omp parallel for schedule(static) if (static_cast<std::size_t>(n) >= parallel_threshold)
  for (long k = 1; k < n; ++k) {
    drho[k] = -coeff * rho[k] * (rho[k] - rho[k - 1]);
  }
  drho[0] = -coeff * rho[0] * (rho[0] - 0.0);
}

void symmetric_burgers_rhs(std::span<const double> rho, std::span<double> drho) {
  require_same_size(rho, drho, "symmetric_burgers_rhs: output size mismatch");
  const long n = static_cast<long>(rho.size());
  if (n < 3) return serial::symmetric_burgers_rhs(rho, drho);
#pragma omp parallel for schedule(static) if (static_cast<std::size_t>(n) >= parallel_threshold)
  for (long k = 1; k < n - 1; ++k) {
    drho[k] = -4.0 * rho[k] * (rho[k + 1] - rho[k - 1]);
  }
  drho[0] = -4.0 * rho[0] * (rho[1] - 0.0);
  drho[n - 1] = -4.0 * rho[n - 1] * (0.0 - rho[n - 2]);
}

void modified_burgers_rhs(std::span<const double> rho, std::span<double> drho,
                          std::span<double> dtheta) {
  require_same_size(rho, drho, "modified_burgers_rhs: output size mismatch");
  require_same_size(rho, dtheta, "modified_burgers_rhs: output size mismatch");
  const long n = static_cast<long>(rho.size());
#pragma omp parallel for schedule(static) if (static_cast<std::size_t>(n) >= parallel_threshold)
  for (long k = 0; k < n; ++k) {
    const double jump = rho[k] - (k > 0 ? rho[k - 1] : 0.0);
    dtheta[k] = -jump;
    drho[k] = -8.0 * rho[k] * jump;
  }
}

}  // namespace toymodel::kernels
