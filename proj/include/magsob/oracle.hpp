#pragma once

// Independent verification path: direct minimization of the discretized
// magnetic Rayleigh quotient over complex periodic grid functions, plus the
// second-order stability margin of the constant solution.  Everything here
// is deliberately ignorant of the phase-plane machinery.

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace magsob {

struct OracleConfig {
  int n = 256;            // grid size (powers of two use the fast transform)
  int max_iters = 5000;   // descent iterations per start
  double grad_tol = 1e-9; // preconditioned gradient norm target
  std::uint64_t seed = 0x6d616773UL;  // RNG seed of the random start
  bool start_constant = true;
  bool start_modulated = true;   // 1 + 0.3 sin x
  bool start_random = true;
};

/// || Du + i alpha u ||_2 / || u ||_q on the uniform periodic grid, with the
/// spectral derivative D.  Scale invariant; throws DomainError on the zero
/// vector.
double rayleigh_quotient(std::span<const std::complex<double>> u, double q,
                         double alpha);

struct MinimizeResult {
  double mu_est;
  std::vector<std::complex<double>> u_best;  // phase-normalized: arg u[0] = 0
  std::string best_start;
  int iterations;        // iterations used by the winning start
  int converged_starts;  // how many starts reached the gradient tolerance
};

/// Multi-start preconditioned descent on log of the squared quotient.
/// The result is a feasible-point upper bound on mu_q(alpha).
MinimizeResult minimize_rayleigh(double q, double alpha,
                                 const OracleConfig& cfg = {});

/// Stability margin of the constant solution: 1 - (q+2) alpha^2, the
/// smallest of k^2 - (q+2) alpha^2 over nonzero integer modes.
double second_order_margin(double q, double alpha);

/// Smallest eigenvalue of the discretized second-variation form on
/// zero-mean real grid functions (n-point grid, spectral Laplacian).
/// Agrees with second_order_margin to roundoff.
double second_order_margin_discrete(double q, double alpha, int n = 64);

/// Count of strict local maxima of |u| over one period.
int count_modulus_maxima(std::span<const std::complex<double>> u);

}  // namespace magsob
