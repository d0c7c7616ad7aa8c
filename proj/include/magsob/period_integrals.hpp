#pragma once

// Singular period integrals over the oval (t1, t2):
//
//   flux integral      M(gamma) = int dt / (t sqrt(f))     -> flux condition
//   period integral    P(gamma) = int dt / sqrt(f)         -> x half-period
//   partial versions of both, used to parametrize the minimizer
//   analytic derivative M'(gamma) via the Psi / H_beta identity
//
// Both integrands have inverse-square-root singularities at the roots.  The
// production scheme factors f(t) = (t-t1)(t2-t) g(t) with g > 0 smooth and
// absorbs the singularity into a Gauss-Chebyshev weight; very stretched
// ovals (small gamma) instead split at t0 and substitute u = sqrt(t - t1),
// v = sqrt(t2 - t), which turns each half into a smooth integral.

#include "magsob/profile.hpp"

namespace magsob {

struct QuadratureConfig {
  int n_nodes = 128;                    // Chebyshev nodes for the weighted rule
  int n_legendre = 96;                  // Gauss-Legendre nodes per smooth panel
  double endpoint_taylor_delta = 1e-3;  // relative switch to Taylor-evaluated g

  void validate() const;
};

/// M(gamma) = int_{t1}^{t2} dt / (t sqrt(f)).  Strictly decreasing in gamma,
/// with range (2 pi / sqrt(q+2), pi).
double flux_integral(double gamma, double q, const QuadratureConfig& cfg = {});

/// As flux_integral, but recomputed with doubled node counts; throws
/// ConvergenceError if the two results differ by more than rel_tol.
double flux_integral_checked(double gamma, double q, const QuadratureConfig& cfg,
                             double rel_tol);

/// P(gamma) = int_{t1}^{t2} dt / sqrt(f).  Fixes the x scale of the oval.
double period_integral(double gamma, double q, const QuadratureConfig& cfg = {});

/// int_{t1}^{t} ds / sqrt(f(s)): 0 at t1, P at t2, strictly increasing.
double partial_period_integral(double gamma, double q, double t,
                               const QuadratureConfig& cfg = {});

/// int_{t1}^{t} ds / (s sqrt(f(s))): 0 at t1, M at t2.  Twice the phase
/// accumulated along the rising half of the oval up to t.
double partial_flux_integral(double gamma, double q, double t,
                             const QuadratureConfig& cfg = {});

/// M'(gamma) evaluated from the identity
///   M' = int sqrt(f) f' H_beta / Psi^2 dt,
/// with Psi = f'^2 - 2 f f'' and beta chosen so that H_beta(t0) = 0.
/// Always negative on (0, gamma_max).
double flux_integral_derivative(double gamma, double q,
                                const QuadratureConfig& cfg = {});

/// The comparison polynomial h entering H_beta, with its first two
/// derivatives.  h'' is evaluated through the product identity
/// h'' = -gamma q (q+1) (q-2) (q+2) t^{q/2-2} f(t).
struct HFamily {
  double h;
  double h1;
  double h2;
};
HFamily h_family(double t, double gamma, double q);

/// H_beta(t) = beta (3 f'^2 f'' + 2 f f' f''' - 6 f f''^2) - q(q-2) t^{q/2-2} / 2.
double h_beta(double t, double gamma, double q, double beta);

/// The beta that makes H_beta vanish at the critical point:
/// beta = -q(q-2) t0^{q/2-2} / (12 f(t0) f''(t0)^2) < 0.
double beta_choice(double gamma, double q);

}  // namespace magsob
