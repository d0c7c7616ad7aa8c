#pragma once

// Sharp constant of the periodic magnetic embedding.
//
// Below the threshold (q+2) alpha^2 <= 1 the constant function minimizes and
// mu has the closed form (2 pi)^{1/2-1/q} |alpha|.  Above it, the minimizer
// travels along a phase-plane oval selected by the flux condition
// M(gamma) = 2 pi |alpha|, solved by bisection on the strictly decreasing M.

#include <optional>

#include "magsob/period_integrals.hpp"

namespace magsob {

enum class Regime { ConstantMinimizer, Critical, SymmetryBroken };

const char* regime_name(Regime r);

/// Full record of a symmetry-broken solution.
struct OvalSolution {
  double gamma;   // oval shape parameter, in (0, gamma_max)
  double a;       // angular-momentum first integral r^2 phi' = a
  double lambda;  // Lagrange multiplier of the normalization
  double c;       // energy constant, c = lambda (1/2 + 1/q)
  double r1;      // modulus minimum (< 1)
  double r2;      // modulus maximum (> 1)
  double mu;      // sharp constant, mu^2 = (2 pi)^{1-2/q} lambda
};

struct SharpResult {
  double mu;
  Regime regime;
  std::optional<OvalSolution> oval;  // present only in the broken regime
};

struct SolveOptions {
  double tol = 1e-10;                 // residual tolerance on M(gamma) - 2 pi |alpha|
  int max_iter = 200;                 // bisection budget
  bool extrapolate_boundary = false;  // handle |alpha| = 1/2 by extrapolation
  QuadratureConfig quad{};
};

/// Reduce a raw flux to the fundamental interval [-1/2, 1/2] (mod 1);
/// ties at +-1/2 resolve to +1/2.
double normalize_flux(double alpha_raw);

/// Regime by the sign of (q+2) alpha^2 - 1; equality within 1e-12 is Critical.
Regime classify(double q, double alpha);

/// mu = (2 pi)^{1/2 - 1/q} |alpha|; only valid when (q+2) alpha^2 <= 1.
double mu_constant(double q, double alpha);

/// The unique gamma* with M(gamma*) = 2 pi |alpha|, for broken-regime flux
/// with |alpha| < 1/2 strictly.
double solve_gamma(double q, double alpha, const SolveOptions& opts = {});

/// Physical scales of the oval at a given gamma, from inverting the change
/// of variables and the half-period condition.  Returned with a > 0; the
/// sign of the flux is applied by sharp_constant.
struct Scales {
  double a;
  double lambda;
  double c;
};
Scales recover_scales(double q, double gamma, const QuadratureConfig& cfg = {});

/// Assemble the oval record at gamma (broken regime plumbing shared by
/// sharp_constant and the boundary extrapolation).
OvalSolution oval_solution_at(double q, double gamma, double alpha_sign,
                              const QuadratureConfig& cfg = {});

/// The sharp constant mu_q(alpha), dispatching on the regime.
SharpResult sharp_constant(double q, double alpha, const SolveOptions& opts = {});

}  // namespace magsob
