#pragma once

// The dimensionless oval profile f(t) = t - gamma t^{q/2+1} - 1.
//
// For 0 < gamma < gamma_max(q) the profile is negative at t = 1, rises to a
// single positive hump, and falls below zero again before t = gamma^{-2/q}.
// Its two roots t1 < t2 bound the phase-plane oval; every period integral in
// this library is taken between them.

#include <utility>

namespace magsob {

/// One embedding problem: exponent q > 2 and normalized flux alpha.
struct ProblemParams {
  double q;
  double alpha;
};

/// Dimensionless shape of one oval: 1 < t1 < t0 < t2 < gamma^{-2/q},
/// f(t1) = f(t2) = 0 and f'(t0) = 0.
struct OvalShape {
  double gamma;
  double t1;
  double t0;
  double t2;
};

struct ProfileDerivs {
  double d1;  // f'
  double d2;  // f''
  double d3;  // f'''
};

/// Real power t^e computed as exp(e log t); q is a general real exponent.
double rpow(double t, double e);

/// f(t) = t - gamma t^{q/2+1} - 1.  Throws DomainError for t <= 0.
double eval_f(double t, double gamma, double q);

/// First three derivatives of f at t.  All three are negative multiples of
/// powers of t except f', which starts at +1 and decreases.
ProfileDerivs eval_f_derivs(double t, double gamma, double q);

/// Largest gamma for which the oval exists: (2/(q+2)) (1+2/q)^{-q/2}.
/// At gamma_max the roots collide at t = (q+2)/q.
double gamma_max(double q);

/// The unique zero t0 = (2/(gamma(q+2)))^{2/q} of f'; f(t0) > 0 inside
/// (0, gamma_max).
double critical_point(double gamma, double q);

/// Roots t1 in (1, t0) and t2 in (t0, gamma^{-2/q}) of f, refined to
/// relative tolerance 1e-13.  Near-degenerate ovals (gamma within
/// 1e-10 gamma_max of the top) switch to the local quadratic model around t0.
OvalShape bracket_roots(double gamma, double q);

}  // namespace magsob
