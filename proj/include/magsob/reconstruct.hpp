#pragma once

// Discretized minimizer u(x) = r(x) exp(i (phi(x) - alpha x)) on [0, 2 pi],
// rebuilt from an oval solution by quadrature: the rising half of the
// modulus comes from the t-parametrization x(t), the falling half from the
// reflection symmetry about x = pi, and the phase from the flux integrand.

#include <complex>
#include <iosfwd>
#include <vector>

#include "magsob/solver.hpp"

namespace magsob {

struct SampleResiduals {
  double norm_residual;  // | int r^q dx - 2 pi |
  double flux_residual;  // | int (a/r^2) dx - 2 pi alpha |
  double ode_residual;   // max interior | -r'' + a^2/r^3 - lambda r^{q-1} |
  double energy;         // int (r'^2 + a^2/r^2) dx, should equal 2 pi lambda
};

struct MinimizerSample {
  std::vector<double> x;      // n+1 uniform points spanning [0, 2 pi]
  std::vector<double> r;      // modulus, r[0] = r[n] = r1
  std::vector<double> theta;  // argument of u, theta[0] = 0
  double a = 0.0;
  double lambda = 0.0;
  double mu = 0.0;
  SampleResiduals residuals{};

  std::complex<double> u(std::size_t i) const {
    return std::polar(r[i], theta[i]);
  }
};

/// Sample the non-constant minimizer on an (n+1)-point grid (n even, >= 16).
/// Throws DomainError if the solution record is not a genuine oval.
MinimizerSample sample_minimizer(const OvalSolution& sol, double q, double alpha,
                                 int n, const QuadratureConfig& cfg = {});

/// The trivial profile of the constant regime: r = 1, theta = 0.
MinimizerSample constant_sample(double q, double alpha, int n);

/// Self-consistency residuals of a sample (also stored inside it on build).
SampleResiduals compute_residuals(const MinimizerSample& s, double q, double alpha);

/// Largest relative drift of the first integral
/// r'^2 + a^2/r^2 + (2 lambda/q) r^q = 2c along the sample, with r' taken
/// by spectral differentiation (independent of the construction).
double first_integral_drift(const MinimizerSample& s, double q);

/// CSV with header x,r,theta,re_u,im_u at 17 significant digits.
void write_minimizer_csv(const MinimizerSample& s, std::ostream& os);

}  // namespace magsob
