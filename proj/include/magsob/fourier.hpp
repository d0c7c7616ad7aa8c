#pragma once

// Minimal periodic spectral toolbox on uniform grids over [0, 2 pi):
// radix-2 FFT with a direct-DFT fallback for other even sizes, derivative
// multipliers ik with the Nyquist mode zeroed (anti-Hermitian convention).

#include <complex>
#include <vector>

namespace magsob {

using cdouble = std::complex<double>;

/// In-place forward/inverse discrete Fourier transform (inverse includes
/// the 1/n factor).  Radix-2 when n is a power of two, O(n^2) otherwise.
void fourier_transform(std::vector<cdouble>& a, bool inverse);

/// Signed integer frequency of bin k on an n-point grid, in (-n/2, n/2].
int signed_frequency(int k, int n);

/// Spectral derivative of a complex periodic grid function (Nyquist zeroed).
std::vector<cdouble> spectral_derivative(const std::vector<cdouble>& u);

/// Spectral derivative of a real periodic grid function.
std::vector<double> spectral_derivative(const std::vector<double>& u);

}  // namespace magsob
