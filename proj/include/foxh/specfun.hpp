#pragma once

#include <complex>
#include <stdexcept>

namespace foxh {

using Cplx = std::complex<double>;

/// Signalled when an argument lands on (or within 1e-14 of) a pole of the
/// gamma function, i.e. a nonpositive integer on the real axis.
struct PoleError : std::domain_error {
    explicit PoleError(const std::string& what) : std::domain_error(what) {}
};

/// Principal branch of log Gamma(z).  Stirling series after a recurrence
/// shift to Re z >= 10; reflection through log sin(pi z) for arguments far
/// into the left half-plane.  Relative error <= 1e-13 for |z| <= 1e6 away
/// from poles.
Cplx log_gamma(Cplx z);

/// psi(z) = d/dz log Gamma(z).
Cplx digamma(Cplx z);

/// 1 / Gamma(x) on the real line; entire, exactly 0 at 0, -1, -2, ...
double rgamma(double x);

/// Bessel J of order -1/2, 0 or 1/2 for x >= 0 (the radial Fourier kernels
/// for d = 1, 2, 3).  Other orders are rejected.
double bessel_j(double order, double x);

// Real-line helpers shared by the residue machinery.

/// log |Gamma(x)| together with the sign of Gamma(x); sign = 0 flags a pole.
double log_abs_gamma(double x, int& sign);

/// psi(x) on the real line, finite away from nonpositive integers.
double digamma_real(double x);

/// sin(pi x), cos(pi x) with exact argument reduction (sin_pi(n) == 0).
double sin_pi(double x);
double cos_pi(double x);

inline constexpr double kGammaPoleTol = 1e-14;

} // namespace foxh
