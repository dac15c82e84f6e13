#include "foxh/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>

namespace foxh {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kLogPi = 1.14472988584940017414342735135305871;
constexpr double kHalfLog2Pi = 0.91893853320467274178032973640561764;

// B_{2k} / (2k (2k-1)) for the Stirling series of log Gamma.
constexpr std::array<double, 10> kStirling = {
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
};

// B_{2k} for the Stirling series of psi.
constexpr std::array<double, 8> kBernoulli = {
    1.0 / 6.0,    -1.0 / 30.0,    1.0 / 42.0,  -1.0 / 30.0,
    5.0 / 66.0,   -691.0 / 2730.0, 7.0 / 6.0,  -3617.0 / 510.0,
};

bool near_nonpositive_integer(double x, double tol) {
    if (x > 0.5) return false;
    return std::abs(x - std::round(x)) < tol;
}

void check_pole(Cplx z, const char* who) {
    if (z.imag() == 0.0 && near_nonpositive_integer(z.real(), kGammaPoleTol))
        throw PoleError(std::string(who) + ": argument at nonpositive-integer pole");
}

// Stirling expansion, valid for Re z >= 10.
Cplx stirling_log_gamma(Cplx z) {
    Cplx r = (z - 0.5) * std::log(z) - z + kHalfLog2Pi;
    Cplx zi = 1.0 / z;
    Cplx zi2 = zi * zi;
    Cplx p = zi;
    for (double c : kStirling) {
        r += c * p;
        p *= zi2;
    }
    return r;
}

// log sin(pi z) for Im z > 0, stable for large Im z (never forms sin
// directly, so no overflow).  The inner principal log jumps as Re z crosses
// integer and half-integer lines; log_gamma compensates per strip.
Cplx log_sin_pi_upper(Cplx z) {
    const Cplx i(0.0, 1.0);
    const double ln2 = 0.693147180559945309417232121458176568;
    // sin(pi z) = e^{-i pi z} (e^{2 i pi z} - 1) / (2 i)
    Cplx e = std::exp(2.0 * i * kPi * z); // |e| < 1
    return -i * kPi * z - ln2 - i * (kPi / 2.0) + std::log(e - 1.0);
}

Cplx cot_pi(Cplx z) {
    const Cplx i(0.0, 1.0);
    if (z.imag() > 0.0) {
        Cplx e = std::exp(2.0 * i * kPi * z);
        return i * (e + 1.0) / (e - 1.0);
    }
    Cplx e = std::exp(-2.0 * i * kPi * z);
    return i * (1.0 + e) / (1.0 - e);
}

} // namespace

Cplx log_gamma(Cplx z) {
    check_pole(z, "log_gamma");
    if (z.imag() < 0.0) return std::conj(log_gamma(std::conj(z)));
    // Far left half-plane with enough imaginary part: reflection keeps the
    // recurrence short.  Near the real axis the shift runs through the pole
    // gaps instead, which stays accurate because exact poles were rejected.
    // The 2 pi i k offset pins the principal branch; psi reflection being
    // exact, k is constant per half-integer strip of Re z.
    if (z.real() < 0.5 && z.imag() > 0.1) {
        double frac = z.real() - std::floor(z.real());
        Cplx branch(0.0, frac < 0.5 ? 0.0 : -2.0 * kPi);
        return kLogPi - log_sin_pi_upper(z) - log_gamma(1.0 - z) + branch;
    }
    Cplx acc = 0.0;
    Cplx w = z;
    // Stirling is already accurate once |w| >= 10 with Re w > 0
    while (w.real() < 10.0 && std::norm(w) < 100.0) {
        acc += std::log(w);
        w += 1.0;
    }
    return stirling_log_gamma(w) - acc;
}

Cplx digamma(Cplx z) {
    check_pole(z, "digamma");
    if (z.imag() < 0.0) return std::conj(digamma(std::conj(z)));
    if (z.real() < 0.5 && z.imag() > 0.1) {
        return digamma(1.0 - z) - kPi * cot_pi(z);
    }
    Cplx acc = 0.0;
    Cplx w = z;
    while (w.real() < 10.0 && std::norm(w) < 100.0) {
        acc += 1.0 / w;
        w += 1.0;
    }
    // psi(w) = log w - 1/(2w) - sum B_{2k} / (2k w^{2k})
    Cplx r = std::log(w) - 0.5 / w;
    Cplx wi2 = 1.0 / (w * w);
    Cplx p = wi2;
    for (std::size_t k = 0; k < kBernoulli.size(); ++k) {
        r -= kBernoulli[k] / (2.0 * double(k + 1)) * p;
        p *= wi2;
    }
    return r - acc;
}

double sin_pi(double x) {
    double r = std::remainder(x, 2.0); // r in [-1, 1]
    if (r == std::floor(r)) return 0.0; // exact at integers
    if (r > 0.5) return std::sin(kPi * (1.0 - r));
    if (r < -0.5) return -std::sin(kPi * (1.0 + r));
    return std::sin(kPi * r);
}

double cos_pi(double x) {
    return sin_pi(x + 0.5);
}

double log_abs_gamma(double x, int& sign) {
    if (x <= 0.0 && x == std::floor(x)) {
        sign = 0;
        return std::numeric_limits<double>::infinity();
    }
    if (x > 0.0) {
        sign = 1;
        return std::lgamma(x);
    }
    // Gamma alternates sign between consecutive negative integers.
    int flips = static_cast<int>(std::floor(-x)) + 1;
    sign = (flips % 2 == 0) ? 1 : -1;
    return std::lgamma(x);
}

double digamma_real(double x) {
    if (x <= 0.0 && x == std::floor(x))
        throw PoleError("digamma_real: pole");
    if (x < 0.5) {
        // psi(x) = psi(1-x) - pi cot(pi x)
        double s = sin_pi(x), c = cos_pi(x);
        return digamma_real(1.0 - x) - kPi * c / s;
    }
    double acc = 0.0, w = x;
    while (w < 10.0) {
        acc += 1.0 / w;
        w += 1.0;
    }
    double r = std::log(w) - 0.5 / w;
    double wi2 = 1.0 / (w * w), p = wi2;
    for (std::size_t k = 0; k < kBernoulli.size(); ++k) {
        r -= kBernoulli[k] / (2.0 * double(k + 1)) * p;
        p *= wi2;
    }
    return r - acc;
}

double rgamma(double x) {
    if (x >= 0.5) return std::exp(-std::lgamma(x));
    // 1/Gamma(x) = sin(pi x) Gamma(1-x) / pi, exactly 0 at 0, -1, -2, ...
    double s = sin_pi(x);
    if (s == 0.0) return 0.0;
    return s * std::exp(std::lgamma(1.0 - x)) / kPi;
}

namespace {

double bessel_j0_series(double x) {
    const double q = 0.25 * x * x;
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 60; ++k) {
        term *= -q / (double(k) * double(k));
        sum += term;
        if (std::abs(term) < 1e-18 * (1.0 + std::abs(sum))) break;
    }
    return sum;
}

// Hankel asymptotic expansion, order 0: J0 = sqrt(2/(pi x)) (P cos X - Q sin X),
// X = x - pi/4, with a_m = a_{m-1} (-(2m-1)^2) / (8 m).
double bessel_j0_asymptotic(double x) {
    double a = 1.0;
    double P = 0.0, Q = 0.0;
    double xp = 1.0; // x^{-m}
    const double xi = 1.0 / x;
    int sgn = 1; // (-1)^k applied per pair
    for (int m = 0; m <= 19; ++m) {
        if (m > 0) {
            double tm = 2.0 * m - 1.0;
            a *= -(tm * tm) / (8.0 * m);
            xp *= xi;
        }
        if (m % 2 == 0) {
            P += sgn * a * xp;
        } else {
            Q += sgn * a * xp;
            sgn = -sgn;
        }
        if (m > 2 && std::abs(a * xp) < 1e-17) break;
    }
    const double chi = x - 0.25 * kPi;
    return std::sqrt(2.0 / (kPi * x)) * (P * std::cos(chi) - Q * std::sin(chi));
}

} // namespace

double bessel_j(double order, double x) {
    if (x < 0.0) throw std::domain_error("bessel_j: x must be >= 0");
    if (order == 0.5) {
        if (x == 0.0) return 0.0;
        return std::sqrt(2.0 / (kPi * x)) * std::sin(x);
    }
    if (order == -0.5) {
        if (x == 0.0) return std::numeric_limits<double>::infinity();
        return std::sqrt(2.0 / (kPi * x)) * std::cos(x);
    }
    if (order == 0.0) {
        return x <= 16.0 ? bessel_j0_series(x) : bessel_j0_asymptotic(x);
    }
    throw std::domain_error("bessel_j: unsupported order (need -1/2, 0 or 1/2)");
}

} // namespace foxh
