#include "foxh/mittag.hpp"

#include "foxh/specfun.hpp"

#include <cmath>
#include <complex>
#include <limits>

namespace foxh {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

// Taylor sum with compensated accumulation.  Safe while the largest term
// ~ exp(x^{1/alpha}) stays small enough that roundoff cannot reach 1e-10.
double ml_taylor(double alpha, double x) {
    double sum = 1.0, comp = 0.0;
    double logx = std::log(x);
    for (int k = 1; k < 400; ++k) {
        double lt = double(k) * logx - std::lgamma(1.0 + alpha * double(k));
        double term = std::exp(lt);
        if (k % 2 != 0) term = -term;
        double y = term - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if (std::abs(term) < 1e-18 * (std::abs(sum) + 1e-30) && double(k) > x) break;
    }
    return sum;
}

// Large-x expansion sum_{k>=1} (-1)^{k-1} x^{-k} / Gamma(1 - alpha k),
// truncated at the smallest term.
double ml_asymptotic(double alpha, double x) {
    double sum = 0.0;
    // For alpha in (1,2) one conjugate pair of exponential branches lies in
    // the relevant sector: a damped oscillation that dominates the algebraic
    // tail until x^{1/alpha} |cos(pi/alpha)| is large.
    if (alpha > 1.0) {
        double X = std::pow(x, 1.0 / alpha);
        double damp = X * std::cos(kPi / alpha); // negative for alpha < 2
        if (damp > -710.0)
            sum += (2.0 / alpha) * std::exp(damp) * std::cos(X * std::sin(kPi / alpha));
    }
    double prev = std::numeric_limits<double>::infinity();
    const double logx = std::log(x);
    for (int k = 1; k < 200; ++k) {
        // rgamma overflows double range long after the terms stop mattering
        double logmag = -double(k) * logx + std::lgamma(alpha * double(k)) + 1.0;
        if (logmag > 690.0) break;
        double term = rgamma(1.0 - alpha * double(k)) * std::pow(x, -double(k));
        if (k % 2 == 0) term = -term;
        if (std::abs(term) > prev) break; // optimal truncation
        sum += term;
        if (std::abs(term) > 0.0) {
            prev = std::abs(term);
            if (std::abs(term) < 1e-17 * (std::abs(sum) + 1e-300)) break;
        }
    }
    return sum;
}

// (1/2 pi) int H(1/2 + i rho) x^{-1/2 - i rho} d rho with the kernel
// pi / (sin(pi s) Gamma(1 - alpha s)); decays like exp(-pi(2-alpha)|rho|/2).
double ml_contour(double alpha, double x) {
    const double gamma = 0.5;
    const double logx = std::log(x);
    auto F = [&](double rho) {
        std::complex<double> s(gamma, rho);
        std::complex<double> L = std::log(std::complex<double>(kPi)) -
                                 log_gamma(1.0 - alpha * s) - s * logx;
        // log sin(pi s) assembled against overflow for large |rho|
        std::complex<double> i(0.0, 1.0);
        std::complex<double> ls;
        if (rho >= 0.0)
            ls = -i * kPi * s - std::log(2.0) - i * (kPi / 2.0) +
                 std::log(std::exp(2.0 * i * kPi * s) - 1.0);
        else
            ls = i * kPi * s - std::log(2.0) + i * (kPi / 2.0) +
                 std::log(1.0 - std::exp(-2.0 * i * kPi * s));
        return std::exp(L - ls);
    };
    const double h = 2.0 * kPi * 0.5 / (std::log(1e14)); // strip half-width 1/2
    double sum = 0.5 * F(0.0).real();
    double maxmod = std::abs(sum);
    int streak = 0;
    for (int k = 1; k < 40000; ++k) {
        std::complex<double> fk = F(h * double(k));
        sum += fk.real();
        maxmod = std::max(maxmod, std::abs(fk));
        if (std::abs(fk) < 1e-15 * maxmod) {
            if (++streak > 4) break;
        } else {
            streak = 0;
        }
    }
    return sum * h / kPi;
}

} // namespace

double ml_neg(double alpha, double x) {
    if (!(alpha > 0.0 && alpha < 2.0))
        throw std::domain_error("ml_neg: alpha must lie in (0, 2)");
    if (!(x >= 0.0)) throw std::domain_error("ml_neg: x must be >= 0");
    if (x == 0.0) return 1.0;
    if (alpha == 1.0) return std::exp(-x);

    // series while max term exp(x^{1/alpha}) <= ~e^12, asymptotics once its
    // optimal-truncation remainder ~ exp(-x^{1/alpha}) clears 1e-9
    const double x_switch = std::min(5.0 + 5.0 * alpha, std::pow(12.0, alpha));
    const double x_big = std::max(50.0, std::pow(21.0, alpha));
    if (x <= x_switch) return ml_taylor(alpha, x);
    if (x >= x_big) return ml_asymptotic(alpha, x);
    return ml_contour(alpha, x);
}

namespace {

// Saddle-point form M_nu(x) ~ A x^{(2nu-1)/(2-2nu)} exp(-B x^{1/(1-nu)});
// exact for nu = 1/2 (Gaussian) and nu = 1/3 (Airy).
double mainardi_saddle(double nu, double x) {
    const double om = 1.0 - nu;
    const double A = std::pow(2.0 * kPi * om, -0.5) * std::pow(nu, (2.0 * nu - 1.0) / (2.0 * om));
    const double B = om * std::pow(nu, nu / om);
    const double X = std::pow(x, 1.0 / om);
    double le = std::log(A) + (2.0 * nu - 1.0) / (2.0 * om) * std::log(x) - B * X;
    return le < -745.0 ? 0.0 : std::exp(le);
}

// largest x for which the alternating series peak stays below ~e^16
double mainardi_series_limit(double nu) {
    double lo = 1.0, hi = 1.0;
    auto peak = [&](double x) {
        double logx = std::log(x);
        double best = 0.0;
        for (int k = 1; k < 4000; ++k) {
            int s;
            double lg = log_abs_gamma(1.0 - nu - nu * double(k), s);
            if (s == 0) continue;
            double lt = double(k) * logx - std::lgamma(double(k) + 1.0) - lg;
            best = std::max(best, lt);
            if (lt < best - 40.0) break;
        }
        return best;
    };
    while (peak(hi) < 16.0 && hi < 1e4) {
        lo = hi;
        hi *= 2.0;
    }
    for (int i = 0; i < 40; ++i) {
        double mid = 0.5 * (lo + hi);
        (peak(mid) < 16.0 ? lo : hi) = mid;
    }
    return lo;
}

} // namespace

double mainardi(double nu, double x) {
    if (!(nu > 0.0 && nu < 1.0))
        throw std::domain_error("mainardi: nu must lie in (0, 1)");
    if (!(x >= 0.0)) throw std::domain_error("mainardi: x must be >= 0");
    if (x == 0.0) return rgamma(1.0 - nu);

    static thread_local double cached_nu = -1.0;
    static thread_local double cached_limit = 0.0;
    if (nu != cached_nu) {
        cached_nu = nu;
        cached_limit = mainardi_series_limit(nu);
    }
    if (x > cached_limit) return mainardi_saddle(nu, x);

    double sum = 0.0, comp = 0.0;
    double term_scale = 1.0; // x^k / k!
    double recent[3] = {1e300, 1e300, 1e300};
    double max_term = 0.0;
    int terms = 0;
    bool aborted = false;
    for (int k = 0; k < 4000; ++k) {
        double arg = -nu * double(k) + 1.0 - nu;
        if (arg < -170.0) {
            aborted = true; // 1/Gamma(arg) would overflow before terms decay
            break;
        }
        double term = term_scale * rgamma(arg);
        if (k % 2 != 0) term = -term;
        double y = term - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        term_scale *= x / double(k + 1);
        max_term = std::max(max_term, std::abs(term));
        ++terms;
        // the reciprocal-gamma factor grows, so judge the tail by the terms
        // themselves (windowed: isolated zeros sit at the gamma poles)
        recent[k % 3] = std::abs(term);
        double tail = std::max({recent[0], recent[1], recent[2]});
        if (tail < 1e-17 * (std::abs(sum) + 1e-300) && double(k) > x + 4.0) break;
    }
    // when cancellation noise drowns the sum, the saddle form is the better
    // estimate (and keeps the sign information)
    double noise = max_term * 3e-16 * (std::sqrt(double(terms)) + 2.0);
    if (aborted || std::abs(sum) <= 50.0 * noise) return mainardi_saddle(nu, x);
    return sum;
}

} // namespace foxh
