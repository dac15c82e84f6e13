#include "foxh/kernel.hpp"

#include "foxh/quad.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace foxh {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

double gamma_pos(double x) { return std::exp(std::lgamma(x)); }

} // namespace

HParams fundsol_hparams(double alpha, double beta, int d) {
    HParams h;
    h.m = 2;
    h.n = 1;
    h.upper = {{1.0, 1.0}, {1.0, alpha}};
    h.lower = {{0.5 * d, 0.5 * beta}, {1.0, 1.0}, {1.0, 0.5 * beta}};
    return h;
}

HExpr fundsol_hexpr(double alpha, double beta, int d, double t) {
    HExpr e;
    e.constant = std::pow(kPi, -0.5 * d);
    e.power = -double(d);
    e.h = fundsol_hparams(alpha, beta, d);
    e.arg_coeff = std::pow(2.0, -beta) * std::pow(t, -alpha);
    e.arg_power = beta;
    return e;
}

HParams fundsol_beta2_hparams(double alpha, int d) {
    HParams h;
    h.m = 2;
    h.n = 0;
    h.upper = {{1.0, alpha}};
    h.lower = {{0.5 * d, 1.0}, {1.0, 1.0}};
    return h;
}

HExpr fundsol_beta2_hexpr(double alpha, int d, double t) {
    HExpr e;
    e.constant = std::pow(kPi, -0.5 * d);
    e.power = -double(d);
    e.h = fundsol_beta2_hparams(alpha, d);
    e.arg_coeff = 0.25 * std::pow(t, -alpha);
    e.arg_power = 2.0;
    return e;
}

HParams ml_hparams(double alpha) {
    HParams h;
    h.m = 1;
    h.n = 1;
    h.upper = {{0.0, 1.0}};
    h.lower = {{0.0, 1.0}, {0.0, alpha}};
    return h;
}

HParams exp_hparams() {
    HParams h;
    h.m = 1;
    h.n = 0;
    h.lower = {{0.0, 1.0}};
    return h;
}

HParams mainardi_hparams(double nu) {
    HParams h;
    h.m = 1;
    h.n = 0;
    h.upper = {{1.0 - nu, nu}};
    h.lower = {{0.0, 1.0}};
    return h;
}

void check_kernel_point(const KernelPoint& p) {
    if (!(p.alpha > 0.0 && p.alpha < 2.0))
        throw std::domain_error("kernel: alpha must lie in (0, 2)");
    if (!(p.beta > 0.0 && p.beta <= 2.0))
        throw std::domain_error("kernel: beta must lie in (0, 2]");
    if (p.d < 1) throw std::domain_error("kernel: d must be >= 1");
    if (!(p.t > 0.0)) throw std::domain_error("kernel: t must be > 0");
    if (!(p.r > 0.0)) throw std::domain_error("kernel: r must be > 0");
}

double g_heat(int d, double t, double r) {
    return std::pow(4.0 * kPi * t, -0.5 * d) * std::exp(-r * r / (4.0 * t));
}

double g_elementary(double beta, double t, double r) {
    double tb = std::pow(t, beta);
    double rb = std::pow(r, beta);
    double num = std::pow(r, beta - 1.0) * tb * sin_pi(0.5 * beta);
    double den = tb * tb + 2.0 * rb * tb * cos_pi(0.5 * beta) + rb * rb;
    return num / (kPi * den);
}

const char* g_route(const KernelPoint& p) {
    if (p.alpha == 1.0 && p.beta == 2.0) return "heat";
    if (p.d == 1 && p.alpha == p.beta) return "elementary";
    if (p.beta == 2.0) return "h-beta2";
    return "h";
}

EvalResult g_eval(const KernelPoint& p, double tol) {
    check_kernel_point(p);
    if (p.alpha == 1.0 && p.beta == 2.0) {
        double v = g_heat(p.d, p.t, p.r);
        return {v, 4e-16 * std::abs(v), EvalMethod::SeriesLeft, 0, false};
    }
    if (p.d == 1 && p.alpha == p.beta) {
        double v = g_elementary(p.beta, p.t, p.r);
        return {v, 4e-16 * std::abs(v), EvalMethod::SeriesLeft, 0, false};
    }
    if (p.beta == 2.0)
        return eval_hexpr(fundsol_beta2_hexpr(p.alpha, p.d, p.t), p.r, tol);
    return eval_hexpr(fundsol_hexpr(p.alpha, p.beta, p.d, p.t), p.r, tol);
}

EvalResult g_eval_h(const KernelPoint& p, double tol) {
    check_kernel_point(p);
    return eval_hexpr(fundsol_hexpr(p.alpha, p.beta, p.d, p.t), p.r, tol);
}

double scaling_check(const KernelPoint& p, double lambda) {
    check_kernel_point(p);
    if (!(lambda > 0.0)) throw std::domain_error("scaling_check: lambda must be > 0");
    const double lt = lambda * p.t;
    KernelPoint a{p.alpha, p.beta, p.d, lt, p.r};
    double scale = std::pow(lt, -p.alpha * p.d / p.beta);
    KernelPoint b{p.alpha, p.beta, p.d, 1.0, std::pow(lt, -p.alpha / p.beta) * p.r};
    double va = g_eval(a).value;
    double vb = scale * g_eval(b).value;
    double resid = std::abs(va - vb);
    return std::abs(va) > 1e-300 ? resid / std::abs(va) : resid;
}

double radial_mass(double alpha, double beta, int d, double t, double* err_est) {
    check_kernel_point({alpha, beta, d, t, 1.0});
    const double surf = 2.0 * std::pow(kPi, 0.5 * d) / gamma_pos(0.5 * d);
    const double rs = std::pow(t, alpha / beta); // self-similar split radius
    const double tol = 4e-7;

    // Inner region: substituting w = r^c with c = min(beta, d) absorbs the
    // r^{beta-d} origin singularity analytically, so the integrand is
    // bounded and plain adaptive panels converge quickly.
    const double c = std::min(beta, double(d));
    auto inner_f = [&](double w) {
        double r = std::pow(w, 1.0 / c);
        return (surf / c) * std::pow(w, double(d) / c - 1.0) *
               g_eval({alpha, beta, d, t, r}).value;
    };
    QuadResult inner = integrate_adaptive(inner_f, 0.0, std::pow(rs, c), 0.5 * tol);

    // Tail: r = v^{-1/beta} turns the t^alpha r^{-d-beta} decay into a
    // bounded integrand on (0, rs^{-beta}].
    auto outer_f = [&](double v) {
        double r = std::pow(v, -1.0 / beta);
        return (surf / beta) * std::pow(v, -double(d) / beta - 1.0) *
               g_eval({alpha, beta, d, t, r}).value;
    };
    QuadResult outer = integrate_adaptive(outer_f, 0.0, std::pow(rs, -beta), 0.5 * tol);

    if (err_est) *err_est = inner.err_est + outer.err_est;
    return inner.value + outer.value;
}

namespace {

// k-th positive zero of J_nu for nu in {-1/2, 0, 1/2}; McMahon + Newton.
double bessel_zero(double nu, int k) {
    if (nu == -0.5) return (k - 0.5) * kPi;
    if (nu == 0.5) return k * kPi;
    double a = (k - 0.25) * kPi;
    double x = a + 1.0 / (8.0 * a) - 124.0 / (3.0 * std::pow(8.0 * a, 3));
    for (int it = 0; it < 4; ++it) {
        double f = bessel_j(0.0, x);
        // J0' = -J1; central difference avoids carrying J1
        double der = (bessel_j(0.0, x + 1e-6) - bessel_j(0.0, x - 1e-6)) / 2e-6;
        if (der == 0.0) break;
        x -= f / der;
    }
    return x;
}

} // namespace

FourierCheck fourier_check(double alpha, double beta, int d, double t, double xi) {
    if (d < 1 || d > 3) throw std::domain_error("fourier_check: d must be 1, 2 or 3");
    check_kernel_point({alpha, beta, d, t, 1.0});
    if (!(xi > 0.0)) throw std::domain_error("fourier_check: xi must be > 0");
    const double nu = 0.5 * d - 1.0;

    auto f = [&](double r) {
        return std::pow(r, 0.5 * d) * bessel_j(nu, r * xi) *
               g_eval({alpha, beta, d, t, r}).value;
    };

    // Panels between consecutive zeros of the oscillating Bessel factor; the
    // alternating partial sums are extrapolated by repeated averaging.  The
    // head panel flattens the r^{beta-1}-type origin behavior by w = r^c.
    const double tol = 1e-7;
    double z_prev = 0.0;
    double sum = 0.0;
    std::vector<double> partials;
    const double c = std::min(beta, 1.0);
    auto head_f = [&](double w) {
        double r = std::pow(w, 1.0 / c);
        return f(r) * std::pow(w, 1.0 / c - 1.0) / c;
    };
    double r1 = bessel_zero(nu, 1) / xi;
    QuadResult head = integrate_adaptive(head_f, 0.0, std::pow(r1, c), tol);
    sum = head.value;
    z_prev = r1;
    partials.push_back(sum);
    double extrap = sum, extrap_prev = 0.0;
    for (int k = 2; k <= 400; ++k) {
        double z_next = bessel_zero(nu, k) / xi;
        QuadResult panel = integrate_adaptive(f, z_prev, z_next, tol, 12);
        sum += panel.value;
        partials.push_back(sum);
        z_prev = z_next;
        if (partials.size() >= 6) {
            std::vector<double> window(partials.end() - 6, partials.end());
            extrap_prev = extrap;
            extrap = alternating_limit(window);
            if (k > 8 && std::abs(extrap - extrap_prev) < 2e-7 &&
                std::abs(panel.value) < 1e-3 * (std::abs(extrap) + 1e-9))
                break;
        }
    }

    FourierCheck out;
    out.lhs = std::pow(2.0 * kPi, 0.5 * d) * std::pow(xi, 1.0 - 0.5 * d) * extrap;
    out.rhs = ml_neg(alpha, std::pow(xi, beta) * std::pow(t, alpha));
    return out;
}

AsymptoticRegime asymptotic_regime(const KernelPoint& p) {
    check_kernel_point(p);
    const double R = std::pow(p.r, p.beta) * std::pow(p.t, -p.alpha);
    AsymptoticRegime out{};
    if (R <= 1.0) {
        if (p.alpha == 1.0 || p.beta > double(p.d)) {
            out.regime = Regime::SmallR_Power;
            out.bound_coeff = std::pow(p.t, -p.alpha * p.d / p.beta);
            out.bound_exponent = 0.0;
        } else if (p.beta == double(p.d)) {
            out.regime = Regime::SmallR_Log;
            out.bound_coeff = std::pow(p.t, -p.alpha);
            out.bound_exponent = 0.0;
        } else {
            out.regime = Regime::SmallR_SingularPower;
            out.bound_coeff = std::pow(p.t, -p.alpha);
            out.bound_exponent = p.beta - double(p.d);
        }
    } else {
        if (p.beta == 2.0) {
            out.regime = Regime::LargeR_Exponential;
            out.bound_coeff = std::pow(p.t, -p.alpha * p.d / 2.0);
            out.bound_exponent = 1.0 / (2.0 - p.alpha); // exp(-c R^this)
        } else {
            out.regime = Regime::LargeR_Algebraic;
            out.bound_coeff = std::pow(p.t, p.alpha);
            out.bound_exponent = -(double(p.d) + p.beta);
        }
    }
    return out;
}

double subordination_eval(double alpha, double beta, double x) {
    if (!(alpha > 1.0 && alpha <= beta && beta <= 2.0))
        throw std::domain_error("subordination_eval: requires 1 < alpha <= beta <= 2");
    if (!(x > 0.0)) throw std::domain_error("subordination_eval: x must be > 0");
    if (alpha == beta) return g_elementary(alpha, 1.0, x);

    // The convolution partner is the alpha = beta = "spatial order" kernel:
    // on the Mellin side M(K_{a,b})(s) / M(K_{b,b})(s) = G(s)/G(1-nu+nu s)
    // with every beta-dependent factor cancelling, which is exactly the
    // Mellin transform of the Mainardi density M_nu, nu = a/b.  At b = 2 the
    // base kernel degenerates to half-sums of deltas at |x| = t and the
    // convolution collapses to the classical (1/2) M_{a/2}(x).
    const double nu = alpha / beta;
    if (beta == 2.0) return 0.5 * mainardi(0.5 * alpha, x);

    // Mainardi cut where exp(-B y^{1/(1-nu)}) drops below ~1e-18
    const double om = 1.0 - nu;
    const double B = om * std::pow(nu, nu / om);
    const double ymax = 1.3 * std::pow(42.0 / B, om);

    auto f = [&](double y) {
        return g_elementary(beta, 1.0, x / y) * mainardi(nu, y) / y;
    };
    QuadResult q = integrate_graded_origin(f, ymax, 2e-8);
    return q.value;
}

} // namespace foxh
