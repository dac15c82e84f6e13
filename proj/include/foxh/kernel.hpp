#pragma once

#include "foxh/heval.hpp"
#include "foxh/mittag.hpp"

namespace foxh {

/// Query point for the fundamental solution G_{alpha,beta,d}(t, r), r = |x|.
struct KernelPoint {
    double alpha = 0.5; // in (0, 2)
    double beta = 2.0;  // in (0, 2]
    int d = 1;          // >= 1
    double t = 1.0;     // > 0
    double r = 1.0;     // > 0 (the origin may be singular)
};

enum class Regime {
    SmallR_Power,
    SmallR_Log,
    SmallR_SingularPower,
    LargeR_Algebraic,
    LargeR_Exponential,
};

/// Asymptotic envelope classification at R = r^beta t^{-alpha}:
///   |G| <~ bound_coeff * r^bound_exponent   (power regimes; for the log
///   regime a |log R| + 1 factor rides along, for the exponential regime
///   bound_exponent is the stretching power of R inside exp(-c R^e)).
struct AsymptoticRegime {
    Regime regime;
    double bound_coeff;
    double bound_exponent;
};

/// H-instance of the fundamental solution, as a function of r at fixed t:
///   G = pi^{-d/2} r^{-d} H^{21}_{23}(2^{-beta} t^{-alpha} r^beta).
HParams fundsol_hparams(double alpha, double beta, int d);
HExpr fundsol_hexpr(double alpha, double beta, int d, double t);

/// The beta = 2 reduced instance H^{20}_{12}((1/4) t^{-alpha} r^2).
HParams fundsol_beta2_hparams(double alpha, int d);
HExpr fundsol_beta2_hexpr(double alpha, int d, double t);

/// Mittag-Leffler, exponential and Mainardi instances.
HParams ml_hparams(double alpha);
HParams exp_hparams();
HParams mainardi_hparams(double nu);

void check_kernel_point(const KernelPoint& p);

/// Fundamental solution with route selection: the heat kernel at
/// alpha = 1, beta = 2; the elementary alpha = beta, d = 1 closed form; the
/// reduced H-instance for beta = 2; the full H-instance otherwise.
EvalResult g_eval(const KernelPoint& p, double tol = 1e-10);

/// Same point forced through the full H^{21}_{23} machinery (closed-form
/// routes disabled); the oracle-vs-machinery tests run on this.
EvalResult g_eval_h(const KernelPoint& p, double tol = 1e-10);

/// Short route label for reporting ("heat", "elementary", "h-beta2", "h").
const char* g_route(const KernelPoint& p);

/// (4 pi t)^{-d/2} exp(-r^2 / (4t)).
double g_heat(int d, double t, double r);

/// d = 1, alpha = beta in (0, 2):
/// (1/pi) r^{beta-1} t^beta sin(pi beta/2) / (t^{2 beta} + 2 r^beta t^beta
/// cos(pi beta/2) + r^{2 beta}).
double g_elementary(double beta, double t, double r);

/// Self-similarity residual |G(lt, r) - (lt)^{-ad/b} G(1, (lt)^{-a/b} r)|,
/// relative when the magnitude allows.
double scaling_check(const KernelPoint& p, double lambda);

/// Signed total mass int_{R^d} G(t, x) dx by radial quadrature split at the
/// self-similar radius t^{alpha/beta}; err_est receives the quadrature bound.
double radial_mass(double alpha, double beta, int d, double t, double* err_est = nullptr);

/// Radial Fourier transform of G against the Mittag-Leffler relaxation:
/// lhs = (2 pi)^{d/2} xi^{1-d/2} int r^{d/2} J_{d/2-1}(r xi) G(t, r) dr,
/// rhs = E_alpha(-xi^beta t^alpha).  d <= 3.
struct FourierCheck {
    double lhs;
    double rhs;
};
FourierCheck fourier_check(double alpha, double beta, int d, double t, double xi);

AsymptoticRegime asymptotic_regime(const KernelPoint& p);

/// Mellin-convolution route for d = 1, 1 < alpha <= beta <= 2:
/// int_0^inf K_{alpha,alpha}(x/y) M_{alpha/beta}(y) dy / y at t = 1.
double subordination_eval(double alpha, double beta, double x);

} // namespace foxh
