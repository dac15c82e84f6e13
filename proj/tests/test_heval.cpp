#include "doctest.h"
#include "foxh/heval.hpp"
#include "foxh/kernel.hpp"
#include "foxh/positivity.hpp"
#include <cmath>
#include <random>
using namespace foxh;

namespace {
const double kPi = 3.14159265358979323846;
double gam(double x) { return std::tgamma(x); }

// E_{1/2}(-z) = exp(z) erfc(sqrt(z)) via the scaled complementary error
// function; asymptotic series for large arguments keeps it overflow-free.
double erfcx_ref(double x) {
    if (x < 5.0) return std::exp(x * x) * std::erfc(x);
    double inv2x2 = 1.0 / (2.0 * x * x);
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 12; ++k) {
        term *= -(2.0 * k - 1.0) * inv2x2;
        sum += term;
    }
    return sum / (x * std::sqrt(kPi));
}
double ml_half_ref(double z) { return erfcx_ref(z); } // E_{1/2}(-z) = e^{z^2} erfc(z)
} // namespace

TEST_CASE("left series: exponential instance") {
    EvalResult r = eval_series_left(exp_hparams(), 1.0);
    CHECK(r.value == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
    CHECK(r.method == EvalMethod::SeriesLeft);
    CHECK(r.abs_err_est < 1e-10);
}

TEST_CASE("left series: Mittag-Leffler oracle values") {
    CHECK(eval_series_left(ml_hparams(0.5), 1.0).value ==
          doctest::Approx(ml_half_ref(1.0)).epsilon(1e-11));
    CHECK(eval_series_left(ml_hparams(0.5), 1.0).value ==
          doctest::Approx(0.42758357615580700441).epsilon(1e-11));
    CHECK(eval_series_left(ml_hparams(1.3), 5.0).value ==
          doctest::Approx(-0.13275950847306689644).epsilon(1e-10));
}

TEST_CASE("left series: log terms appear for the d = beta = 2 instance") {
    HParams h = fundsol_hparams(1.5, 2.0, 2);
    LeadingTerm lt = leading_term(h, PoleSide::Left);
    CHECK(lt.has_log);
    CHECK(lt.exponent == doctest::Approx(1.0));
    // alpha > 1: H < 0 near z -> 0 (the log term dominates and z log z < 0)
    CHECK(eval_series_left(h, 1e-8).value < 0.0);
    // alpha < 1: positive near zero
    CHECK(eval_series_left(fundsol_hparams(0.5, 2.0, 2), 1e-8).value > 0.0);
}

TEST_CASE("double-pole profile fits c1 z log z + c0 z with R^2 > 0.9999") {
    HParams h = fundsol_hparams(1.5, 2.0, 2);
    // regress H(z)/z on log z over z in [1e-6, 1e-4]
    int n = 24;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::vector<double> xs(n), ys(n);
    for (int i = 0; i < n; ++i) {
        double z = 1e-6 * std::pow(100.0, i / double(n - 1));
        xs[i] = std::log(z);
        ys[i] = eval_series_left(h, z).value / z;
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    double icept = (sy - slope * sx) / n;
    double ss_res = 0, ss_tot = 0, mean = sy / n;
    for (int i = 0; i < n; ++i) {
        double fit = icept + slope * xs[i];
        ss_res += (ys[i] - fit) * (ys[i] - fit);
        ss_tot += (ys[i] - mean) * (ys[i] - mean);
    }
    CHECK(1.0 - ss_res / ss_tot > 0.9999);
    // slope = c1 = -1/Gamma(1-alpha), positive for alpha in (1,2); the next
    // pole feeds ~z log z into the window, so expect ~1e-4 contamination
    CHECK(slope == doctest::Approx(-1.0 / gam(-0.5)).epsilon(1e-3));
}

TEST_CASE("right series: ML tail and D = 0 closed form") {
    // E_{1/2}(-50) against the x -> inf law 1/(Gamma(1-alpha) x)
    EvalResult r = eval_series_right(ml_hparams(0.5), 50.0);
    double law = 1.0 / (gam(0.5) * 50.0);
    CHECK(std::abs(r.value - law) < 0.03 * std::abs(law));
    CHECK(r.value == doctest::Approx(ml_half_ref(50.0)).epsilon(1e-9));

    // alpha = beta, d = 1: right series beyond delta matches the elementary
    // closed form (the |x| > t region)
    double alpha = 1.5, t = 1.0;
    for (double x : {1.5, 2.5, 6.0}) {
        HExpr e = fundsol_hexpr(alpha, alpha, 1, t);
        double z = e.arg_coeff * std::pow(x, e.arg_power);
        EvalResult rr = eval_series_right(e.h, z);
        double g = e.constant * std::pow(x, e.power) * rr.value;
        CHECK(g == doctest::Approx(g_elementary(alpha, t, x)).epsilon(1e-8));
        CHECK(!rr.asymptotic); // convergent there
    }

    // n = 0: empty algebraic expansion at infinity, flagged
    EvalResult none = eval_series_right(fundsol_beta2_hparams(0.5, 1), 10.0);
    CHECK(none.terms_or_nodes == 0);
    CHECK(none.asymptotic);
}

TEST_CASE("contour quadrature: exponential and cross-method agreement") {
    EvalResult c = eval_contour(exp_hparams(), 2.0);
    CHECK(c.value == doctest::Approx(std::exp(-2.0)).epsilon(1e-10));
    CHECK(c.method == EvalMethod::Contour);

    {
        HExpr e = fundsol_hexpr(0.5, 2.0, 1, 1.0);
        double z = e.arg_coeff * std::pow(0.1, e.arg_power);
        double a = eval_series_left(e.h, z).value;
        double b = eval_contour(e.h, z).value;
        CHECK(a == doctest::Approx(b).epsilon(1e-8));
    }
    {
        HExpr e = fundsol_hexpr(1.5, 1.2, 1, 1.0);
        double z = e.arg_coeff * std::pow(3.0, e.arg_power);
        double a = eval_series_right(e.h, z).value;
        double b = eval_contour(e.h, z).value;
        CHECK(a == doctest::Approx(b).epsilon(1e-7));
    }
}

TEST_CASE("contour handles the empty-right-side exponential regime") {
    // heat-kernel reduced instance: H^{20}_{12}(z) = z^{d/2} e^{-z} exactly
    // when alpha = 1
    HParams h = fundsol_beta2_hparams(1.0, 2);
    for (double z : {5.0, 40.0, 90.0}) {
        EvalResult c = eval_contour(h, z);
        double expect = z * std::exp(-z);
        CHECK(c.value == doctest::Approx(expect).epsilon(1e-9));
    }
}

TEST_CASE("eval_auto routing rules") {
    CHECK(eval_auto(ml_hparams(1.3), 1e-3).method == EvalMethod::SeriesLeft);
    HParams h = fundsol_hparams(1.5, 1.5, 1);
    HDerived d = derived_params(h);
    CHECK(eval_auto(h, d.delta).method == EvalMethod::Contour);
    CHECK(eval_auto(h, 0.5 * d.delta).method == EvalMethod::SeriesLeft);
    CHECK(eval_auto(h, 2.0 * d.delta).method == EvalMethod::SeriesRight);
}

TEST_CASE("eval_auto agrees with the contour on randomized instances") {
    std::mt19937_64 rng(20240811u);
    std::uniform_real_distribution<double> ua(0.15, 1.9), ub(0.3, 2.0), uz(-2.0, 2.0);
    std::uniform_int_distribution<int> ud(1, 3);
    int checked = 0;
    for (int it = 0; it < 100; ++it) {
        double alpha = ua(rng), beta = ub(rng);
        int d = ud(rng);
        double z = std::pow(10.0, uz(rng));
        HParams h = fundsol_hparams(alpha, beta, d);
        EvalResult a = eval_auto(h, z);
        EvalResult c = eval_contour(h, z);
        double tol = std::max(1e-7, 10.0 * (a.abs_err_est + c.abs_err_est));
        CHECK(std::abs(a.value - c.value) <= tol);
        ++checked;
    }
    CHECK(checked == 100);
}

TEST_CASE("left series at z vs reflected right series at 1/z") {
    HExpr e;
    e.h = ml_hparams(0.8);
    HExpr r = reflect(e);
    for (double z : {0.3, 1.0 / 3.0, 0.9}) {
        double a = eval_series_left(e.h, z).value;
        double b = eval_series_right(r.h, 1.0 / z).value;
        CHECK(a == doctest::Approx(b).epsilon(1e-9));
    }
}

TEST_CASE("leading_term formulas") {
    // exponential: residue 1 at s = 0
    LeadingTerm lt = leading_term(exp_hparams(), PoleSide::Left);
    CHECK(lt.coeff == doctest::Approx(1.0));
    CHECK(lt.exponent == doctest::Approx(0.0));
    CHECK(!lt.has_log);

    // fundamental solution with beta > d: residue at s = -d/beta; including
    // the argument factor 2^{-d} the constant is
    // 2^{1-d} G(1-d/b) G(d/b) / (b G(1-a d/b) G(d/2))
    double alpha = 0.7, beta = 1.5;
    int d = 1;
    LeadingTerm f = leading_term(fundsol_hparams(alpha, beta, d), PoleSide::Left);
    CHECK(f.exponent == doctest::Approx(d / beta));
    double expect = std::pow(2.0, 1.0 - d) * gam(1.0 - d / beta) * gam(d / beta) /
                    (beta * gam(1.0 - alpha * d / beta) * gam(0.5 * d));
    double got = f.coeff * std::pow(std::pow(2.0, -beta), d / beta);
    CHECK(got == doctest::Approx(expect).epsilon(1e-11));
    CHECK(!f.has_log);

    // alpha = 1 cancellation: nearest live pole is still -d/beta
    LeadingTerm g1 = leading_term(fundsol_hparams(1.0, 2.0, 3), PoleSide::Left);
    CHECK(g1.exponent == doctest::Approx(1.5));

    // psi-tilde'' kernel, d >= 2 with beta < 2:
    // beta G(2-a) G((d-b)/2) / (2 G(1-a) G(b/2)) at exponent beta/2
    double a2 = 1.5, b2 = 1.0;
    int d2 = 2;
    LeadingTerm p = leading_term(psi_tilde_dd_hexpr(a2, b2, d2).h, PoleSide::Left);
    CHECK(p.exponent == doctest::Approx(0.5 * b2));
    double pexp = b2 * gam(2.0 - a2) * gam(0.5 * (d2 - b2)) /
                  (2.0 * gam(1.0 - a2) * gam(0.5 * b2));
    CHECK(p.coeff == doctest::Approx(pexp).epsilon(1e-11));
    CHECK(p.coeff < 0.0); // the sign-change mechanism

    // d = beta = 2 double pole: log coefficient -G(2-a)/G(1-a) of z^1 log z
    LeadingTerm q = leading_term(psi_tilde_dd_hexpr(1.5, 2.0, 2).h, PoleSide::Left);
    CHECK(q.has_log);
    CHECK(q.exponent == doctest::Approx(1.0));
    CHECK(q.coeff == doctest::Approx(-gam(0.5) / gam(-0.5)).epsilon(1e-11));
}

TEST_CASE("heat-kernel instance: positivity and exponential fit") {
    // alpha = 1: H^{20}_{12}(z) = z^{d/2} e^{-z}; fitted slope of
    // log(-log H + (d/2) log z) vs log z equals 1/(2-alpha) = 1
    HParams h = fundsol_beta2_hparams(1.0, 1);
    double l1 = 10.0, l2 = 100.0;
    double v1 = eval_auto(h, l1).value, v2 = eval_auto(h, l2).value;
    CHECK(v1 > 0.0);
    CHECK(v2 > 0.0);
    double e1 = std::log(-(std::log(v1) - 0.5 * std::log(l1)));
    double e2 = std::log(-(std::log(v2) - 0.5 * std::log(l2)));
    double slope = (e2 - e1) / (std::log(l2) - std::log(l1));
    CHECK(std::abs(slope - 1.0) < 0.05);

    for (double z : {0.01, 0.5, 3.0, 20.0, 60.0}) {
        CHECK(eval_auto(h, z).value > 0.0);
    }
}

TEST_CASE("series guards") {
    CHECK_THROWS_AS(eval_series_left(exp_hparams(), -1.0), EvalDomainError);
    HParams h = fundsol_hparams(1.5, 1.5, 1);
    HDerived d = derived_params(h);
    CHECK_THROWS_AS(eval_series_left(h, 2.0 * d.delta), EvalDomainError);
    CHECK_THROWS_AS(eval_series_right(h, 0.5 * d.delta), EvalDomainError);
}
