#include "doctest.h"
#include "foxh/hrewrite.hpp"
#include "foxh/heval.hpp"
#include "foxh/kernel.hpp"
#include "foxh/mittag.hpp"
#include "foxh/positivity.hpp"
#include "foxh/quad.hpp"
#include <cmath>
using namespace foxh;

namespace {
const double kPi = 3.14159265358979323846;

HExpr exp_hexpr() {
    HExpr e;
    e.h = exp_hparams();
    return e;
}

bool hparams_close(const HParams& a, const HParams& b, double tol = 1e-12) {
    if (a.m != b.m || a.n != b.n || a.p() != b.p() || a.q() != b.q()) return false;
    for (int i = 0; i < a.p(); ++i)
        if (std::abs(a.upper[i].coeff - b.upper[i].coeff) > tol ||
            std::abs(a.upper[i].scale - b.upper[i].scale) > tol)
            return false;
    for (int j = 0; j < a.q(); ++j)
        if (std::abs(a.lower[j].coeff - b.lower[j].coeff) > tol ||
            std::abs(a.lower[j].scale - b.lower[j].scale) > tol)
            return false;
    return true;
}

// numeric soundness: both expressions represent the same function
void check_same_function(const HExpr& a, const HExpr& b, double lo, double hi,
                         double rtol = 1e-8) {
    for (int i = 0; i < 5; ++i) {
        double x = lo * std::pow(hi / lo, i / 4.0);
        double va = eval_hexpr(a, x).value;
        double vb = eval_hexpr(b, x).value;
        CHECK(std::abs(va - vb) <= rtol * (std::abs(va) + std::abs(vb) + 1e-300));
    }
}
} // namespace

TEST_CASE("cancel (iii): the beta = 2 reduction chain") {
    double alpha = 0.7;
    int d = 3;
    HExpr g = fundsol_hexpr(alpha, 2.0, d, 1.0);
    // first upper (1,1) equals last lower (1,1)
    HExpr r = g;
    r.h = cancel_first_upper_last_lower(g.h);
    CHECK(hparams_close(r.h, fundsol_beta2_hparams(alpha, d)));
    check_same_function(g, r, 0.3, 3.0);

    HParams bad = fundsol_hparams(0.7, 1.5, 3); // (1,1) vs (1, 0.75): mismatch
    CHECK_THROWS_AS(cancel_first_upper_last_lower(bad), RewriteError);
}

TEST_CASE("cancel (ii): mismatch guard and p+q decrease") {
    HParams h = fundsol_hparams(0.7, 1.5, 3);
    CHECK_THROWS_AS(cancel_first_lower_last_upper(h), RewriteError);

    // append a matching pair to the ML instance and cancel it back off
    HParams ext = ml_hparams(0.9);
    ext.upper.push_back({0.3, 0.8});
    ext.lower.insert(ext.lower.begin(), {0.3, 0.8});
    ext.m += 1;
    HParams red = cancel_first_lower_last_upper(ext);
    CHECK(hparams_close(red, ml_hparams(0.9)));
    CHECK(red.p() + red.q() == ext.p() + ext.q() - 2);
    HExpr a, b;
    a.h = ext;
    b.h = red;
    check_same_function(a, b, 0.1, 5.0, 1e-10);
}

TEST_CASE("reflect is an involution and preserves the function") {
    HExpr e = fundsol_hexpr(1.5, 2.0, 1, 1.0); // dyadic scalars round-trip bit-exactly
    HExpr rr = reflect(reflect(e));
    CHECK(rr == e);

    HExpr x = exp_hexpr();
    HExpr r = reflect(x);
    for (double z : {0.5, 2.0}) {
        // parameter-level inversion: H[h'](z) = H[h](1/z)
        double inv = eval_auto(x.h, 1.0 / z).value;
        CHECK(eval_auto(r.h, z).value == doctest::Approx(inv).epsilon(1e-12));
        // and the dressed expression still represents exp(-x)
        CHECK(eval_hexpr(r, z).value == doctest::Approx(std::exp(-z)).epsilon(1e-12));
    }
}

TEST_CASE("power_shift: identity at sigma = 0 and round trip") {
    HExpr e = fundsol_hexpr(0.7, 1.2, 2, 1.0);
    CHECK(power_shift(e, 0.0) == e);
    HExpr s = power_shift(e, 0.75);
    CHECK(s.power == doctest::Approx(e.power - 0.75 * e.arg_power));
    check_same_function(e, s, 0.2, 5.0, 1e-10);
    HExpr back = power_shift(s, -0.75);
    check_same_function(e, back, 0.2, 5.0, 1e-12);
}

TEST_CASE("rescale: identity at k = 1 and round trip") {
    HExpr e = fundsol_hexpr(0.7, 1.2, 2, 1.0);
    CHECK(rescale(e, 1.0) == e);
    CHECK_THROWS_AS(rescale(e, -0.5), RewriteError);
    HExpr s = rescale(e, 2.5);
    check_same_function(e, s, 0.3, 3.0, 1e-9);
    HExpr back = rescale(s, 1.0 / 2.5);
    check_same_function(e, back, 0.3, 3.0, 1e-9);
}

TEST_CASE("heat-kernel reduction: power shift exposes z^{d/2} e^{-z}") {
    // H^{10}_{01}(z | -; (d/2,1)) = z^{d/2} e^{-z}: shifting the parameter
    // pair down to (0,1) moves the power out front
    for (int d : {1, 2, 3}) {
        HExpr e;
        e.h.m = 1;
        e.h.n = 0;
        e.h.lower = {{0.5 * d, 1.0}};
        HExpr s = power_shift(e, -0.5 * d);
        CHECK(s.h.lower[0].coeff == doctest::Approx(0.0));
        CHECK(s.power == doctest::Approx(0.5 * d));
        for (double z : {0.4, 1.3}) {
            double lhs = eval_hexpr(e, z).value;
            CHECK(lhs == doctest::Approx(std::pow(z, 0.5 * d) * std::exp(-z)).epsilon(1e-10));
            CHECK(eval_hexpr(s, z).value == doctest::Approx(lhs).epsilon(1e-10));
        }
    }
}

TEST_CASE("derivative_lift: exponential derivative and finite differences") {
    HExpr e = exp_hexpr();
    HExpr d1 = derivative_lift(e, 1);
    for (double z : {0.5, 1.0, 2.0}) {
        CHECK(eval_hexpr(d1, z).value == doctest::Approx(-std::exp(-z)).epsilon(1e-10));
    }
    CHECK_THROWS_AS(derivative_lift(e, 0), RewriteError);

    // omega = 0, sigma = 1, k = 1 against central differences
    HExpr ml;
    ml.h = ml_hparams(0.7);
    HExpr dml = derivative_lift(ml, 1);
    for (double z : {0.5, 1.5}) {
        double hstep = 1e-4;
        double fd = (eval_hexpr(ml, z + hstep).value - eval_hexpr(ml, z - hstep).value) /
                    (2.0 * hstep);
        CHECK(eval_hexpr(dml, z).value == doctest::Approx(fd).epsilon(1e-6));
    }

    // second form with block swap reproduces the psi-tilde'' parameters
    double alpha = 1.5, beta = 1.2;
    int d = 2;
    HExpr lifted = derivative_lift(psi_tilde_hexpr(alpha, beta, d), 2, LiftForm::PrependLeft);
    HExpr swapped = swap_lower(lifted, 0, 1);
    HExpr reduced = swapped;
    reduced.h = cancel_first_lower_last_upper(swapped.h);
    HExpr direct = psi_tilde_dd_hexpr(alpha, beta, d);
    CHECK(hparams_close(reduced.h, direct.h));
    CHECK(reduced.power == doctest::Approx(direct.power));
    CHECK(reduced.constant == doctest::Approx(direct.constant));
    // and the first form agrees in value even though its parameter lists
    // admit no cancellation
    HExpr lifted1 = derivative_lift(psi_tilde_hexpr(alpha, beta, d), 2);
    check_same_function(lifted1, direct, 0.5, 2.0, 1e-8);
}

TEST_CASE("laplace_map: exponential and Mittag-Leffler closed forms") {
    HExpr L = laplace_map(exp_hexpr());
    CHECK(L.h.m == 1);
    CHECK(L.h.n == 1);
    for (double p : {0.5, 1.0, 2.0}) {
        CHECK(eval_hexpr(L, p).value == doctest::Approx(1.0 / (1.0 + p)).epsilon(1e-10));
    }

    double a = 0.6;
    HExpr ml;
    ml.h = ml_hparams(a);
    HExpr Lml = laplace_map(ml);

    // forward quadrature cross-check at p in {0.5, 1, 2}
    for (double p : {0.5, 1.0, 2.0}) {
        auto f = [&](double x) { return eval_hexpr(ml, x).value * std::exp(-p * x); };
        QuadResult q = integrate_graded_origin(f, 60.0 / p, 1e-8);
        CHECK(std::abs(q.value - eval_hexpr(Lml, p).value) < 1e-6);
    }

    // a* = 0 instance rejected
    HExpr bad;
    bad.h.m = 0;
    bad.h.n = 1;
    bad.h.upper = {{0.0, 1.0}};
    bad.h.lower = {{0.0, 1.0}};
    CHECK_THROWS_AS(laplace_map(bad), RewriteError);
}

TEST_CASE("laplace_map integrability decided by live residues") {
    // psi in its reflected form has a removable leading pole at s = 1: the
    // raw min(b_j/beta_j) = -1 condition fails but the map must go through
    double alpha = 1.5, beta = 1.2;
    int d = 1;
    HExpr psi2 = reflect(power_shift(psi_hexpr(alpha, beta, d), 1.0));
    double minb = 1e300;
    for (int j = 0; j < psi2.h.m; ++j)
        minb = std::min(minb, psi2.h.lower[j].coeff / psi2.h.lower[j].scale);
    CHECK(minb == doctest::Approx(-1.0)); // the naive condition indeed fails
    CHECK_NOTHROW(laplace_map(psi2));
}

TEST_CASE("full Laplace chain ends at the psi-tilde instance") {
    for (auto [alpha, beta, d] : {std::tuple{1.5, 1.2, 1}, std::tuple{0.7, 1.5, 2},
                                  std::tuple{1.5, 2.0, 3}}) {
        HExpr chain = psi_hexpr(alpha, beta, d);
        chain = power_shift(chain, 1.0);
        chain = reflect(chain);
        chain = laplace_map(chain);
        chain = power_shift(chain, 1.0);
        chain = reflect(chain);
        chain = rescale(chain, 2.0 * alpha / beta);
        HExpr direct = psi_tilde_hexpr(alpha, beta, d);
        CHECK(hparams_close(chain.h, direct.h));
        CHECK(chain.constant == doctest::Approx(direct.constant).epsilon(1e-13));
        CHECK(chain.power == doctest::Approx(direct.power));
        CHECK(chain.arg_coeff == doctest::Approx(direct.arg_coeff).epsilon(1e-13));
        CHECK(chain.arg_power == doctest::Approx(direct.arg_power).epsilon(1e-13));
    }
}

TEST_CASE("hankel_map: the radial Fourier chain ends at Mittag-Leffler") {
    for (auto [alpha, beta, d] : {std::tuple{0.7, 1.5, 1}, std::tuple{1.3, 0.8, 3}}) {
        double t = 1.0;
        HExpr g = fundsol_hexpr(alpha, beta, d, t);
        HExpr f = hankel_map(g, 0.5 * d, 0.5 * d - 1.0, beta);
        f.power += 1.0 - double(d); // the xi^{1-d/2} prefactor of the transform
        CHECK(f.power == doctest::Approx(0.0));
        CHECK(f.constant == doctest::Approx(std::pow(2.0 * kPi, -0.5 * d)).epsilon(1e-13));

        HExpr s1 = f;
        s1.h = cancel_first_upper_last_lower(f.h);
        HExpr s2 = s1;
        s2.h = cancel_first_lower_last_upper(s1.h);
        HExpr s3 = reflect(s2);
        CHECK(hparams_close(s3.h, ml_hparams(alpha)));
        CHECK(s3.arg_coeff == doctest::Approx(std::pow(t, alpha)).epsilon(1e-13));
        CHECK(s3.arg_power == doctest::Approx(beta));

        // numeric endpoint: (2 pi)^{-d/2} E_alpha(-t^alpha xi^beta)
        for (double xi : {0.5, 2.0}) {
            double lhs = eval_hexpr(s3, xi).value;
            double rhs = std::pow(2.0 * kPi, -0.5 * d) *
                         ml_neg(alpha, std::pow(t, alpha) * std::pow(xi, beta));
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
        }
    }
    HExpr g = fundsol_hexpr(0.7, 1.5, 1, 1.0);
    CHECK_THROWS_AS(hankel_map(g, 0.5, -0.5, -1.0), RewriteError);
}
