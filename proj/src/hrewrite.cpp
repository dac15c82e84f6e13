#include "foxh/hrewrite.hpp"
#include "foxh/heval.hpp"

#include <cmath>
#include <sstream>

namespace foxh {

namespace {

bool pairs_equal(const GammaPair& a, const GammaPair& b) {
    return std::abs(a.coeff - b.coeff) <= 1e-12 * (1.0 + std::abs(a.coeff)) &&
           std::abs(a.scale - b.scale) <= 1e-12 * (1.0 + std::abs(a.scale));
}

} // namespace

HParams cancel_first_lower_last_upper(const HParams& h) {
    if (h.m < 1 || h.p() <= h.n)
        throw RewriteError("cancel (ii): requires m >= 1 and p > n");
    if (!pairs_equal(h.upper.back(), h.lower.front()))
        throw RewriteError("cancel (ii): last upper pair != first lower pair");
    HParams r = h;
    r.upper.pop_back();
    r.lower.erase(r.lower.begin());
    r.m -= 1;
    return r;
}

HParams cancel_first_upper_last_lower(const HParams& h) {
    if (h.n < 1 || h.q() <= h.m)
        throw RewriteError("cancel (iii): requires n >= 1 and q > m");
    if (!pairs_equal(h.upper.front(), h.lower.back()))
        throw RewriteError("cancel (iii): first upper pair != last lower pair");
    HParams r = h;
    r.upper.erase(r.upper.begin());
    r.lower.pop_back();
    r.n -= 1;
    return r;
}

HExpr reflect(const HExpr& e) {
    HExpr r;
    r.constant = e.constant;
    r.power = e.power;
    r.arg_coeff = 1.0 / e.arg_coeff;
    r.arg_power = -e.arg_power;
    r.h.m = e.h.n;
    r.h.n = e.h.m;
    r.h.upper.reserve(e.h.q());
    for (const GammaPair& gp : e.h.lower) r.h.upper.push_back({1.0 - gp.coeff, gp.scale});
    r.h.lower.reserve(e.h.p());
    for (const GammaPair& gp : e.h.upper) r.h.lower.push_back({1.0 - gp.coeff, gp.scale});
    return r;
}

HExpr power_shift(const HExpr& e, double sigma) {
    if (sigma == 0.0) return e;
    HExpr r = e;
    r.constant = e.constant * std::pow(e.arg_coeff, -sigma);
    r.power = e.power - sigma * e.arg_power;
    for (GammaPair& gp : r.h.upper) gp.coeff += sigma * gp.scale;
    for (GammaPair& gp : r.h.lower) gp.coeff += sigma * gp.scale;
    return r;
}

HExpr rescale(const HExpr& e, double k) {
    if (!(k > 0.0)) throw RewriteError("rescale: k must be > 0");
    if (k == 1.0) return e;
    HExpr r = e;
    r.constant = e.constant * k;
    r.arg_coeff = std::pow(e.arg_coeff, k);
    r.arg_power = e.arg_power * k;
    for (GammaPair& gp : r.h.upper) gp.scale *= k;
    for (GammaPair& gp : r.h.lower) gp.scale *= k;
    return r;
}

HExpr derivative_lift(const HExpr& e, int k, LiftForm form) {
    if (k < 1) throw RewriteError("derivative_lift: k must be >= 1");
    if (!(e.arg_power > 0.0))
        throw RewriteError("derivative_lift: requires arg_power > 0");
    const double w = e.power;
    const double s = e.arg_power;
    HExpr r = e;
    r.power = w - double(k);
    if (form == LiftForm::PrependRight) {
        r.h.upper.insert(r.h.upper.begin(), {-w, s});
        r.h.lower.push_back({double(k) - w, s});
        r.h.n += 1;
    } else {
        r.h.upper.push_back({-w, s});
        r.h.lower.insert(r.h.lower.begin(), {double(k) - w, s});
        r.h.m += 1;
        if (k % 2 != 0) r.constant = -r.constant;
    }
    return r;
}

HExpr laplace_map(const HExpr& e) {
    if (e.power != 0.0 || e.arg_power != 1.0)
        throw RewriteError(
            "laplace_map: expression must be in canonical shape const * H(c x) "
            "(apply power_shift / rescale first)");
    HDerived d = derived_params(e.h);
    if (!(d.a_star > 0.0)) throw RewriteError("laplace_map: requires a_star > 0");

    // Integrability at zero is decided from the first left pole carrying a
    // nonzero residue, not from the raw min(b_j / beta_j) condition: leading
    // poles whose residues a denominator factor kills are removable.
    if (e.h.m > 0) {
        try {
            LeadingTerm lt = leading_term(e.h, PoleSide::Left);
            // H(w) ~ coeff * w^{lt.exponent}; integrable at 0 iff exponent > -1
            if (!(lt.exponent > -1.0 + 1e-12))
                throw RewriteError("laplace_map: integrand divergent at zero");
        } catch (const EvalDomainError&) {
            // all candidate poles removable: decays faster than any power
        }
    }

    HExpr r;
    r.constant = e.constant;
    r.power = -1.0;
    r.h = e.h;
    r.h.upper.insert(r.h.upper.begin(), {0.0, 1.0});
    r.h.n += 1;
    r.arg_coeff = e.arg_coeff;
    r.arg_power = -1.0;
    return r;
}

HExpr hankel_map(const HExpr& e, double omega, double eta, double tau) {
    if (!(tau > 0.0)) throw RewriteError("hankel_map: tau must be > 0");
    if (std::abs(tau - e.arg_power) > 1e-12 * (1.0 + std::abs(tau)))
        throw RewriteError("hankel_map: tau must equal the expression's arg_power");
    const double w_eff = omega + e.power;

    // Absolute convergence.  Near 0 the integrand behaves like
    // r^{w_eff + eta + tau * E0} with H(w) ~ w^{E0} at the first live left
    // pole; at infinity like r^{w_eff - 1/2 + tau * Einf}.
    if (e.h.m > 0) {
        try {
            double e0 = leading_term(e.h, PoleSide::Left).exponent;
            if (!(w_eff + eta + tau * e0 > -1.0 + 1e-12))
                throw RewriteError("hankel_map: integral divergent at zero");
        } catch (const EvalDomainError&) {
            // all candidates removable: H decays faster than any power at 0
        }
    }
    if (e.h.n > 0) {
        try {
            double einf = leading_term(e.h, PoleSide::Right).exponent;
            if (!(w_eff - 0.5 + tau * einf < -1.0 - 1e-12))
                throw RewriteError("hankel_map: integral not absolutely convergent at infinity");
        } catch (const EvalDomainError&) {
            // empty algebraic expansion: exponential decay at infinity
        }
    }

    HExpr r;
    r.constant = e.constant * std::pow(2.0, w_eff);
    r.power = -e.power - 1.0;
    r.h = e.h;
    r.h.upper.insert(r.h.upper.begin(), {1.0 - 0.5 * (w_eff + 1.0) - 0.5 * eta, 0.5 * tau});
    r.h.upper.push_back({1.0 - 0.5 * (w_eff + 1.0) + 0.5 * eta, 0.5 * tau});
    r.h.n += 1;
    r.arg_coeff = e.arg_coeff * std::pow(2.0, tau);
    r.arg_power = -tau;
    return r;
}

namespace {

bool same_block(int i, int j, int split, int count) {
    if (i < 0 || j < 0 || i >= count || j >= count) return false;
    return (i < split) == (j < split);
}

} // namespace

HExpr swap_upper(const HExpr& e, int i, int j) {
    if (!same_block(i, j, e.h.n, e.h.p()))
        throw RewriteError("swap_upper: positions must lie in the same block");
    HExpr r = e;
    std::swap(r.h.upper[i], r.h.upper[j]);
    return r;
}

HExpr swap_lower(const HExpr& e, int i, int j) {
    if (!same_block(i, j, e.h.m, e.h.q()))
        throw RewriteError("swap_lower: positions must lie in the same block");
    HExpr r = e;
    std::swap(r.h.lower[i], r.h.lower[j]);
    return r;
}

std::string format_hexpr(const HExpr& e) {
    std::ostringstream os;
    os.precision(17);
    os << e.constant << " * x^" << e.power << " * H[" << format_hparams(e.h) << "]("
       << e.arg_coeff << " * x^" << e.arg_power << ")";
    return os.str();
}

} // namespace foxh
