#pragma once

#include "foxh/hcore.hpp"
#include "foxh/hrewrite.hpp"

namespace foxh {

struct EvalDomainError : std::domain_error {
    explicit EvalDomainError(const std::string& w) : std::domain_error(w) {}
};
struct ConvergenceError : std::runtime_error {
    explicit ConvergenceError(const std::string& w) : std::runtime_error(w) {}
};

enum class EvalMethod { SeriesLeft, SeriesRight, Contour };

struct EvalResult {
    double value = 0.0;
    double abs_err_est = 0.0;
    EvalMethod method = EvalMethod::SeriesLeft;
    int terms_or_nodes = 0;
    /// set when the right series was used as a divergent asymptotic expansion
    /// with optimal truncation, or when n == 0 leaves an exponential-decay
    /// regime with no algebraic expansion at infinity.
    bool asymptotic = false;
};

/// Sum of residues over the left pole set; valid for D > 0, or D == 0 with
/// z < delta.  Order-1 poles use the gamma-ratio residue, order-2 poles the
/// digamma/log formula c1 z^{-s0} log z + c0 z^{-s0}.
EvalResult eval_series_left(const HParams& h, double z, double tol = 1e-10,
                            int max_terms = 1000);

/// Negated sum over the right pole set; convergent for D < 0, or D == 0 with
/// z > delta.  For D > 0 it is the divergent large-z asymptotic expansion,
/// truncated at the smallest term and flagged.
EvalResult eval_series_right(const HParams& h, double z, double tol = 1e-10,
                             int max_terms = 1000);

/// Mellin-Barnes quadrature on a vertical line between the pole sets
/// (trapezoid rule, spectrally accurate for the exponentially decaying
/// analytic integrand).  Requires a_star > 0.
EvalResult eval_contour(const HParams& h, double z, double tol = 1e-10);

/// Route selection: D>0 & z<=1 left, D<0 & z>=1 right, D==0 left/right with
/// 0.9/1.1 delta hysteresis, contour otherwise; falls back to the contour on
/// series non-convergence.
EvalResult eval_auto(const HParams& h, double z, double tol = 1e-10);

/// Leading small-z (Left) or large-z (Right) term of the expansion, so that
/// H(z) ~ coeff * z^exponent, or for a net double pole
/// H(z) ~ coeff * z^exponent * log z + second_coeff * z^exponent.
struct LeadingTerm {
    double coeff = 0.0;
    double exponent = 0.0;
    bool has_log = false;
    double second_coeff = 0.0;
};
LeadingTerm leading_term(const HParams& h, PoleSide side);

/// Laurent data of the full kernel at a candidate pole location.
/// net_order <= 0 means removable; the term value at argument z is
///   sign * exp(logc) * z^{-s0}                        (net_order == 1)
///   sign * exp(logc) * z^{-s0} * (r1sum - log z)      (net_order == 2)
struct ResidueTerm {
    double s0 = 0.0;
    int net_order = 0;
    double logc = 0.0;
    int sign = 1;
    double r1sum = 0.0;
    double value(double z) const;
};
ResidueTerm laurent_residue(const HParams& h, double s0);

/// Evaluates a scalar-dressed H-expression at x > 0 through eval_auto.
EvalResult eval_hexpr(const HExpr& e, double x, double tol = 1e-10);

} // namespace foxh
