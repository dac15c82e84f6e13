#pragma once

#include <functional>
#include <vector>

namespace foxh {

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1],
/// computed once by Newton iteration on P_n and cached.
struct GaussRule {
    std::vector<double> node;
    std::vector<double> weight;
};
const GaussRule& gauss_legendre(int n);

/// Fixed-order Gauss-Legendre on [a, b].
double integrate_gl(const std::function<double(double)>& f, double a, double b, int n = 20);

/// Adaptive bisection with a GL20/GL40 error estimate.  abs_tol is the
/// whole-interval target; returns the estimate and its error bound.
struct QuadResult {
    double value;
    double err_est;
    int evals;
    bool converged;
};
QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              double abs_tol, int max_depth = 28);

/// Integrate f over (0, b] when f ~ x^p near 0 with p > -1: geometric panel
/// grading toward the origin down to b * grade_floor.
QuadResult integrate_graded_origin(const std::function<double(double)>& f, double b,
                                   double abs_tol, double grade_floor = 1e-12);

/// Double-exponential (tanh-sinh) rule on (a, b): spectrally accurate for
/// analytic integrands and for algebraic/log endpoint singularities.  The
/// endpoints themselves are never evaluated.
QuadResult integrate_tanh_sinh(const std::function<double(double)>& f, double a, double b,
                               double abs_tol, int max_level = 9);

/// Limit of the sequence of partial sums of an alternating-tail series by
/// repeated averaging (van Wijngaarden / Euler transformation).
double alternating_limit(const std::vector<double>& partial_sums);

} // namespace foxh
