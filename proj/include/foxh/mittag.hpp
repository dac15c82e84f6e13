#pragma once

#include <stdexcept>

namespace foxh {

/// E_alpha(-x) for alpha in (0,2), x >= 0.  Taylor series while the terms
/// stay inside double-precision headroom, algebraic tail expansion with
/// optimal truncation for large x, and a dedicated Mellin-Barnes line
/// integral in between.  Absolute error <= 1e-9.  Deliberately independent
/// of the general H-machinery so it can serve as its oracle.
double ml_neg(double alpha, double x);

/// Mainardi function M_nu(x) = sum (-1)^k x^k / (k! Gamma(-nu k + 1 - nu)),
/// nu in (0,1), x >= 0.  Series while numerically safe, saddle-point
/// asymptotic  A x^{(2nu-1)/(2-2nu)} exp(-B x^{1/(1-nu)})  beyond.
double mainardi(double nu, double x);

} // namespace foxh
