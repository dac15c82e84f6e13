#pragma once

#include "foxh/hcore.hpp"

namespace foxh {

/// A scalar-dressed H-function, closed under the rewrite rules:
///   f(x) = constant * x^power * H[h](arg_coeff * x^arg_power)
/// with arg_coeff > 0 and arg_power != 0.  All prefactor bookkeeping stays in
/// the scalars; rewrites never fold constants into the parameter lists.
struct HExpr {
    double constant = 1.0;
    double power = 0.0;
    HParams h;
    double arg_coeff = 1.0;
    double arg_power = 1.0;
    bool operator==(const HExpr&) const = default;
};

struct RewriteError : std::invalid_argument {
    explicit RewriteError(const std::string& w) : std::invalid_argument(w) {}
};

/// Cancellation of the last upper pair against an equal first lower pair
/// (an A/C gamma pair): H^{mn}_{pq} -> H^{m-1,n}_{p-1,q-1}.
HParams cancel_first_lower_last_upper(const HParams& h);

/// Cancellation of the first upper pair against an equal last lower pair
/// (a B/D gamma pair): H^{mn}_{pq} -> H^{m,n-1}_{p-1,q-1}.
HParams cancel_first_upper_last_lower(const HParams& h);

/// Argument inversion H^{mn}_{pq}(1/z) = H^{nm}_{qp}(z | (1-b,beta)/(1-a,alpha)):
/// flips arg_power, inverts arg_coeff, swaps and reflects the parameter lists.
HExpr reflect(const HExpr& e);

/// Absorbs z^sigma of the H argument into the parameter lists (coeffs shifted
/// by sigma * scale); outer power and constant adjusted so the represented
/// function is unchanged.
HExpr power_shift(const HExpr& e, double sigma);

/// H(z) = k H(z^k | scales * k) for k > 0.
HExpr rescale(const HExpr& e, double k);

/// The two parameter maps of d^k/dz^k [z^w H(c z^s)], s > 0.  PrependRight
/// adds (-w, s) as a new leading upper (B) pair and (k-w, s) as a trailing
/// lower (D) pair; PrependLeft is the twin form with the roles of the new
/// pairs swapped to the C and A blocks and constant * (-1)^k.
enum class LiftForm { PrependRight, PrependLeft };
HExpr derivative_lift(const HExpr& e, int k, LiftForm form = LiftForm::PrependRight);

/// Laplace transform of const * H(c x): (const / p) H^{m,n+1}_{p+1,q}(c / p)
/// with (0,1) prepended to the upper list.  Requires canonical shape
/// (power == 0, arg_power == 1), a_star > 0, and integrability at zero,
/// decided from the first left pole that carries a nonzero residue.
HExpr laplace_map(const HExpr& e);

/// Bessel-transform parameter map for int_0^inf (xr)^omega J_eta(xr) e(r) dr
/// (e's own power folds into omega).  tau must equal e.arg_power and the
/// absolute-convergence exponent conditions at 0 and infinity are enforced.
HExpr hankel_map(const HExpr& e, double omega, double eta, double tau);

/// Swap two pairs inside the same block (A, B, C or D), where the kernel is
/// symmetric; positions are 0-based within upper/lower.
HExpr swap_upper(const HExpr& e, int i, int j);
HExpr swap_lower(const HExpr& e, int i, int j);

std::string format_hexpr(const HExpr& e);

} // namespace foxh
