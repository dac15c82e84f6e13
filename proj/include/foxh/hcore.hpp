#pragma once

#include "foxh/specfun.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace foxh {

/// One gamma-factor parameter pair: Gamma(coeff + scale * s) up to the
/// position-dependent 1-x / sign conventions of the kernel.
struct GammaPair {
    double coeff = 0.0; // a_i or b_j
    double scale = 1.0; // alpha_i or beta_j, > 0
    bool operator==(const GammaPair&) const = default;
};

/// Parameter tuple (m, n, p, q, (a_i, alpha_i), (b_j, beta_j)) of an
/// H-function instance.  upper.size() == p, lower.size() == q.
struct HParams {
    int m = 0;
    int n = 0;
    std::vector<GammaPair> upper;
    std::vector<GammaPair> lower;

    int p() const { return static_cast<int>(upper.size()); }
    int q() const { return static_cast<int>(lower.size()); }
    bool operator==(const HParams&) const = default;
};

/// Convergence-controlling parameters derived from an HParams tuple:
/// a_star governs contour decay, big_d the residue-series direction, delta
/// the D == 0 convergence radius, mu the algebraic order on contours.
struct HDerived {
    double a_star = 0.0;
    double big_d = 0.0;
    double delta = 0.0;
    double mu = 0.0;
};

enum class PoleSide { Left, Right };

/// Origin of one pole: which numerator family and which shift index.
struct PoleSource {
    int family = 0; // 0-based within the side (A families for Left, B for Right)
    int shift = 0;  // l or k
};

/// A pole of the Mellin kernel's numerator factors.  `order` counts merged
/// coinciding numerator sources; denominator cancellations are resolved at
/// residue-evaluation time, not here.
struct Pole {
    double location = 0.0;
    int order = 1;
    PoleSide side = PoleSide::Left;
    std::vector<PoleSource> sources;
};

HDerived derived_params(const HParams& h);

/// The gamma-ratio kernel A(s)B(s) / (C(s)D(s)), computed through
/// log-gamma sums.  Throws PoleError if s sits on a numerator pole; returns
/// exactly 0 when s sits on a denominator pole only.
Cplx mellin_kernel(const HParams& h, Cplx s);

/// The `count` poles of one side nearest the contour: Left sorted by
/// descending location, Right ascending.  Coinciding locations are merged
/// into one Pole with summed order; merged order > 2 is rejected.
std::vector<Pole> enumerate_poles(const HParams& h, PoleSide side, int count);

/// Structural diagnostics: nonpositive scales, m/n out of range, and
/// left/right pole collisions that no separating contour can resolve.
std::vector<std::string> validate(const HParams& h);

/// Plain-text form `m n | a1:alpha1, ... | b1:beta1, ...`.  Fields are
/// decimal literals or integer fractions `p/q`; whitespace-insensitive.
HParams parse_hparams(std::string_view text);
std::string format_hparams(const HParams& h);

// ---------------------------------------------------------------------------
// Internals shared with the evaluator.

/// Exact rational p/q with |q| <= 64 reconstructed from a double, when one
/// exists within 1e-12 relative; used to decide pole coincidence without
/// trusting float equality.
struct SmallRational {
    std::int64_t num = 0;
    std::int64_t den = 1;
};
std::optional<SmallRational> to_small_rational(double x, std::int64_t max_den = 64);

/// Gamma factor Gamma(c + g s) of the kernel, tagged by block.
/// A: j <= m lower; B: i <= n upper (c = 1 - a, g = -alpha);
/// C: i > n upper; D: j > m lower (c = 1 - b, g = -beta).
/// A and B are numerator factors, C and D denominators.
enum class FactorRole { A, B, C, D };
struct KernelFactor {
    double c = 0.0;
    double g = 1.0;
    bool numerator = true;
    FactorRole role = FactorRole::A;
};
std::vector<KernelFactor> kernel_factors(const HParams& h);

/// True when the two pole locations coincide (rational-exact where both
/// reconstruct, 1e-12 tolerance otherwise).
bool pole_locations_equal(double x, double y);

/// Pole multiplicities of every kernel factor at one location.  Numerator
/// orders are cancelled side-by-side: C-factor poles cancel the A family
/// (left), D-factor poles cancel the B family (right).  A location with both
/// net orders positive defeats every separating contour.
struct PoleOrders {
    int num_left = 0;
    int num_right = 0;
    int den_left = 0;  // C factors
    int den_right = 0; // D factors
    int net_left() const { return std::max(0, num_left - den_left); }
    int net_right() const { return std::max(0, num_right - den_right); }
    int net_total() const {
        return std::max(0, num_left + num_right - den_left - den_right);
    }
};
PoleOrders pole_orders_at(const HParams& h, double location);

} // namespace foxh
