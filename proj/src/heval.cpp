#include "foxh/heval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace foxh {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kContourNodeCap = 20000;

Cplx log_mellin_factors(const std::vector<KernelFactor>& fs, Cplx s) {
    Cplx acc = 0.0;
    for (const KernelFactor& f : fs)
        acc += f.numerator ? log_gamma(f.c + f.g * s) : -log_gamma(f.c + f.g * s);
    return acc;
}

// Laurent data at a candidate pole from a prebuilt factor list; the digamma
// sum is only assembled when the net order turns out to be 2.
ResidueTerm laurent_from_factors(const std::vector<KernelFactor>& fs, double s0) {
    ResidueTerm rt;
    rt.s0 = s0;
    int power = 0;
    double logc = 0.0;
    int sign = 1;
    for (const KernelFactor& f : fs) {
        double x0 = f.c + f.g * s0;
        double xr = std::round(x0);
        bool pole = xr <= 0.25 && pole_locations_equal(x0, xr);
        if (pole) {
            int l = static_cast<int>(-xr);
            double lf = std::lgamma(double(l) + 1.0);
            if (f.numerator) {
                power -= 1;
                logc += -lf - std::log(std::abs(f.g));
            } else {
                power += 1;
                logc += lf + std::log(std::abs(f.g));
            }
            if (l % 2 != 0) sign = -sign;
            if (f.g < 0.0) sign = -sign;
        } else {
            int gs = 0;
            double lg = log_abs_gamma(x0, gs);
            logc += f.numerator ? lg : -lg;
            sign *= gs;
        }
    }
    rt.net_order = -power;
    rt.logc = logc;
    rt.sign = sign;
    if (rt.net_order >= 2) {
        double r1 = 0.0;
        for (const KernelFactor& f : fs) {
            double x0 = f.c + f.g * s0;
            double xr = std::round(x0);
            bool pole = xr <= 0.25 && pole_locations_equal(x0, xr);
            double psi = pole ? digamma_real(-xr + 1.0) : digamma_real(x0);
            r1 += f.numerator ? f.g * psi : -f.g * psi;
        }
        rt.r1sum = r1;
    }
    return rt;
}

// Lazily yields merged pole candidate locations of one side, nearest first.
class PoleWalker {
public:
    PoleWalker(const HParams& h, PoleSide side) : side_(side) {
        if (side == PoleSide::Left) {
            for (int j = 0; j < h.m; ++j)
                cursors_.push_back({h.lower[j].coeff, h.lower[j].scale, 0});
        } else {
            for (int i = 0; i < h.n; ++i)
                cursors_.push_back({h.upper[i].coeff, h.upper[i].scale, 0});
        }
    }

    bool empty() const { return cursors_.empty(); }

    double next() {
        int best = 0;
        for (std::size_t i = 1; i < cursors_.size(); ++i)
            if (closer(loc(cursors_[i]), loc(cursors_[best]))) best = int(i);
        double s0 = loc(cursors_[best]);
        for (auto& c : cursors_)
            if (pole_locations_equal(loc(c), s0)) c.shift += 1;
        return s0;
    }

private:
    struct Cursor {
        double coeff, scale;
        int shift;
    };
    double loc(const Cursor& c) const {
        return side_ == PoleSide::Left ? -(c.coeff + c.shift) / c.scale
                                       : (1.0 - c.coeff + c.shift) / c.scale;
    }
    bool closer(double a, double b) const {
        return side_ == PoleSide::Left ? a > b : a < b;
    }
    PoleSide side_;
    std::vector<Cursor> cursors_;
};

// Side-resolved net order from a prebuilt factor list.
int net_side_order(const std::vector<KernelFactor>& fs, double s0, PoleSide side) {
    int num = 0, den = 0;
    for (const KernelFactor& f : fs) {
        double x0 = f.c + f.g * s0;
        double xr = std::round(x0);
        if (!(xr <= 0.25 && pole_locations_equal(x0, xr))) continue;
        if (side == PoleSide::Left) {
            if (f.role == FactorRole::A) num += 1;
            if (f.role == FactorRole::C) den += 1;
        } else {
            if (f.role == FactorRole::B) num += 1;
            if (f.role == FactorRole::D) den += 1;
        }
    }
    return std::max(0, num - den);
}

// First pole location on `side` that survives denominator cancellation;
// +/-inf when the side has none within `scan` candidates.
double first_live_pole(const HParams& h, const std::vector<KernelFactor>& fs,
                       PoleSide side, int scan = 256) {
    PoleWalker w(h, side);
    if (w.empty()) return side == PoleSide::Left ? -kInf : kInf;
    for (int i = 0; i < scan; ++i) {
        double s0 = w.next();
        if (net_side_order(fs, s0, side) > 0) return s0;
    }
    return side == PoleSide::Left ? -kInf : kInf;
}

} // namespace

double ResidueTerm::value(double z) const {
    if (net_order <= 0) return 0.0;
    double lz = std::log(z);
    double base = double(sign) * std::exp(logc - s0 * lz);
    return net_order == 1 ? base : base * (r1sum - lz);
}

ResidueTerm laurent_residue(const HParams& h, double s0) {
    return laurent_from_factors(kernel_factors(h), s0);
}

namespace {

EvalResult sum_residue_series(const HParams& h, PoleSide side, double z, double tol,
                              int max_terms, bool asymptotic_mode) {
    EvalResult res;
    res.method = side == PoleSide::Left ? EvalMethod::SeriesLeft : EvalMethod::SeriesRight;
    res.asymptotic = asymptotic_mode;

    PoleWalker walker(h, side);
    if (walker.empty()) {
        // No poles on this side at all: empty expansion (exponential regime
        // at infinity when side == Right).
        res.asymptotic = true;
        return res;
    }

    const double outer_sign = side == PoleSide::Left ? 1.0 : -1.0;
    const auto factors = kernel_factors(h);
    double sum = 0.0, abs_sum = 0.0, max_term = 0.0;
    double prev_abs = kInf;
    int small_streak = 0, terms = 0;
    double last_kept = 0.0;
    bool converged = false;

    for (int k = 0; k < max_terms; ++k) {
        double s0 = walker.next();
        ResidueTerm rt = laurent_from_factors(factors, s0);
        if (rt.net_order <= 0) continue;
        if (rt.net_order > 2)
            throw EvalDomainError("residue series: pole of net multiplicity > 2");
        // Magnitude guard: a convergent series can still pass through huge
        // intermediate terms at large z, which double precision cannot sum.
        double lz = std::log(z);
        double logmag = rt.logc - rt.s0 * lz;
        if (logmag > 690.0)
            throw ConvergenceError("residue series: terms overflow double range");
        double t = outer_sign * rt.value(z);
        double at = std::abs(t);

        if (asymptotic_mode && terms > 0 && at > prev_abs) {
            // optimal truncation of the divergent expansion
            res.abs_err_est = std::max(prev_abs, at);
            converged = true;
            break;
        }
        sum += t;
        abs_sum += at;
        max_term = std::max(max_term, at);
        last_kept = at;
        prev_abs = at;
        ++terms;

        double thresh = tol * std::max(std::abs(sum), 1e-3 * max_term + 1e-308);
        if (at <= thresh) {
            if (++small_streak >= 3) {
                converged = true;
                break;
            }
        } else {
            small_streak = 0;
        }
    }
    if (!converged) {
        if (asymptotic_mode) {
            // expансion exhausted without a growing term: treat the last
            // term as the remainder scale
            res.abs_err_est = last_kept;
        } else {
            throw ConvergenceError("residue series: max_terms reached");
        }
    }
    res.value = sum;
    res.terms_or_nodes = terms;
    res.abs_err_est += last_kept + 4.0 * std::numeric_limits<double>::epsilon() * abs_sum;
    return res;
}

} // namespace

EvalResult eval_series_left(const HParams& h, double z, double tol, int max_terms) {
    if (!(z > 0.0)) throw EvalDomainError("eval_series_left: z must be > 0");
    HDerived d = derived_params(h);
    bool ok = d.big_d > 1e-14 || (std::abs(d.big_d) <= 1e-14 && z < d.delta);
    if (!ok)
        throw EvalDomainError("eval_series_left: requires D > 0, or D == 0 and z < delta");
    return sum_residue_series(h, PoleSide::Left, z, tol, max_terms, false);
}

EvalResult eval_series_right(const HParams& h, double z, double tol, int max_terms) {
    if (!(z > 0.0)) throw EvalDomainError("eval_series_right: z must be > 0");
    HDerived d = derived_params(h);
    if (std::abs(d.big_d) <= 1e-14 && z <= d.delta)
        throw EvalDomainError("eval_series_right: divergent for D == 0, z <= delta");
    bool asym = d.big_d > 1e-14;
    return sum_residue_series(h, PoleSide::Right, z, tol, max_terms, asym);
}

namespace {

// |H(gamma + i rho) z^{-gamma}| in log scale, evaluated slightly off-axis so
// removable real-axis singularities cannot poison the saddle search.
double contour_log_mag(const std::vector<KernelFactor>& fs, double gamma, double logz) {
    Cplx L = log_mellin_factors(fs, Cplx(gamma, 0.25));
    return L.real() - gamma * logz;
}

// gamma minimizing the line magnitude, for kernels with one empty pole side.
// Standard bracketing march away from the pole bound, then golden section.
double saddle_gamma(const std::vector<KernelFactor>& h, double bound, bool go_right,
                    double logz) {
    const double dir = go_right ? 1.0 : -1.0;
    double x0 = bound + dir * 0.4;
    double f0 = contour_log_mag(h, x0, logz);
    double step = 0.5;
    double x1 = x0 + dir * step;
    double f1 = contour_log_mag(h, x1, logz);
    double lo_lim = bound + dir * 0.1;
    double lo, hi;
    if (f1 >= f0) {
        // magnitude already rising: the minimum hugs the pole side
        lo = std::min(lo_lim, x1);
        hi = std::max(lo_lim, x1);
    } else {
        double xp = x0;
        for (int i = 0; i < 200 && f1 < f0; ++i) {
            xp = x0;
            x0 = x1;
            f0 = f1;
            step *= 1.7;
            x1 += dir * step;
            f1 = contour_log_mag(h, x1, logz);
        }
        lo = std::min(xp, x1);
        hi = std::max(xp, x1);
    }
    const double gr = 0.61803398874989484820;
    double c = hi - gr * (hi - lo), d2 = lo + gr * (hi - lo);
    double fc = contour_log_mag(h, c, logz), fd = contour_log_mag(h, d2, logz);
    for (int i = 0; i < 80 && hi - lo > 1e-3 * (1.0 + std::abs(hi)); ++i) {
        if (fc < fd) {
            hi = d2;
            d2 = c;
            fd = fc;
            c = hi - gr * (hi - lo);
            fc = contour_log_mag(h, c, logz);
        } else {
            lo = c;
            c = d2;
            fc = fd;
            d2 = lo + gr * (hi - lo);
            fd = contour_log_mag(h, d2, logz);
        }
    }
    return 0.5 * (lo + hi);
}

bool factor_pole_near(const std::vector<KernelFactor>& fs, double gamma) {
    for (const KernelFactor& f : fs) {
        double x0 = f.c + f.g * gamma;
        if (x0 < 0.5 && std::abs(x0 - std::round(x0)) < 1e-6) return true;
    }
    return false;
}

struct TrapezoidSum {
    double value = 0.0;
    double max_mod = 0.0;
    double abs_sum = 0.0;
    int nodes = 0;
    bool truncated_ok = true;
};

TrapezoidSum contour_sum(const std::vector<KernelFactor>& fs, double gamma, double logz,
                         double hstep, double tol, int node_cap) {
    TrapezoidSum out;
    auto F = [&](double rho) -> Cplx {
        Cplx s(gamma, rho);
        Cplx L = log_mellin_factors(fs, s) - s * logz;
        if (L.real() > 700.0) throw ConvergenceError("contour integrand overflow");
        return std::exp(L);
    };
    double f0 = F(0.0).real();
    double sum = 0.5 * f0;
    out.max_mod = std::abs(f0);
    out.abs_sum = std::abs(0.5 * f0);
    int small_streak = 0;
    int k = 1;
    for (; k <= node_cap; ++k) {
        Cplx fk = F(hstep * double(k));
        double mod = std::abs(fk);
        sum += fk.real();
        out.abs_sum += std::abs(fk.real());
        out.max_mod = std::max(out.max_mod, mod);
        if (k >= 16 && out.max_mod == 0.0) break; // fully underflowed line
        if (mod < 0.005 * tol * out.max_mod) {
            if (++small_streak >= 6) break;
        } else {
            small_streak = 0;
        }
    }
    out.truncated_ok = k <= node_cap;
    out.nodes = std::min(k, node_cap) + 1;
    out.value = sum * hstep / kPi;
    return out;
}

} // namespace

EvalResult eval_contour(const HParams& h, double z, double tol) {
    if (!(z > 0.0)) throw EvalDomainError("eval_contour: z must be > 0");
    HDerived d = derived_params(h);
    if (!(d.a_star > 0.0))
        throw EvalDomainError("eval_contour: requires a_star > 0");
    const double logz = std::log(z);
    const auto factors = kernel_factors(h);

    double lmax = first_live_pole(h, factors, PoleSide::Left);
    double rmin = first_live_pole(h, factors, PoleSide::Right);
    double gamma, strip;
    if (std::isfinite(lmax) && std::isfinite(rmin)) {
        if (!(rmin - lmax > 1e-9))
            throw EvalDomainError("eval_contour: pole sets leave no separating contour");
        gamma = 0.5 * (lmax + rmin);
        strip = 0.5 * (rmin - lmax);
    } else if (std::isfinite(lmax)) {
        gamma = saddle_gamma(factors, lmax, true, logz);
        strip = std::min(gamma - lmax, 4.0);
    } else if (std::isfinite(rmin)) {
        gamma = saddle_gamma(factors, rmin, false, logz);
        strip = std::min(rmin - gamma, 4.0);
    } else {
        gamma = 0.0;
        strip = 1.0;
    }
    for (int guard = 0; guard < 8 && factor_pole_near(factors, gamma); ++guard)
        gamma += 0.05 * strip;

    // Trapezoid aliasing error ~ exp(-2 pi w / hstep) with w the half-width
    // of the pole-free strip around the line.  The final sum runs at hstep;
    // the consistency check at 1.5 hstep still carries ~2/3 of the target
    // exponent, so its disagreement bounds the final error conservatively.
    double w = 0.5 * strip;
    double hstep = std::min(0.5, 2.0 * kPi * w / (std::log(1.0 / tol) + 10.0));

    TrapezoidSum a = contour_sum(factors, gamma, logz, 1.5 * hstep, tol, kContourNodeCap / 3);
    TrapezoidSum b = contour_sum(factors, gamma, logz, hstep, tol, kContourNodeCap);
    double diff = std::abs(a.value - b.value);
    int total_nodes = a.nodes + b.nodes;
    double scale = std::max(std::abs(b.value), b.max_mod * hstep / kPi);
    if (diff > 64.0 * tol * std::max(scale, 1e-300) && total_nodes < kContourNodeCap) {
        TrapezoidSum c = contour_sum(factors, gamma, logz, 0.5 * hstep, tol, kContourNodeCap);
        diff = std::abs(b.value - c.value);
        b = c;
        total_nodes += c.nodes;
    }

    EvalResult res;
    res.method = EvalMethod::Contour;
    res.value = b.value;
    res.terms_or_nodes = total_nodes;
    res.abs_err_est = diff + tol * b.max_mod * hstep / kPi +
                      8.0 * std::numeric_limits<double>::epsilon() * b.abs_sum * hstep / kPi;
    if (!b.truncated_ok)
        res.abs_err_est = std::max(res.abs_err_est, b.max_mod * hstep);
    return res;
}

EvalResult eval_auto(const HParams& h, double z, double tol) {
    if (!(z > 0.0)) throw EvalDomainError("eval_auto: z must be > 0");
    HDerived d = derived_params(h);

    auto contour_or = [&](PoleSide fallback_side) -> EvalResult {
        try {
            return eval_contour(h, z, tol);
        } catch (const EvalDomainError&) {
            // no usable contour; the theoretically convergent series is the
            // only remaining route
            return fallback_side == PoleSide::Left ? eval_series_left(h, z, tol)
                                                   : eval_series_right(h, z, tol);
        }
    };

    try {
        if (d.big_d > 1e-14) {
            if (z <= 1.0) return eval_series_left(h, z, tol);
            return contour_or(PoleSide::Left);
        }
        if (d.big_d < -1e-14) {
            if (z >= 1.0) return eval_series_right(h, z, tol);
            return contour_or(PoleSide::Right);
        }
        if (z < 0.9 * d.delta) return eval_series_left(h, z, tol);
        if (z > 1.1 * d.delta) return eval_series_right(h, z, tol);
        return eval_contour(h, z, tol);
    } catch (const ConvergenceError&) {
        return eval_contour(h, z, tol);
    }
}

LeadingTerm leading_term(const HParams& h, PoleSide side) {
    PoleWalker walker(h, side);
    if (walker.empty())
        throw EvalDomainError("leading_term: no poles on the requested side");
    const double outer = side == PoleSide::Left ? 1.0 : -1.0;
    const auto factors = kernel_factors(h);
    for (int k = 0; k < 256; ++k) {
        double s0 = walker.next();
        ResidueTerm rt = laurent_from_factors(factors, s0);
        if (rt.net_order <= 0) continue;
        if (rt.net_order > 2)
            throw EvalDomainError("leading_term: pole of net multiplicity > 2");
        LeadingTerm lt;
        lt.exponent = -s0;
        double c = outer * double(rt.sign) * std::exp(rt.logc);
        if (rt.net_order == 1) {
            lt.coeff = c;
        } else {
            lt.has_log = true;
            lt.coeff = -c; // multiplies z^exponent * log z
            lt.second_coeff = c * rt.r1sum;
        }
        return lt;
    }
    throw EvalDomainError("leading_term: no live pole found");
}

EvalResult eval_hexpr(const HExpr& e, double x, double tol) {
    if (!(x > 0.0)) throw EvalDomainError("eval_hexpr: x must be > 0");
    double z = e.arg_coeff * std::pow(x, e.arg_power);
    double outer = e.constant * std::pow(x, e.power);
    EvalResult r = eval_auto(e.h, z, tol);
    r.value *= outer;
    r.abs_err_est *= std::abs(outer);
    return r;
}

} // namespace foxh
