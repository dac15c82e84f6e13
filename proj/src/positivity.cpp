#include "foxh/positivity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

namespace foxh {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

double gamma_half(int d) { return std::exp(std::lgamma(0.5 * d)); }

void check_ranges(double alpha, double beta, int d) {
    if (!(alpha > 0.0 && alpha < 2.0))
        throw std::domain_error("positivity: alpha must lie in (0, 2)");
    if (!(beta > 0.0 && beta <= 2.0))
        throw std::domain_error("positivity: beta must lie in (0, 2]");
    if (d < 1) throw std::domain_error("positivity: d must be >= 1");
}

// exact sign of Gamma(x) away from poles
int gamma_sign(double x) {
    if (x > 0.0) return 1;
    if (x == std::floor(x)) throw std::domain_error("gamma_sign: pole");
    int flips = static_cast<int>(std::floor(-x)) + 1;
    return flips % 2 == 0 ? 1 : -1;
}

} // namespace

const char* to_string(Verdict v) {
    return v == Verdict::Positive ? "POSITIVE" : "CHANGES_SIGN";
}

const char* to_string(CaseCode c) {
    switch (c) {
        case CaseCode::A_Subdiffusive: return "A_Subdiffusive";
        case CaseCode::A_OneD_BetaGeqAlpha: return "A_OneD_BetaGeqAlpha";
        case CaseCode::B_i_MultiD: return "B_i_MultiD";
        case CaseCode::B_ii_OneD_BetaLtAlpha: return "B_ii_OneD_BetaLtAlpha";
    }
    return "?";
}

SignClass classify(double alpha, double beta, int d) {
    check_ranges(alpha, beta, d);
    if (alpha <= 1.0) return {Verdict::Positive, CaseCode::A_Subdiffusive};
    if (d >= 2) return {Verdict::ChangesSign, CaseCode::B_i_MultiD};
    if (beta >= alpha) return {Verdict::Positive, CaseCode::A_OneD_BetaGeqAlpha};
    return {Verdict::ChangesSign, CaseCode::B_ii_OneD_BetaLtAlpha};
}

HExpr psi_hexpr(double alpha, double beta, int d) {
    HExpr e;
    e.constant = 2.0 / (beta * gamma_half(d));
    e.power = -1.0;
    e.h.m = 2;
    e.h.n = 1;
    e.h.upper = {{1.0, 1.0 / alpha}, {1.0, 1.0}};
    e.h.lower = {{0.5 * d, 0.5 * beta / alpha}, {1.0, 1.0 / alpha}, {1.0, 0.5 * beta / alpha}};
    e.arg_coeff = std::pow(2.0, -beta / alpha);
    e.arg_power = -1.0;
    return e;
}

HExpr psi_tilde_hexpr(double alpha, double beta, int d) {
    HExpr e;
    e.constant = 4.0 * alpha / (beta * beta * gamma_half(d));
    e.power = 0.0;
    e.h.m = 3;
    e.h.n = 1;
    e.h.upper = {{1.0, 2.0 / beta}, {1.0, 2.0 * alpha / beta}};
    e.h.lower = {{0.0, 2.0 * alpha / beta},
                 {0.5 * d, 1.0},
                 {1.0, 2.0 / beta},
                 {1.0, 1.0}};
    e.arg_coeff = 0.25;
    e.arg_power = 2.0 * alpha / beta;
    return e;
}

HExpr psi_tilde_dd_hexpr(double alpha, double beta, int d) {
    HExpr e = psi_tilde_hexpr(alpha, beta, d);
    e.power = -2.0;
    e.h.lower[0] = {2.0, 2.0 * alpha / beta};
    return e;
}

double psi_tilde(double alpha, double beta, int d, double p, double tol) {
    check_ranges(alpha, beta, d);
    if (!(p > 0.0)) throw std::domain_error("psi_tilde: p must be > 0");
    return eval_hexpr(psi_tilde_hexpr(alpha, beta, d), p, tol).value;
}

ResidueSignInfo residue_sign_analysis(double alpha, double beta, int d) {
    check_ranges(alpha, beta, d);
    if (!(alpha > 1.0))
        throw std::domain_error("residue_sign_analysis: requires alpha in (1, 2)");

    ResidueSignInfo out{};
    if (d >= 2) {
        if (beta < 2.0 || d >= 3) {
            // simple pole at s = -beta/2:
            // (beta/2) G(2-a) G((d-b)/2) / (G(1-a) G(b/2)) z^{b/2}
            out.sign = gamma_sign(2.0 - alpha) * gamma_sign(0.5 * (d - beta)) *
                       gamma_sign(1.0 - alpha) * gamma_sign(0.5 * beta);
            out.has_log = false;
            out.case_label = "b(i) simple pole";
        } else {
            // d = beta = 2: double pole at s = -1; dominant term
            // -G(2-a)/G(1-a) z log z, negative for z -> 0
            out.sign = gamma_sign(2.0 - alpha) * gamma_sign(1.0 - alpha);
            out.has_log = true;
            out.case_label = "d=beta=2 double pole";
        }
        return out;
    }
    // d = 1
    if (beta < 1.0) {
        out.sign = gamma_sign(2.0 - alpha) * gamma_sign(0.5 * (1.0 - beta)) *
                   gamma_sign(1.0 - alpha) * gamma_sign(0.5 * beta);
        out.has_log = false;
        out.case_label = "b(ii) simple pole beta<1";
    } else if (beta == 1.0) {
        out.sign = gamma_sign(2.0 - alpha) * gamma_sign(1.0 - alpha);
        out.has_log = true;
        out.case_label = "d=beta=1 double pole";
    } else if (beta < alpha) {
        // dominant simple pole at s = -1/2
        out.sign = gamma_sign(2.0 - alpha / beta) * gamma_sign(1.0 - 1.0 / beta) *
                   gamma_sign(1.0 / beta) * gamma_sign(1.0 - alpha / beta);
        out.has_log = false;
        out.case_label = "b(ii) 1<beta<alpha";
    } else if (beta > alpha) {
        // positive regime: the -1/2 residue carries Gamma(1 - a/b) with
        // a/b < 1, all factors positive
        out.sign = gamma_sign(2.0 - alpha / beta) * gamma_sign(1.0 - 1.0 / beta) *
                   gamma_sign(1.0 / beta) * gamma_sign(1.0 - alpha / beta);
        out.has_log = false;
        out.case_label = "positive case (d=1, beta>alpha)";
    } else {
        // beta == alpha: the -1/2 residue vanishes (kernel zero there);
        // the next pole at -beta/2 carries the sign
        out.sign = gamma_sign(2.0 - alpha) * gamma_sign(0.5 * (1.0 - beta)) *
                   gamma_sign(1.0 - alpha) * gamma_sign(0.5 * beta);
        out.has_log = false;
        out.case_label = "positive case (d=1, beta=alpha)";
    }
    return out;
}

std::vector<double> geometric_grid(double lo, double hi, int n) {
    std::vector<double> g(n);
    const double step = std::log(hi / lo) / double(n - 1);
    for (int i = 0; i < n; ++i) g[i] = lo * std::exp(step * i);
    g.back() = hi;
    return g;
}

std::optional<int> cm_probe(double alpha, double beta, int d,
                            std::span<const double> p_grid, int max_order) {
    check_ranges(alpha, beta, d);
    const int n = static_cast<int>(p_grid.size());
    if (n < 64) throw std::domain_error("cm_probe: grid must have >= 64 points");
    if (p_grid.back() / p_grid.front() < 0.999e6)
        throw std::domain_error("cm_probe: grid must span >= 6 decades");
    if (max_order > 8) throw std::domain_error("cm_probe: max_order must be <= 8");

    // Probe target: the Fourier-side relaxation profile for alpha <= 1
    // (positive-definiteness route), the Laplace-side profile otherwise.
    std::vector<double> f(n), err(n);
    for (int i = 0; i < n; ++i) {
        if (alpha <= 1.0) {
            f[i] = ml_neg(alpha, std::pow(p_grid[i], 0.5 * beta));
            err[i] = 1e-9 + 1e-13 * std::abs(f[i]);
        } else {
            EvalResult r = eval_hexpr(psi_tilde_hexpr(alpha, beta, d), p_grid[i], 1e-11);
            f[i] = r.value;
            err[i] = r.abs_err_est + 1e-14 * std::abs(r.value);
        }
    }

    const double tol_cm = 1e-9;
    for (int k = 1; k <= max_order; ++k) {
        double sgn = (k % 2 == 0) ? 1.0 : -1.0;
        for (int i = 0; i + k < n; ++i) {
            // divided difference via explicit barycentric weights
            double dd = 0.0, noise = 0.0, scale = 0.0;
            for (int j = i; j <= i + k; ++j) {
                double w = 1.0;
                for (int l = i; l <= i + k; ++l)
                    if (l != j) w /= (p_grid[j] - p_grid[l]);
                dd += w * f[j];
                noise += std::abs(w) * err[j];
                scale += std::abs(w * f[j]);
            }
            if (sgn * dd < -(tol_cm * scale + 3.0 * noise)) return k;
        }
    }
    return std::nullopt;
}

ScanResult sign_scan(double alpha, double beta, int d, double r_lo, double r_hi, int n) {
    check_ranges(alpha, beta, d);
    if (n < 100) throw std::domain_error("sign_scan: need n >= 100");
    std::vector<double> grid = geometric_grid(r_lo, r_hi, n);

    auto resolved_value = [&](double r, double* out_v) {
        EvalResult e = g_eval({alpha, beta, d, 1.0, r});
        *out_v = e.value;
        // a value buried in evaluation noise cannot claim a sign
        return std::abs(e.value) > std::max(10.0 * e.abs_err_est, 1e-290);
    };

    double best_v = std::numeric_limits<double>::infinity();
    double best_r = grid.front();
    int best_i = -1;
    for (int i = 0; i < n; ++i) {
        double v;
        if (!resolved_value(grid[i], &v)) continue;
        if (v < best_v) {
            best_v = v;
            best_r = grid[i];
            best_i = i;
        }
    }
    // local refinement: 3 bisection passes inside the bracketing cells
    if (best_i > 0 && best_i + 1 < n) {
        double a = grid[best_i - 1], b = grid[best_i + 1], m = grid[best_i];
        double fm = best_v;
        for (int pass = 0; pass < 3; ++pass) {
            double l = std::sqrt(a * m), r = std::sqrt(m * b);
            double fl, fr;
            bool okl = resolved_value(l, &fl);
            bool okr = resolved_value(r, &fr);
            if (okl && fl < fm && (!okr || fl <= fr)) {
                b = m;
                m = l;
                fm = fl;
            } else if (okr && fr < fm) {
                a = m;
                m = r;
                fm = fr;
            } else {
                a = l;
                b = r;
            }
        }
        best_v = fm;
        best_r = m;
    }
    return {best_v, best_r};
}

SignReport full_report(double alpha, double beta, int d) {
    SignReport rep;
    rep.classification = classify(alpha, beta, d);

    if (alpha > 1.0) {
        ResidueSignInfo rs = residue_sign_analysis(alpha, beta, d);
        rep.residue_evaluated = true;
        rep.residue_sign = rs.sign;
        rep.residue_has_log = rs.has_log;
    }

    std::vector<double> grid = geometric_grid(1e-3, 1e3, 64);
    rep.cm_first_violation_order = cm_probe(alpha, beta, d, grid, 4);

    ScanResult sc = sign_scan(alpha, beta, d);
    rep.scan_min_value = sc.min_value;
    rep.scan_min_location = sc.min_location;

    std::ostringstream notes;
    bool ok = true;
    if (rep.classification.verdict == Verdict::Positive) {
        if (rep.cm_first_violation_order) {
            ok = false;
            notes << "cm violation at order " << *rep.cm_first_violation_order
                  << " despite Positive verdict; ";
        }
        if (!(rep.scan_min_value > 0.0)) {
            ok = false;
            notes << "scan minimum " << rep.scan_min_value << " <= 0 despite Positive verdict; ";
        }
        if (rep.residue_evaluated && rep.residue_sign != 1) {
            ok = false;
            notes << "leading residue negative despite Positive verdict; ";
        }
    } else {
        if (!rep.residue_evaluated || rep.residue_sign != -1) {
            ok = false;
            notes << "leading residue not negative; ";
        }
        if (!rep.cm_first_violation_order || *rep.cm_first_violation_order > 2) {
            ok = false;
            notes << "no cm violation at order <= 2; ";
        }
        if (!(rep.scan_min_value < -1e-12)) {
            ok = false;
            notes << "scan found no negative value; ";
        }
    }
    rep.consistent = ok;
    rep.notes = notes.str();
    return rep;
}

} // namespace foxh
