#pragma once

#include "foxh/kernel.hpp"

#include <optional>
#include <span>
#include <string>

namespace foxh {

enum class Verdict { Positive, ChangesSign };
enum class CaseCode { A_Subdiffusive, A_OneD_BetaGeqAlpha, B_i_MultiD, B_ii_OneD_BetaLtAlpha };

struct SignClass {
    Verdict verdict;
    CaseCode case_code;
};

const char* to_string(Verdict v);
const char* to_string(CaseCode c);

/// Sign classification of G_{alpha,beta,d}: positive for alpha <= 1 (any
/// beta, d) and for alpha in (1,2) with d = 1, beta >= alpha; sign-changing
/// for alpha in (1,2) with d >= 2 or with d = 1, beta < alpha.  Both
/// boundaries (alpha = 1 and beta = alpha at d = 1) are on the positive side.
SignClass classify(double alpha, double beta, int d);

/// Laplace transform of the rescaled radial profile,
/// (4 alpha / (beta^2 Gamma(d/2))) H^{31}_{24}(p^{2 alpha/beta} / 4).
/// Its complete monotonicity decides positivity of G.
double psi_tilde(double alpha, double beta, int d, double p, double tol = 1e-10);

/// H-instances behind psi_tilde and its second derivative, as functions of p.
HExpr psi_tilde_hexpr(double alpha, double beta, int d);
HExpr psi_tilde_dd_hexpr(double alpha, double beta, int d);

/// Radial-profile instance psi, the Laplace preimage of psi_tilde.
HExpr psi_hexpr(double alpha, double beta, int d);

/// Sign of the dominating small-p term of psi_tilde'' for alpha in (1, 2),
/// decided by exact sign bookkeeping of the gamma factors (no floating
/// cancellation).  sign == -1 in every sign-changing case of the theorem.
struct ResidueSignInfo {
    int sign;
    bool has_log;
    std::string case_label;
};
ResidueSignInfo residue_sign_analysis(double alpha, double beta, int d);

/// First divided-difference order k <= max_order at which (-1)^k D^k of the
/// probe target goes negative beyond the noise allowance, or nullopt.  For
/// alpha <= 1 the target is R -> E_alpha(-t^alpha R^{beta/2}) at t = 1, else
/// psi_tilde itself.  Grid: >= 64 points spanning >= 6 decades.
std::optional<int> cm_probe(double alpha, double beta, int d,
                            std::span<const double> p_grid, int max_order);

/// Convenience geometric grid builder.
std::vector<double> geometric_grid(double lo, double hi, int n);

/// Minimum of G(1, r) over a log grid with local bisection refinement.
/// Points whose |G| falls below the evaluation noise are not allowed to
/// claim a sign.
struct ScanResult {
    double min_value;
    double min_location;
};
ScanResult sign_scan(double alpha, double beta, int d, double r_lo = 1e-4,
                     double r_hi = 1e4, int n = 400);

/// Classifier verdict plus the three numeric verifications, with an explicit
/// consistency flag; disagreement is reported, never reconciled silently.
struct SignReport {
    SignClass classification;
    bool residue_evaluated = false; // false when alpha <= 1
    int residue_sign = 0;
    bool residue_has_log = false;
    std::optional<int> cm_first_violation_order;
    double scan_min_value = 0.0;
    double scan_min_location = 0.0;
    bool consistent = false;
    std::string notes;
};
SignReport full_report(double alpha, double beta, int d);

} // namespace foxh
