#include "foxh/quad.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace foxh {

namespace {

GaussRule make_rule(int n) {
    GaussRule r;
    r.node.resize(n);
    r.weight.resize(n);
    const double pi = 3.14159265358979323846;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Chebyshev-like initial guess, then Newton on P_n.
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double p0 = 0.0, p1 = 0.0;
        for (int it = 0; it < 100; ++it) {
            p0 = 1.0;
            p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            double dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        p0 = 1.0;
        p1 = x;
        for (int k = 2; k <= n; ++k) {
            double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        double dp = n * (x * p1 - p0) / (x * x - 1.0);
        r.node[i] = -x;
        r.node[n - 1 - i] = x;
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        r.weight[i] = w;
        r.weight[n - 1 - i] = w;
    }
    return r;
}

std::map<int, GaussRule> g_rules;
std::mutex g_rules_mutex;

} // namespace

const GaussRule& gauss_legendre(int n) {
    std::lock_guard<std::mutex> lock(g_rules_mutex);
    auto it = g_rules.find(n);
    if (it == g_rules.end()) it = g_rules.emplace(n, make_rule(n)).first;
    return it->second;
}

double integrate_gl(const std::function<double(double)>& f, double a, double b, int n) {
    const GaussRule& r = gauss_legendre(n);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += r.weight[i] * f(mid + half * r.node[i]);
    return s * half;
}

namespace {

struct Panel {
    double a, b;
    double coarse;
    int depth;
};

} // namespace

QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              double abs_tol, int max_depth) {
    QuadResult out{0.0, 0.0, 0, true};
    if (a == b) return out;
    std::vector<Panel> stack;
    double c0 = integrate_gl(f, a, b, 20);
    out.evals += 20;
    stack.push_back({a, b, c0, 0});
    while (!stack.empty()) {
        Panel p = stack.back();
        stack.pop_back();
        double fine = integrate_gl(f, p.a, p.b, 40);
        out.evals += 40;
        double err = std::abs(fine - p.coarse);
        // local tolerance proportional to panel share of the interval
        double local = abs_tol * std::max(0.05, (p.b - p.a) / (b - a));
        if (err <= local || p.depth >= max_depth) {
            out.value += fine;
            out.err_est += err;
            if (p.depth >= max_depth && err > local) out.converged = false;
            continue;
        }
        double m = 0.5 * (p.a + p.b);
        double l = integrate_gl(f, p.a, m, 20);
        double r = integrate_gl(f, m, p.b, 20);
        out.evals += 40;
        stack.push_back({p.a, m, l, p.depth + 1});
        stack.push_back({m, p.b, r, p.depth + 1});
    }
    return out;
}

QuadResult integrate_graded_origin(const std::function<double(double)>& f, double b,
                                   double abs_tol, double grade_floor) {
    if (b <= 0.0) throw std::invalid_argument("integrate_graded_origin: b must be > 0");
    QuadResult out{0.0, 0.0, 0, true};
    double hi = b;
    double lo = 0.5 * b;
    const double floor_abs = b * grade_floor;
    while (true) {
        QuadResult part = integrate_adaptive(f, lo, hi, abs_tol * 0.25, 20);
        out.value += part.value;
        out.err_est += part.err_est;
        out.evals += part.evals;
        out.converged = out.converged && part.converged;
        if (lo <= floor_abs ||
            (std::abs(part.value) < 0.01 * abs_tol && lo < 1e-3 * b))
            break;
        hi = lo;
        lo *= 0.5;
    }
    return out;
}

QuadResult integrate_tanh_sinh(const std::function<double(double)>& f, double a, double b,
                               double abs_tol, int max_level) {
    QuadResult out{0.0, 0.0, 0, false};
    if (a == b) {
        out.converged = true;
        return out;
    }
    const double pi_half = 1.57079632679489661923;
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    const double t_max = 3.8; // u within ~1e-290 of the endpoints

    // weighted sample at abscissa t: x = mid + half tanh((pi/2) sinh t)
    auto sample = [&](double t) {
        double s = pi_half * std::sinh(t);
        double ch = std::cosh(s);
        double w = pi_half * std::cosh(t) / (ch * ch);
        if (!std::isfinite(w) || w < 1e-300) return 0.0;
        double u = std::tanh(s);
        double x = mid + half * u;
        if (x <= std::min(a, b) || x >= std::max(a, b)) return 0.0;
        return w * f(x);
    };

    double h = 0.5;
    double sum = sample(0.0);
    out.evals += 1;
    for (int k = 1; k * h <= t_max; ++k) {
        sum += sample(k * h) + sample(-k * h);
        out.evals += 2;
    }
    double prev = sum * h * half;
    for (int level = 1; level <= max_level; ++level) {
        h *= 0.5;
        double add = 0.0;
        for (int k = 1; k * h <= t_max; k += 2) { // odd multiples only
            add += sample(k * h) + sample(-k * h);
            out.evals += 2;
        }
        sum += add;
        double cur = sum * h * half;
        double diff = std::abs(cur - prev);
        prev = cur;
        if (level >= 3 && diff <= abs_tol) {
            out.value = cur;
            out.err_est = diff;
            out.converged = true;
            return out;
        }
        out.err_est = diff;
    }
    out.value = prev;
    return out;
}

double alternating_limit(const std::vector<double>& partial_sums) {
    std::vector<double> row = partial_sums;
    if (row.empty()) return 0.0;
    while (row.size() > 1) {
        for (std::size_t i = 0; i + 1 < row.size(); ++i)
            row[i] = 0.5 * (row[i] + row[i + 1]);
        row.pop_back();
    }
    return row[0];
}

} // namespace foxh
