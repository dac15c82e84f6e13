#include "foxh/hcore.hpp"

#include <algorithm>
#include <cmath>
#include <charconv>
#include <numeric>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace foxh {

HDerived derived_params(const HParams& h) {
    HDerived d;
    double log_delta = 0.0;
    for (int i = 0; i < h.p(); ++i) {
        const auto& [a, al] = h.upper[i];
        (void)a;
        d.a_star += (i < h.n) ? al : -al;
        d.big_d -= al;
        log_delta -= al * std::log(al);
    }
    for (int j = 0; j < h.q(); ++j) {
        const auto& [b, be] = h.lower[j];
        (void)b;
        d.a_star += (j < h.m) ? be : -be;
        d.big_d += be;
        log_delta += be * std::log(be);
    }
    d.delta = std::exp(log_delta);
    for (int j = 0; j < h.m; ++j) d.mu += h.lower[j].coeff;
    for (int i = 0; i < h.p(); ++i) d.mu -= h.upper[i].coeff;
    d.mu += 0.5 * (h.p() - h.q());
    return d;
}

std::vector<KernelFactor> kernel_factors(const HParams& h) {
    std::vector<KernelFactor> fs;
    fs.reserve(h.p() + h.q());
    for (int j = 0; j < h.q(); ++j) {
        const auto& [b, be] = h.lower[j];
        if (j < h.m)
            fs.push_back({b, be, true, FactorRole::A}); // Gamma(b + beta s)
        else
            fs.push_back({1.0 - b, -be, false, FactorRole::D}); // Gamma(1 - b - beta s)
    }
    for (int i = 0; i < h.p(); ++i) {
        const auto& [a, al] = h.upper[i];
        if (i < h.n)
            fs.push_back({1.0 - a, -al, true, FactorRole::B}); // Gamma(1 - a - alpha s)
        else
            fs.push_back({a, al, false, FactorRole::C}); // Gamma(a + alpha s)
    }
    return fs;
}

Cplx mellin_kernel(const HParams& h, Cplx s) {
    const auto factors = kernel_factors(h);
    auto at_pole = [&](const KernelFactor& f) {
        Cplx arg = f.c + f.g * s;
        return arg.imag() == 0.0 && arg.real() <= 0.5 &&
               std::abs(arg.real() - std::round(arg.real())) < 1e-13;
    };
    int num_ct = 0, den_ct = 0;
    for (const KernelFactor& f : factors) (f.numerator ? num_ct : den_ct) += at_pole(f);
    if (num_ct > den_ct) throw PoleError("mellin_kernel: s on a numerator gamma pole");
    if (den_ct > num_ct) return Cplx(0.0, 0.0); // reciprocal gamma vanishes

    if (num_ct > 0) {
        // matched numerator/denominator poles: the kernel extends by its
        // finite limit, the product of the factors' Laurent leading terms
        double logc = 0.0;
        int sign = 1;
        for (const KernelFactor& f : factors) {
            if (at_pole(f)) {
                double x0 = f.c + f.g * s.real();
                int l = static_cast<int>(-std::round(x0));
                double lf = std::lgamma(double(l) + 1.0);
                logc += f.numerator ? -lf - std::log(std::abs(f.g))
                                    : lf + std::log(std::abs(f.g));
                if (l % 2 != 0) sign = -sign;
                if (f.g < 0.0) sign = -sign;
            } else {
                int gs = 0;
                double lv = log_abs_gamma(f.c + f.g * s.real(), gs);
                logc += f.numerator ? lv : -lv;
                sign *= gs;
            }
        }
        return Cplx(double(sign) * std::exp(logc), 0.0);
    }

    Cplx log_acc = 0.0;
    for (const KernelFactor& f : factors)
        log_acc += f.numerator ? log_gamma(f.c + f.g * s) : -log_gamma(f.c + f.g * s);
    return std::exp(log_acc);
}

std::optional<SmallRational> to_small_rational(double x, std::int64_t max_den) {
    if (!std::isfinite(x) || std::abs(x) > 1e15) return std::nullopt;
    for (std::int64_t q = 1; q <= max_den; ++q) {
        double pd = x * double(q);
        double pr = std::round(pd);
        if (std::abs(pd - pr) <= 1e-12 * std::max(1.0, std::abs(pd))) {
            auto p = static_cast<std::int64_t>(pr);
            std::int64_t g = std::gcd(std::abs(p), q);
            if (g == 0) g = 1;
            return SmallRational{p / g, q / g};
        }
    }
    return std::nullopt;
}

bool pole_locations_equal(double x, double y) {
    auto rx = to_small_rational(x, 4096);
    auto ry = to_small_rational(y, 4096);
    if (rx && ry) {
        // cross-multiplied exact compare; magnitudes stay well inside int64
        return rx->num * ry->den == ry->num * rx->den;
    }
    return std::abs(x - y) <= 1e-12 * std::max(1.0, std::max(std::abs(x), std::abs(y)));
}

namespace {

struct FamilyCursor {
    int family;
    double coeff;  // b_j (Left) or a_i (Right)
    double scale;
    int shift = 0;

    double location(PoleSide side) const {
        return side == PoleSide::Left ? -(coeff + shift) / scale
                                      : (1.0 - coeff + shift) / scale;
    }
};

} // namespace

std::vector<Pole> enumerate_poles(const HParams& h, PoleSide side, int count) {
    if (count < 1) throw std::invalid_argument("enumerate_poles: count must be >= 1");
    std::vector<FamilyCursor> cursors;
    if (side == PoleSide::Left) {
        for (int j = 0; j < h.m; ++j)
            cursors.push_back({j, h.lower[j].coeff, h.lower[j].scale});
    } else {
        for (int i = 0; i < h.n; ++i)
            cursors.push_back({i, h.upper[i].coeff, h.upper[i].scale});
    }
    std::vector<Pole> out;
    if (cursors.empty()) return out;

    auto better = [&](double a, double b) {
        return side == PoleSide::Left ? a > b : a < b;
    };
    while (static_cast<int>(out.size()) < count) {
        // pick the cursor whose next pole is nearest the contour
        int best = 0;
        for (std::size_t i = 1; i < cursors.size(); ++i)
            if (better(cursors[i].location(side), cursors[best].location(side))) best = int(i);
        Pole pole;
        pole.side = side;
        pole.location = cursors[best].location(side);
        pole.order = 0;
        for (auto& cur : cursors) {
            if (pole_locations_equal(cur.location(side), pole.location)) {
                pole.sources.push_back({cur.family, cur.shift});
                pole.order += 1;
                cur.shift += 1;
            }
        }
        // Merges of three numerator sources are tolerated only when a
        // denominator pole brings the net multiplicity back to <= 2; beyond
        // that no Laurent scheme is implemented.
        if (pole.order > 2 && pole_orders_at(h, pole.location).net_total() > 2)
            throw std::domain_error(
                "enumerate_poles: pole of net multiplicity > 2");
        out.push_back(std::move(pole));
    }
    return out;
}

std::vector<std::string> validate(const HParams& h) {
    std::vector<std::string> diags;
    auto note = [&](std::string msg) { diags.push_back(std::move(msg)); };

    if (h.m < 0 || h.m > h.q()) note("m out of range [0, q]");
    if (h.n < 0 || h.n > h.p()) note("n out of range [0, p]");
    for (int i = 0; i < h.p(); ++i)
        if (!(h.upper[i].scale > 0.0))
            note("upper pair " + std::to_string(i + 1) + " has scale <= 0");
    for (int j = 0; j < h.q(); ++j)
        if (!(h.lower[j].scale > 0.0))
            note("lower pair " + std::to_string(j + 1) + " has scale <= 0");
    if (!diags.empty()) return diags;

    if (h.m > 0 && h.n > 0) {
        auto left = enumerate_poles(h, PoleSide::Left, 48);
        auto right = enumerate_poles(h, PoleSide::Right, 48);
        for (const Pole& lp : left) {
            for (const Pole& rp : right) {
                if (!pole_locations_equal(lp.location, rp.location)) continue;
                // A raw coincidence survives only if it is a live pole on
                // both sides after denominator cancellation.
                PoleOrders po = pole_orders_at(h, lp.location);
                if (po.net_left() > 0 && po.net_right() > 0) {
                    std::ostringstream os;
                    os << "left pole at " << lp.location
                       << " coincides with a right pole; no separating contour";
                    note(os.str());
                    return diags;
                }
            }
        }
    }
    return diags;
}

PoleOrders pole_orders_at(const HParams& h, double location) {
    PoleOrders po;
    auto gamma_pole_at = [](double c, double g, double loc) {
        double x = c + g * loc;
        double r = std::round(x);
        return r <= 0.25 && pole_locations_equal(x, r);
    };
    for (int j = 0; j < h.q(); ++j) {
        const auto& [b, be] = h.lower[j];
        if (j < h.m) {
            if (gamma_pole_at(b, be, location)) po.num_left += 1;
        } else {
            if (gamma_pole_at(1.0 - b, -be, location)) po.den_right += 1;
        }
    }
    for (int i = 0; i < h.p(); ++i) {
        const auto& [a, al] = h.upper[i];
        if (i < h.n) {
            if (gamma_pole_at(1.0 - a, -al, location)) po.num_right += 1;
        } else {
            if (gamma_pole_at(a, al, location)) po.den_left += 1;
        }
    }
    return po;
}

namespace {

double parse_number(std::string_view tok) {
    auto slash = tok.find('/');
    auto parse_one = [](std::string_view t) -> double {
        double v = 0.0;
        std::string s(t);
        std::size_t pos = 0;
        try {
            v = std::stod(s, &pos);
        } catch (...) {
            throw std::invalid_argument("bad numeric field '" + s + "'");
        }
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos != s.size()) throw std::invalid_argument("bad numeric field '" + s + "'");
        return v;
    };
    if (slash == std::string_view::npos) return parse_one(tok);
    double num = parse_one(tok.substr(0, slash));
    double den = parse_one(tok.substr(slash + 1));
    if (den == 0.0) throw std::invalid_argument("zero denominator in fraction");
    return num / den;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<GammaPair> parse_pairs(std::string_view seg) {
    std::vector<GammaPair> out;
    seg = trim(seg);
    if (seg.empty()) return out;
    std::size_t start = 0;
    while (start <= seg.size()) {
        std::size_t comma = seg.find(',', start);
        std::string_view item = trim(seg.substr(start, comma == std::string_view::npos
                                                            ? std::string_view::npos
                                                            : comma - start));
        if (!item.empty()) {
            std::size_t colon = item.find(':');
            if (colon == std::string_view::npos)
                throw std::invalid_argument("pair missing ':' separator");
            GammaPair gp;
            gp.coeff = parse_number(trim(item.substr(0, colon)));
            gp.scale = parse_number(trim(item.substr(colon + 1)));
            out.push_back(gp);
        }
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

} // namespace

HParams parse_hparams(std::string_view text) {
    std::vector<std::string_view> segs;
    std::size_t start = 0;
    while (true) {
        std::size_t bar = text.find('|', start);
        segs.push_back(text.substr(start, bar == std::string_view::npos ? std::string_view::npos
                                                                        : bar - start));
        if (bar == std::string_view::npos) break;
        start = bar + 1;
    }
    if (segs.size() != 3)
        throw std::invalid_argument("expected 'm n | upper pairs | lower pairs'");

    HParams h;
    {
        std::istringstream head{std::string(trim(segs[0]))};
        if (!(head >> h.m >> h.n))
            throw std::invalid_argument("expected integers m n before first '|'");
        std::string rest;
        if (head >> rest) throw std::invalid_argument("trailing tokens after m n");
    }
    h.upper = parse_pairs(segs[1]);
    h.lower = parse_pairs(segs[2]);
    if (h.m < 0 || h.m > h.q() || h.n < 0 || h.n > h.p())
        throw std::invalid_argument("m or n out of range for the given pair lists");
    return h;
}

std::string format_hparams(const HParams& h) {
    std::ostringstream os;
    os.precision(17);
    os << h.m << ' ' << h.n << " | ";
    for (int i = 0; i < h.p(); ++i) {
        if (i) os << ", ";
        os << h.upper[i].coeff << ':' << h.upper[i].scale;
    }
    os << " | ";
    for (int j = 0; j < h.q(); ++j) {
        if (j) os << ", ";
        os << h.lower[j].coeff << ':' << h.lower[j].scale;
    }
    return os.str();
}

} // namespace foxh
