#include "skewlab/pair_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "skewlab/error.hpp"
#include "skewlab/tolerances.hpp"

namespace skewlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double l_from_values(double fx, double fy, double gx, double gy, double hx, double hy) {
    const double hs = (hx + hy) * (hx + hy);
    const double num = (fx * fx - fy * fy) * (gx * gx - gy * gy) * hs;
    const double d = fx * gx * hx - fy * gy * hy;
    const double den = d * d;
    const double scale = (fx * fx + fy * fy) * (gx * gx + gy * gy) * hs;
    if (den <= default_tolerances().l_denominator * scale) return kInf;
    return num / den;
}

}  // namespace

std::vector<double> uniform_grid(double eps, int k) {
    if (k < 2) throw PreconditionError("grid needs at least 2 points");
    std::vector<double> xs(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) xs[i] = eps + (1.0 - eps) * i / (k - 1);
    xs.back() = 1.0;
    return xs;
}

std::string_view to_string(PairClass c) {
    switch (c) {
        case PairClass::MonotonePair: return "MonotonePair";
        case PairClass::AntiMonotonePair: return "AntiMonotonePair";
        case PairClass::Neither: return "Neither";
    }
    return "?";
}

std::string_view to_string(Assumption a) {
    switch (a) {
        case Assumption::AssumptionI: return "AssumptionI";
        case Assumption::AssumptionII: return "AssumptionII";
        case Assumption::Neither: return "Neither";
    }
    return "?";
}

bool PairClassification::is_monotone_pair() const {
    return comonotone && m >= -default_tolerances().pair_sign && std::isfinite(M);
}

bool PairClassification::is_anti_monotone_pair() const {
    return antitone && M <= default_tolerances().pair_sign && std::isfinite(m);
}

PairClassification classify_pair(const ScalarFunction& f, const ScalarFunction& g, int grid, int ratio_grid) {
    const double eps = std::max(f.eps(), g.eps());
    const double sign_tol = default_tolerances().pair_sign;
    PairClassification out;

    // Condition (a) over all grid pairs.
    const auto xs = uniform_grid(eps, grid);
    std::vector<double> fv(xs.size()), gv(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        fv[i] = f.eval(xs[i]);
        gv[i] = g.eval(xs[i]);
    }
    out.comonotone = true;
    out.antitone = true;
    for (std::size_t i = 0; i < xs.size() && (out.comonotone || out.antitone); ++i) {
        for (std::size_t j = i + 1; j < xs.size(); ++j) {
            const double prod = (fv[i] - fv[j]) * (gv[i] - gv[j]);
            if (prod < -sign_tol) out.comonotone = false;
            if (prod > sign_tol) out.antitone = false;
        }
    }

    // Ratio of log-derivatives; (log f)' must not vanish anywhere.
    const auto rs = uniform_grid(eps, ratio_grid);
    double lo = kInf, hi = -kInf;
    for (double x : rs) {
        const double lf = f.log_deriv(x);
        if (lf == 0.0 || !std::isfinite(lf)) {
            std::ostringstream os;
            os << "ratio undefined: (log f)' vanishes at x = " << x << " for f = " << f.describe();
            throw DomainError(os.str());
        }
        const double r = g.log_deriv(x) / lf;
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    if (const auto c = constant_log_ratio(f, g)) {
        out.m = out.M = *c;
        out.closed_form = true;
        out.grid = 0;
    } else {
        out.m = lo;
        out.M = hi;
        out.grid = ratio_grid;
    }

    if (out.is_monotone_pair()) {
        out.cls = PairClass::MonotonePair;
    } else if (out.is_anti_monotone_pair()) {
        out.cls = PairClass::AntiMonotonePair;
    } else {
        out.cls = PairClass::Neither;
    }
    return out;
}

double beta_coefficient(const RatioBounds& b) {
    for (double v : {b.m_g, b.M_g, b.m_h, b.M_h}) {
        if (!std::isfinite(v)) throw PreconditionError("beta: ratio bounds must be finite");
    }
    double best = kInf;
    for (double k : {b.m_g, b.M_g}) {
        for (double l : {b.m_h, b.M_h}) {
            const double s = 1.0 + k + l;
            if (std::abs(s) <= default_tolerances().degenerate_denominator) {
                throw PreconditionError("beta: degenerate denominator 1 + k + l = 0");
            }
            best = std::min(best, k / (s * s));
        }
    }
    return std::max(0.0, best);
}

double beta_pair_alternative(double m, double M) {
    const double s = m + M;
    if (std::abs(s) <= default_tolerances().degenerate_denominator) {
        throw PreconditionError("pair beta: degenerate denominator m + M = 0");
    }
    return std::max(0.0, std::min(m, M) / (s * s));
}

double corner_function(double R, double k, double l) {
    if (!(R > 0.0)) throw PreconditionError("corner_function: R must be positive");
    const double s = 1.0 + k + l;
    if (std::abs(s) <= default_tolerances().degenerate_denominator) {
        throw PreconditionError("corner_function: degenerate exponent 1 + k + l = 0");
    }
    const double lr = std::log(R);
    if (lr == 0.0) return 16.0 * k / (s * s);
    const double e = std::exp(l * lr) + 1.0;
    const double den = std::expm1(s * lr);
    return std::expm1(2.0 * lr) * std::expm1(2.0 * k * lr) * e * e / (den * den);
}

Assumption check_assumption(const FunctionTriple& t, const PairClassification& fg, const PairClassification& fh,
                            int grid) {
    const bool can_one = fg.is_monotone_pair() && fh.is_monotone_pair();
    const bool can_two = fg.is_monotone_pair() && fh.is_anti_monotone_pair();
    if (!can_one && !can_two) return Assumption::Neither;

    const double tol = default_tolerances().assumption;
    const auto xs = uniform_grid(t.eps(), grid);
    std::vector<double> F(xs.size()), G(xs.size()), H(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        F[i] = t.f().log_value(xs[i]);
        G[i] = t.g().log_value(xs[i]);
        H[i] = t.h().log_value(xs[i]);
        if (!std::isfinite(F[i]) || !std::isfinite(G[i]) || !std::isfinite(H[i])) {
            throw PreconditionError("assumption check: log f, log g, log h must be finite on [eps, 1]");
        }
    }

    // Both conditions are multiplied through by dF > 0; the tolerance is
    // relative to the magnitudes entering the subtractions.
    bool one = can_one, two = can_two;
    for (std::size_t i = 0; i < xs.size() && (one || two); ++i) {
        for (std::size_t j = i + 1; j < xs.size(); ++j) {
            const double dF = F[j] - F[i];
            if (!(dF > 0.0)) {
                std::ostringstream os;
                os << "assumption check: f is not strictly increasing between " << xs[i] << " and " << xs[j];
                throw PreconditionError(os.str());
            }
            const double dG = G[j] - G[i];
            const double dH = H[j] - H[i];
            const double scale = std::abs(F[i]) + std::abs(F[j]) + std::abs(G[i]) + std::abs(G[j]) +
                                 std::abs(H[i]) + std::abs(H[j]) + dF;
            if (one && dF + dG - dH > tol * scale) one = false;
            if (two && dF + dG + dH < -tol * scale) two = false;
        }
    }
    if (one) return Assumption::AssumptionI;
    if (two) return Assumption::AssumptionII;
    return Assumption::Neither;
}

TripleAnalysis analyze_triple(const FunctionTriple& t, int grid, int ratio_grid) {
    TripleAnalysis a{t, {}, {}, {}, Assumption::Neither, 0.0, 0.0};
    a.fg = classify_pair(t.f(), t.g(), grid, ratio_grid);
    a.fh = classify_pair(t.f(), t.h(), grid, ratio_grid);
    a.bounds = {a.fg.m, a.fg.M, a.fh.m, a.fh.M, (a.fg.closed_form && a.fh.closed_form) ? 0 : ratio_grid};
    a.assumption = check_assumption(t, a.fg, a.fh, grid);
    try {
        a.beta = beta_coefficient(a.bounds);
    } catch (const PreconditionError&) {
        if (a.assumption != Assumption::Neither) throw;
        a.beta = std::numeric_limits<double>::quiet_NaN();
    }
    try {
        a.beta_pair_alternative = beta_pair_alternative(a.fg.m, a.fg.M);
    } catch (const PreconditionError&) {
        a.beta_pair_alternative = std::numeric_limits<double>::quiet_NaN();
    }
    return a;
}

double L_eval(const FunctionTriple& t, double x, double y) {
    if (x == y) throw PreconditionError("L_eval: x == y is excluded (0/0 on the diagonal)");
    return l_from_values(t.f().eval(x), t.f().eval(y), t.g().eval(x), t.g().eval(y), t.h().eval(x), t.h().eval(y));
}

LScanResult L_scan_min(const FunctionTriple& t, int grid) {
    const auto xs = uniform_grid(t.eps(), grid);
    const std::size_t n = xs.size();
    std::vector<double> fv(n), gv(n), hv(n);
    for (std::size_t i = 0; i < n; ++i) {
        fv[i] = t.f().eval(xs[i]);
        gv[i] = t.g().eval(xs[i]);
        hv[i] = t.h().eval(xs[i]);
    }
    LScanResult r{kInf, xs[0], xs[1], grid};
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = l_from_values(fv[i], fv[j], gv[i], gv[j], hv[i], hv[j]);
            if (v < r.min_value) {
                r.min_value = v;
                r.argmin_x = xs[i];
                r.argmin_y = xs[j];
            }
        }
    }
    return r;
}

double lemma41_rhs(double a, double b, double c) {
    const double s = a + b + c;
    return 16.0 * a * b / (s * s);
}

double lemma41_lhs(double a, double b, double c, double r) {
    if (r == 0.0) return lemma41_rhs(a, b, c);
    const double s = a + b + c;
    const double e = std::exp(c * r) + 1.0;
    const double den = std::expm1(s * r);
    return std::expm1(2.0 * a * r) * std::expm1(2.0 * b * r) * e * e / (den * den);
}

bool lemma41_admissible(double a, double b, double c) {
    if (!(a >= 0.0 && b >= 0.0) || !std::isfinite(a + b + c)) return false;
    const double tol = 1e-12;
    const bool first = c >= 0.0 && a + b > 0.0 && a + b <= c + tol;
    const bool second = c <= 0.0 && a + b + c > 0.0;
    return first || second;
}

std::vector<double> lemma_r_grid(double rmax, int steps) {
    if (!(rmax > 0.0) || steps < 2) throw PreconditionError("lemma grid needs rmax > 0 and steps >= 2");
    const double excl = default_tolerances().lemma_r_exclusion;
    std::vector<double> rs;
    rs.reserve(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) {
        const double r = -rmax + 2.0 * rmax * i / (steps - 1);
        if (std::abs(r) >= excl) rs.push_back(r);
    }
    return rs;
}

LemmaReport lemma41_check(double a, double b, double c, const std::vector<double>& r_grid) {
    if (!lemma41_admissible(a, b, c)) {
        std::ostringstream os;
        os << "lemma precondition violated for (a, b, c) = (" << a << ", " << b << ", " << c
           << "): need a, b >= 0 with 0 < a+b <= c, or a, b >= 0, c <= 0 and a+b+c > 0";
        throw PreconditionError(os.str());
    }
    const auto& tol = default_tolerances();
    LemmaReport rep;
    rep.a = a;
    rep.b = b;
    rep.c = c;
    rep.min_margin = kInf;
    const double rhs = lemma41_rhs(a, b, c);
    for (double r : r_grid) {
        if (std::abs(r) < tol.lemma_r_exclusion) continue;
        const double lhs = lemma41_lhs(a, b, c, r);
        const double margin = lhs - rhs;
        rep.samples.push_back({r, lhs, rhs, margin});
        rep.min_margin = std::min(rep.min_margin, margin);
        if (!(margin >= -tol.lemma_margin * std::max(1.0, std::abs(lhs)))) ++rep.negative_count;
    }
    rep.limit_probe = 1e-6;
    for (double r : {rep.limit_probe, -rep.limit_probe}) {
        rep.limit_gap = std::max(rep.limit_gap, std::abs(lemma41_lhs(a, b, c, r) - rhs));
    }
    return rep;
}

}  // namespace skewlab
