// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "skewlab/error.hpp"
#include "skewlab/harness.hpp"
#include "skewlab/pair_analysis.hpp"
#include "skewlab/sampling.hpp"
#include "skewlab/skew.hpp"

#ifndef SKEWLAB_CONFIG_DIR
#define SKEWLAB_CONFIG_DIR "configs"
#endif

using namespace skewlab;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

double rel_err(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

FunctionTriple linear_quadratic(ScalarFunction h) {
    return FunctionTriple(ScalarFunction::power(1.0), ScalarFunction::scaled_sum({{1.0, 1.0}, {1.0, 2.0}}), std::move(h));
}

std::vector<FunctionTriple> valid_triples() {
    return {FunctionTriple::powers(0.25, 0.25, 0.5), FunctionTriple::powers(0.2, 0.3, 0.8),
            FunctionTriple::powers(1.0, 1.0, -0.5), FunctionTriple::powers(0.6, 0.7, -0.4),
            linear_quadratic(ScalarFunction::power(-0.5))};
}

// I_alpha(sigma_x) for diag(p, 1 - p)
double qubit_wyd_oracle(double p, double a) {
    const double q = 1.0 - p;
    return 1.0 - std::pow(p, a) * std::pow(q, 1.0 - a) - std::pow(q, a) * std::pow(p, 1.0 - a);
}

Outcome qubit_closed_form() {
    const auto t0 = Clock::now();
    double worst = 0.0;
    int points = 0;
    for (int i = 0; i < 10; ++i) {
        const double p = 0.03 + 0.94 * i / 9.0;
        const auto rho = DensityMatrix::diagonal({p, 1.0 - p});
        for (int k = 0; k < 10; ++k) {
            const double a = k / 9.0;
            worst = std::max(worst, std::abs(wyd_family(rho, pauli::x(), a).I - qubit_wyd_oracle(p, a)));
            ++points;
        }
    }
    const double secs = seconds_since(t0);
    return {points == 100 && worst <= 1e-12 && secs < 1.0,
            std::to_string(points) + " points, max |err| " + fmt("%.3g", worst) + ", " + fmt("%.3f s", secs)};
}

Outcome tightness() {
    double worst = 0.0;
    int points = 0;
    InequalityParams half;
    half.alpha = 0.5;
    for (int i = 0; i < 99; ++i) {
        const double p = 0.01 + 0.98 * i / 98.0, q = 1.0 - p;
        const auto rho = DensityMatrix::diagonal({p, q});
        const auto r = evaluate_inequality(InequalityId::THM21_WYD, rho, pauli::x(), pauli::y(), half);
        // U_{1/2}(sx) = U_{1/2}(sy) = |p - q| and |Tr[rho [sx, sy]]|^2 / 4 = (p - q)^2
        const double oracle = (p - q) * (p - q);
        worst = std::max({worst, std::abs(r.margin), std::abs(r.lhs - oracle), std::abs(r.rhs - oracle)});
        ++points;
    }
    return {worst <= 1e-10, std::to_string(points) + " diagonal states, max |gap| " + fmt("%.3g", worst)};
}

Outcome failure_reproduction() {
    CounterexampleQuery q;
    q.spec = make_spec(InequalityId::NAIVE_WY_SHOULD_FAIL);
    q.n = 2;
    q.budget = 10000;
    q.seed = 2024;
    q.threshold = 0.1;
    const auto res = search_counterexample(q);
    const bool found = res.found && res.found->margin < -0.1;

    const double p = 0.75, q2 = 0.25;
    const auto inst = evaluate_inequality(InequalityId::NAIVE_WY_SHOULD_FAIL, DensityMatrix::diagonal({p, q2}),
                                          pauli::x(), pauli::y(), {});
    const double i_oracle = 1.0 - 2.0 * std::sqrt(p * q2);
    const bool instance = std::abs(inst.lhs - i_oracle * i_oracle) < 1e-12 && std::abs(inst.lhs - 0.01794) < 5e-5 &&
                          std::abs(inst.rhs - 0.25) < 1e-12 && !inst.pass;
    std::ostringstream d;
    if (res.found) {
        d << "violation at sample " << res.found->sample_index << " (margin " << fmt("%.4f", res.found->margin) << ")";
    } else {
        d << "no violation in " << res.tried << " samples";
    }
    d << "; p = 0.75: lhs " << fmt("%.5f", inst.lhs) << " vs rhs " << fmt("%.5f", inst.rhs);
    return {found && instance, d.str()};
}

nlohmann::json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read " + path);
    return nlohmann::json::parse(in);
}

Outcome theorem_campaigns() {
    const auto t0 = Clock::now();
    const auto cfg = campaign_config_from_json(read_json(std::string(SKEWLAB_CONFIG_DIR) + "/default_campaign.json"));

    // the config must cover every required family and regime
    std::set<InequalityId> ids;
    std::set<int> alphas;
    std::set<GwydRegime> regimes;
    std::set<Assumption> fgh_assumptions;
    bool non_constant_ratio = false;
    for (const auto& s : cfg.inequalities) {
        ids.insert(s.id);
        if (s.id == InequalityId::THM21_WYD && s.alpha) alphas.insert(static_cast<int>(std::lround(*s.alpha * 10)));
        if (s.id == InequalityId::THM22_GWYD) regimes.insert(s.regime);
        if (s.id == InequalityId::THM31_FGH) {
            fgh_assumptions.insert(s.triple->assumption);
            non_constant_ratio |= !(s.triple->fg.closed_form && s.triple->fh.closed_form);
        }
    }
    bool coverage = alphas == std::set<int>{1, 2, 3, 4, 5, 6, 7, 8, 9} && fgh_assumptions.size() == 2 && non_constant_ratio &&
                    (regimes.count(GwydRegime::Both) || (regimes.count(GwydRegime::Low) && regimes.count(GwydRegime::High)));
    for (auto id : {InequalityId::HEISENBERG_21, InequalityId::SCHRODINGER, InequalityId::LUO_23, InequalityId::THM21_WYD,
                    InequalityId::THM22_GWYD, InequalityId::THM23_TILDE, InequalityId::THM31_FGH, InequalityId::COR41_PAIR,
                    InequalityId::CHAIN_24, InequalityId::CHAIN_25, InequalityId::CHAIN_27})
        coverage &= ids.count(id) == 1;
    coverage &= cfg.samples_per_dim == 1000 && cfg.dims == std::vector<std::size_t>{2, 3, 4, 8} && cfg.slack == 1e-9;

    const unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    const auto rep = run_campaign(cfg, workers);
    std::size_t samples = 0;
    for (const auto& e : rep.entries)
        if (e.theorem_backed) samples += e.samples;
    const double secs = seconds_since(t0);
    std::ostringstream d;
    d << rep.entries.size() << " entries, " << samples << " theorem-backed samples, " << rep.theorem_violations()
      << " violations, " << fmt("%.1f s", secs) << (coverage ? "" : ", config coverage incomplete");
    return {coverage && rep.theorem_violations() == 0 && secs < 300.0, d.str()};
}

Outcome beta_closed_form() {
    RngStream rng(505);
    double worst = 0.0;
    int sets = 0, misclassified = 0;
    for (int k = 0; k < 50; ++k) {
        double a = rng.uniform(0.05, 2.0), b = rng.uniform(0.0, 2.0), c;
        const bool first = k < 25;
        if (first) {
            c = k == 0 ? a + b : (a + b) * rng.uniform(1.0, 3.0);
        } else {
            c = k == 25 ? 0.0 : -(a + b) * rng.uniform(0.0, 0.95);
        }
        const auto an = analyze_triple(FunctionTriple::powers(a, b, c), 50);
        const double oracle = a * b / ((a + b + c) * (a + b + c));
        worst = std::max(worst, std::abs(an.beta - oracle));
        const auto want = first ? Assumption::AssumptionI : Assumption::AssumptionII;
        misclassified += an.assumption != want;
        ++sets;
    }
    return {worst <= 1e-12 && misclassified == 0,
            std::to_string(sets) + " parameter sets, max |err| " + fmt("%.3g", worst) + ", " +
                std::to_string(misclassified) + " misclassified"};
}

Outcome l_scan() {
    double worst = std::numeric_limits<double>::infinity();
    int ok = 0, n = 0;
    for (const auto& t : valid_triples()) {
        const auto an = analyze_triple(t);
        const auto s = L_scan_min(t, 200);
        const double gap = s.min_value - 16.0 * an.beta;
        worst = std::min(worst, gap);
        ok += an.assumption != Assumption::Neither && gap >= -1e-9;
        ++n;
    }
    return {ok == n && n == 5, std::to_string(ok) + "/" + std::to_string(n) + " triples, min(min L - 16 beta) " + fmt("%.3g", worst)};
}

Outcome lemma_grid() {
    const auto grid = lemma_r_grid(10.0, 2000);
    RngStream rng(707);
    int negatives = 0, cases = 0;
    double max_gap = 0.0, min_margin = std::numeric_limits<double>::infinity();
    for (int regime = 0; regime < 2; ++regime) {
        for (int k = 0; k < 20; ++k) {
            double a, b, c;
            if (k == 0) {
                a = regime == 0 ? 0.5 : 1.0;
                b = regime == 0 ? 0.5 : 1.0;
                c = regime == 0 ? 1.0 : -0.5;
            } else {
                a = rng.uniform(0.0, 2.0);
                b = rng.uniform(0.0, 2.0);
                if (a + b == 0.0) a = 0.1;
                c = regime == 0 ? (a + b) * (k == 1 ? 1.0 : rng.uniform(1.0, 3.0))
                                : (k == 1 ? 0.0 : -(a + b) * rng.uniform(0.0, 0.95));
            }
            const auto rep = lemma41_check(a, b, c, grid);
            negatives += rep.negative_count;
            max_gap = std::max(max_gap, rep.limit_gap);
            min_margin = std::min(min_margin, rep.min_margin);
            ++cases;
        }
    }
    std::ostringstream d;
    d << cases << " parameter sets x " << grid.size() << " r values, " << negatives << " negative margins (min "
      << fmt("%.3g", min_margin) << "), limit gap " << fmt("%.3g", max_gap);
    return {negatives == 0 && max_gap <= 1e-8 && cases == 40, d.str()};
}

Outcome dual_path() {
    const auto triples = valid_triples();
    double worst_i = 0.0, worst_j = 0.0;
    int instances = 0;
    for (std::size_t n : {2u, 3u, 4u, 8u}) {
        for (std::uint64_t k = 0; k < 500; ++k) {
            RngStream rng(808, {n, k});
            const auto rho = sample_density(n, rng, 1e-3);
            const auto h = sample_observable(n, rng);
            const auto& t = triples[k % triples.size()];
            const auto trace_path = fgh_family(rho, h, t);
            const auto sums = fgh_eigensum(rho.spectrum(), matrix_elements(rho, h), t);
            worst_i = std::max(worst_i, rel_err(trace_path.I, sums.I));
            worst_j = std::max(worst_j, rel_err(trace_path.J, sums.J_pairsum + sums.J_diag));
            ++instances;
        }
    }
    return {worst_i <= 1e-9 && worst_j <= 1e-9,
            std::to_string(instances) + " instances, max rel err I " + fmt("%.3g", worst_i) + ", J " + fmt("%.3g", worst_j)};
}

Outcome reductions() {
    double worst = 0.0;
    int instances = 0;
    auto track = [&](const QuantityBundle& x, const QuantityBundle& y) {
        worst = std::max({worst, rel_err(x.I, y.I), rel_err(x.J, y.J)});
    };
    for (std::size_t n : {2u, 3u, 4u, 8u}) {
        for (std::uint64_t k = 0; k < 100; ++k) {
            RngStream rng(909, {n, k});
            const auto rho = sample_density(n, rng, 1e-2);
            const auto h = sample_observable(n, rng);
            const double a = rng.uniform(0.05, 1.5), b = rng.uniform(0.0, 1.5);
            track(fgh_family(rho, h, FunctionTriple::powers(a, b, 1.0 - a - b)), gwyd_family(rho, h, a, b));
            track(fgh_family(rho, h, FunctionTriple(ScalarFunction::power(a), ScalarFunction::power(b),
                                                    ScalarFunction::constant(1.0))),
                  gwyd_tilde_family(rho, h, a, b));
            const double s = rng.uniform(0.05, 0.95);
            const auto w = wyd_family(rho, h, s);
            track(gwyd_family(rho, h, s, 1.0 - s), w);
            track(gwyd_tilde_family(rho, h, s, 1.0 - s), w);
            ++instances;
        }
    }
    return {worst <= 1e-10, std::to_string(instances) + " instances x 4 identities, max rel err " + fmt("%.3g", worst)};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"qubit closed form", qubit_closed_form},
        {"tightness on diagonal qubits", tightness},
        {"naive relation failure", failure_reproduction},
        {"theorem campaigns", theorem_campaigns},
        {"beta closed form for power triples", beta_closed_form},
        {"L surface scan", l_scan},
        {"scalar lemma grid", lemma_grid},
        {"trace vs eigen-pair sums", dual_path},
        {"reduction identities", reductions},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::printf("[%s] %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
