#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "skewlab/error.hpp"
#include "skewlab/harness.hpp"
#include "skewlab/pair_analysis.hpp"
#include "skewlab/scalar_function.hpp"

using namespace skewlab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitError = 2;

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

unsigned worker_count() {
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("SKEWLAB_THREADS")) {
        char* end = nullptr;
        const long cap = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || cap < 1) throw ConfigError("SKEWLAB_THREADS must be a positive integer");
        n = std::min<unsigned>(n, static_cast<unsigned>(cap));
    }
    return n;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

nlohmann::json parse_json(const std::string& text, const std::string& what) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(what + ": malformed JSON: " + e.what());
    }
}

// Inline JSON, or @path to read it from a file.
FunctionTriple parse_triple_arg(const std::string& arg) {
    const auto text = !arg.empty() && arg[0] == '@' ? slurp(arg.substr(1)) : arg;
    return triple_from_json(parse_json(text, "--triple"));
}

void write_file(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + path);
    out << body;
    if (!out) throw ConfigError("write failed for " + path);
}

struct VerifyArgs {
    std::string config;
    std::string out;
    std::string format = "json";
};

int cmd_verify(const VerifyArgs& a) {
    const auto cfg = campaign_config_from_json(parse_json(slurp(a.config), a.config));
    const auto rep = run_campaign(cfg, worker_count());

    const std::string json_body = to_json_value(rep, cfg).dump(2) + "\n";
    std::ostringstream csv;
    write_csv(csv, rep);
    const std::string& body = a.format == "csv" ? csv.str() : json_body;

    bool wrote = false;
    if (!a.out.empty()) {
        write_file(a.out, body);
        wrote = true;
    }
    if (cfg.output_json) {
        write_file(*cfg.output_json, json_body);
        wrote = true;
    }
    if (cfg.output_csv) {
        write_file(*cfg.output_csv, csv.str());
        wrote = true;
    }
    if (!wrote) std::cout << body;

    for (const auto& e : rep.entries) {
        std::cerr << e.label << ": " << e.samples << " samples, " << e.violations << " violations, min margin "
                  << (e.samples ? num(e.min_margin) : "n/a") << (e.theorem_backed ? "" : " (informational)") << "\n";
    }
    const bool fail = rep.theorem_violations() > 0 || (cfg.assert_all_pass && rep.informational_violations() > 0);
    return fail ? kExitViolation : kExitOk;
}

int cmd_beta(const std::string& triple_arg, int grid, int ratio_grid) {
    const auto an = analyze_triple(parse_triple_arg(triple_arg), grid, ratio_grid);
    std::cout << "triple      " << an.triple.describe() << "\n"
              << "m_g         " << num(an.bounds.m_g) << "\n"
              << "M_g         " << num(an.bounds.M_g) << "\n"
              << "m_h         " << num(an.bounds.m_h) << "\n"
              << "M_h         " << num(an.bounds.M_h) << "\n"
              << "ratio_grid  " << an.bounds.grid << "\n"
              << "beta        " << num(an.beta) << "\n"
              << "assumption  " << to_string(an.assumption) << "\n";
    if (an.triple.h().is_constant()) std::cout << "beta_pair_alternative " << num(an.beta_pair_alternative) << "\n";
    if (an.assumption == Assumption::Neither) {
        std::cerr << "warning: triple satisfies neither assumption; beta carries no guarantee\n";
    }
    return kExitOk;
}

int cmd_pairs(const std::string& f_arg, const std::string& g_arg, double eps, int grid, int ratio_grid) {
    const auto f = scalar_function_from_json(parse_json(f_arg, "--f"), eps);
    const auto g = scalar_function_from_json(parse_json(g_arg, "--g"), eps);
    const auto c = classify_pair(f, g, grid, ratio_grid);
    std::cout << "f           " << f.describe() << "\n"
              << "g           " << g.describe() << "\n"
              << "class       " << to_string(c.cls) << "\n"
              << "m           " << num(c.m) << "\n"
              << "M           " << num(c.M) << "\n"
              << "closed_form " << (c.closed_form ? "yes" : "no") << "\n"
              << "grid        " << c.grid << "\n";
    return kExitOk;
}

int cmd_scan_l(const std::string& triple_arg, int grid) {
    const auto an = analyze_triple(parse_triple_arg(triple_arg));
    const auto scan = L_scan_min(an.triple, grid);
    std::cout << "triple      " << an.triple.describe() << "\n"
              << "grid        " << scan.grid << "\n"
              << "min_L       " << num(scan.min_value) << "\n"
              << "argmin      " << num(scan.argmin_x) << " " << num(scan.argmin_y) << "\n"
              << "16beta      " << num(16.0 * an.beta) << "\n"
              << "assumption  " << to_string(an.assumption) << "\n";
    if (an.assumption == Assumption::Neither) {
        std::cout << "result      no bound asserted\n";
        return kExitOk;
    }
    const bool pass = scan.min_value >= 16.0 * an.beta - 1e-9;
    std::cout << "result      " << (pass ? "pass" : "fail") << "\n";
    return pass ? kExitOk : kExitViolation;
}

int cmd_lemma41(double a, double b, double c, double rmax, int steps, bool summary) {
    const auto rep = lemma41_check(a, b, c, lemma_r_grid(rmax, steps));
    if (!summary) {
        std::cout << "r,lhs,rhs,margin\n";
        for (const auto& s : rep.samples)
            std::cout << num(s.r) << "," << num(s.lhs) << "," << num(s.rhs) << "," << num(s.margin) << "\n";
    }
    std::cout << "# samples " << rep.samples.size() << " min_margin " << num(rep.min_margin) << " negative "
              << rep.negative_count << " limit_gap " << num(rep.limit_gap) << " at r = +-" << num(rep.limit_probe)
              << "\n";
    return rep.negative_count == 0 ? kExitOk : kExitViolation;
}

struct CounterexampleArgs {
    std::string id;
    std::uint64_t budget = 10000;
    std::uint64_t seed = 0;
    std::uint64_t start = 0;
    std::size_t dim = 2;
    double threshold = 0.0;
    std::string triple;
};

int cmd_counterexample(const CounterexampleArgs& a) {
    const auto id = inequality_from_string(a.id);
    if (!id) throw ConfigError("unknown inequality id " + a.id);
    CounterexampleQuery q;
    q.spec = make_spec(*id);
    if (!a.triple.empty()) q.spec.triple = analyze_triple(parse_triple_arg(a.triple));
    q.n = a.dim;
    q.budget = a.budget;
    q.seed = a.seed;
    q.start = a.start;
    q.threshold = a.threshold;
    if (q.n < 2) throw ConfigError("--dim must be at least 2");
    const auto res = search_counterexample(q);
    if (!res.found) {
        std::cout << "exhausted after " << res.tried << " samples\n";
        return kExitOk;
    }
    std::cout << to_json_value(*res.found).dump(2) << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"skewlab: skew information and uncertainty-relation checks"};
    app.require_subcommand(1);

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "Run a verification campaign from a JSON config");
    verify->add_option("--config", va.config, "Campaign config file")->required();
    verify->add_option("--out", va.out, "Report path (stdout when omitted)");
    verify->add_option("--format", va.format, "Report format")->check(CLI::IsMember({"json", "csv"}));

    std::string triple_arg;
    int grid = kDefaultPairGrid, ratio_grid = kDefaultRatioGrid;
    auto* beta = app.add_subcommand("beta", "Ratio bounds, beta and assumption for a triple");
    beta->add_option("--triple", triple_arg, "Triple JSON, or @file")->required();
    beta->add_option("--grid", grid, "Pairwise grid size")->check(CLI::Range(2, 1000000));
    beta->add_option("--ratio-grid", ratio_grid, "Ratio grid size")->check(CLI::Range(2, 100000000));

    std::string f_arg, g_arg;
    double eps = ScalarFunction::default_eps();
    auto* pairs = app.add_subcommand("pairs", "Classify a function pair");
    pairs->add_option("--f", f_arg, "Function JSON")->required();
    pairs->add_option("--g", g_arg, "Function JSON")->required();
    pairs->add_option("--eps", eps, "Domain floor");
    pairs->add_option("--grid", grid, "Pairwise grid size")->check(CLI::Range(2, 1000000));
    pairs->add_option("--ratio-grid", ratio_grid, "Ratio grid size")->check(CLI::Range(2, 100000000));

    int scan_grid = 200;
    auto* scan = app.add_subcommand("scan-l", "Minimum of L over an off-diagonal grid");
    scan->add_option("--triple", triple_arg, "Triple JSON, or @file")->required();
    scan->add_option("--grid", scan_grid, "Grid size K")->check(CLI::Range(2, 100000));

    double la = 0, lb = 0, lc = 0, rmax = 10.0;
    int steps = 2000;
    bool summary = false;
    auto* lemma = app.add_subcommand("lemma41", "Scalar lemma margins over an r grid");
    lemma->add_option("--a", la)->required();
    lemma->add_option("--b", lb)->required();
    lemma->add_option("--c", lc)->required();
    lemma->add_option("--rmax", rmax)->check(CLI::PositiveNumber);
    lemma->add_option("--steps", steps)->check(CLI::Range(2, 100000000));
    lemma->add_flag("--summary", summary, "Print only the summary line");

    CounterexampleArgs ca;
    auto* cex = app.add_subcommand("counterexample", "Search seeded samples for a violation");
    cex->add_option("--id", ca.id, "Inequality id")->required();
    cex->add_option("--budget", ca.budget)->check(CLI::PositiveNumber);
    cex->add_option("--seed", ca.seed);
    cex->add_option("--start", ca.start, "First sample index");
    cex->add_option("--dim", ca.dim);
    cex->add_option("--threshold", ca.threshold, "Minimum violation depth")->check(CLI::NonNegativeNumber);
    cex->add_option("--triple", ca.triple, "Triple JSON, or @file (THM31_FGH, COR41_PAIR)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitError;
    }

    try {
        if (*verify) return cmd_verify(va);
        if (*beta) return cmd_beta(triple_arg, grid, ratio_grid);
        if (*pairs) return cmd_pairs(f_arg, g_arg, eps, grid, ratio_grid);
        if (*scan) return cmd_scan_l(triple_arg, scan_grid);
        if (*lemma) return cmd_lemma41(la, lb, lc, rmax, steps, summary);
        if (*cex) return cmd_counterexample(ca);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
