#include "skewlab/harness.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include "skewlab/error.hpp"
#include "skewlab/tolerances.hpp"

namespace skewlab {

namespace {

constexpr std::array<std::pair<InequalityId, std::string_view>, 12> kNames{{
    {InequalityId::HEISENBERG_21, "HEISENBERG_21"},
    {InequalityId::SCHRODINGER, "SCHRODINGER"},
    {InequalityId::LUO_23, "LUO_23"},
    {InequalityId::THM21_WYD, "THM21_WYD"},
    {InequalityId::THM22_GWYD, "THM22_GWYD"},
    {InequalityId::THM23_TILDE, "THM23_TILDE"},
    {InequalityId::THM31_FGH, "THM31_FGH"},
    {InequalityId::COR41_PAIR, "COR41_PAIR"},
    {InequalityId::CHAIN_24, "CHAIN_24"},
    {InequalityId::CHAIN_25, "CHAIN_25"},
    {InequalityId::CHAIN_27, "CHAIN_27"},
    {InequalityId::NAIVE_WY_SHOULD_FAIL, "NAIVE_WY_SHOULD_FAIL"},
}};

// Stream tag separating parameter draws from matrix draws.
constexpr std::uint64_t kParamStream = 0x5EED;
// Upper bound on alpha + beta in the high GWYD regime.
constexpr double kGwydCap = 2.0;
constexpr double kTildeMax = 2.0;
constexpr double kTildeMin = 1e-3;
constexpr double kRegimeTol = 1e-12;

double sq(double x) { return x * x; }

struct Link {
    double upper;
    double lower;
};

// Picks the link with the smallest upper - lower.
Link tightest(std::initializer_list<Link> links) {
    Link best = *links.begin();
    for (const auto& l : links)
        if (l.upper - l.lower < best.upper - best.lower) best = l;
    return best;
}

const TripleAnalysis& require_triple(InequalityId id, const InequalityParams& p) {
    if (!p.triple) throw PreconditionError(std::string(to_string(id)) + ": function triple required");
    if (p.triple->assumption == Assumption::Neither) {
        throw PreconditionError(std::string(to_string(id)) + ": triple " + p.triple->triple.describe() +
                                " satisfies neither assumption (I) nor (II)");
    }
    return *p.triple;
}

double require_alpha(InequalityId id, const InequalityParams& p) {
    if (!p.alpha) throw PreconditionError(std::string(to_string(id)) + ": alpha required");
    if (!(*p.alpha >= 0.0 && *p.alpha <= 1.0)) {
        throw PreconditionError(std::string(to_string(id)) + ": alpha must lie in [0, 1]");
    }
    return *p.alpha;
}

void check_gwyd_regime(double alpha, double beta) {
    if (!(alpha >= 0.0 && beta >= 0.0)) throw PreconditionError("THM22_GWYD: alpha and beta must be nonnegative");
    const double s = alpha + beta;
    if (s > 0.5 + kRegimeTol && s < 1.0 - kRegimeTol) {
        std::ostringstream os;
        os << "THM22_GWYD: alpha + beta = " << s << " lies in the excluded band (1/2, 1)";
        throw PreconditionError(os.str());
    }
}

std::string json_type_error(const std::string& where, const char* what) { return where + ": " + what; }

void reject_unknown(const nlohmann::json& j, const std::set<std::string>& allowed, const std::string& where) {
    for (const auto& [k, v] : j.items()) {
        if (!allowed.count(k)) throw ConfigError(where + ": unknown key \"" + k + "\"");
    }
}

double get_number(const nlohmann::json& j, const char* key, const std::string& where) {
    if (!j.at(key).is_number()) throw ConfigError(json_type_error(where, (std::string(key) + " must be a number").c_str()));
    return j.at(key).get<double>();
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

nlohmann::json analysis_json(const TripleAnalysis& a) {
    nlohmann::json j{{"triple", to_json_value(a.triple)},
                     {"describe", a.triple.describe()},
                     {"m_g", a.bounds.m_g},
                     {"M_g", a.bounds.M_g},
                     {"m_h", a.bounds.m_h},
                     {"M_h", a.bounds.M_h},
                     {"ratio_grid", a.bounds.grid},
                     {"fg_class", to_string(a.fg.cls)},
                     {"fh_class", to_string(a.fh.cls)},
                     {"assumption", to_string(a.assumption)},
                     {"beta", a.beta}};
    return j;
}

std::string_view to_string(GwydRegime r) {
    switch (r) {
        case GwydRegime::Low: return "low";
        case GwydRegime::High: return "high";
        case GwydRegime::Both: return "both";
    }
    return "?";
}

}  // namespace

std::string_view to_string(InequalityId id) {
    for (const auto& [k, name] : kNames)
        if (k == id) return name;
    return "?";
}

std::optional<InequalityId> inequality_from_string(std::string_view name) {
    for (const auto& [k, n] : kNames)
        if (n == name) return k;
    return std::nullopt;
}

bool theorem_backed(InequalityId id) { return id != InequalityId::NAIVE_WY_SHOULD_FAIL; }

bool within_slack(double lhs, double rhs, double slack) {
    const double margin = lhs - rhs;
    return margin >= -slack * std::max({std::abs(lhs), std::abs(rhs), 1.0});
}

nlohmann::json to_json_value(const SampleRecord& r) {
    nlohmann::json j{{"id", to_string(r.id)},
                     {"n", r.n},
                     {"sample_index", r.sample_index},
                     {"rho", to_json_value(r.rho)},
                     {"A", to_json_value(r.a)},
                     {"B", to_json_value(r.b)},
                     {"lhs", r.lhs},
                     {"rhs", r.rhs},
                     {"margin", r.margin},
                     {"pass", r.pass}};
    if (r.alpha) j["alpha"] = *r.alpha;
    if (r.beta) j["beta"] = *r.beta;
    return j;
}

SampleRecord evaluate_inequality(InequalityId id, const DensityMatrix& rho, const HermitianMatrix& a,
                                 const HermitianMatrix& b, const InequalityParams& params, double slack) {
    SampleRecord rec;
    rec.id = id;
    rec.n = rho.dim();
    rec.alpha = params.alpha;
    rec.beta = params.beta;

    const auto comm_sq = [&](const ComplexMatrix& weight) { return std::norm(commutator_expectation(weight, a, b)); };

    switch (id) {
        case InequalityId::HEISENBERG_21:
            rec.lhs = variance(rho, a) * variance(rho, b);
            rec.rhs = 0.25 * comm_sq(rho.matrix());
            break;
        case InequalityId::SCHRODINGER:
            rec.lhs = variance(rho, a) * variance(rho, b) - sq(covariance(rho, a, b).real());
            rec.rhs = 0.25 * comm_sq(rho.matrix());
            break;
        case InequalityId::LUO_23:
            rec.lhs = luo_U(rho, a) * luo_U(rho, b);
            rec.rhs = 0.25 * comm_sq(rho.matrix());
            break;
        case InequalityId::NAIVE_WY_SHOULD_FAIL:
            rec.lhs = wy_skew(rho, a) * wy_skew(rho, b);
            rec.rhs = 0.25 * comm_sq(rho.matrix());
            break;
        case InequalityId::THM21_WYD: {
            const double alpha = require_alpha(id, params);
            rec.lhs = wyd_family(rho, a, alpha).U * wyd_family(rho, b, alpha).U;
            rec.rhs = alpha * (1.0 - alpha) * comm_sq(rho.matrix());
            break;
        }
        case InequalityId::THM22_GWYD: {
            if (!params.alpha || !params.beta) throw PreconditionError("THM22_GWYD: alpha and beta required");
            const double alpha = *params.alpha, beta = *params.beta;
            check_gwyd_regime(alpha, beta);
            rec.lhs = gwyd_family(rho, a, alpha, beta).U * gwyd_family(rho, b, alpha, beta).U;
            rec.rhs = alpha * beta * comm_sq(rho.matrix());
            break;
        }
        case InequalityId::THM23_TILDE: {
            if (!params.alpha || !params.beta) throw PreconditionError("THM23_TILDE: alpha and beta required");
            const double alpha = *params.alpha, beta = *params.beta;
            if (!(alpha > 0.0 && beta > 0.0)) throw PreconditionError("THM23_TILDE: alpha and beta must be positive");
            rec.lhs = gwyd_tilde_family(rho, a, alpha, beta).U * gwyd_tilde_family(rho, b, alpha, beta).U;
            rec.rhs = alpha * beta / sq(alpha + beta) * comm_sq(rho.power(alpha + beta).matrix());
            break;
        }
        case InequalityId::THM31_FGH:
        case InequalityId::COR41_PAIR: {
            const auto& an = require_triple(id, params);
            if (id == InequalityId::COR41_PAIR && !an.triple.h().is_constant()) {
                throw PreconditionError("COR41_PAIR: h must be constant");
            }
            const auto& t = an.triple;
            const auto& spec = rho.spectrum();
            std::vector<double> w(spec.dim());
            for (std::size_t i = 0; i < spec.dim(); ++i) w[i] = t.product(spec.eigenvalues[i]);
            rec.lhs = fgh_family(rho, a, t).U * fgh_family(rho, b, t).U;
            rec.rhs = an.beta * comm_sq(spec.reassemble(w).matrix());
            break;
        }
        case InequalityId::CHAIN_24: {
            auto links = [&](const HermitianMatrix& h) {
                const double i = wy_skew(rho, h), u = luo_U(rho, h), v = variance(rho, h);
                return tightest({{i, 0.0}, {u, i}, {v, u}});
            };
            const Link l = tightest({links(a), links(b)});
            rec.lhs = l.upper;
            rec.rhs = l.lower;
            break;
        }
        case InequalityId::CHAIN_25: {
            const double alpha = require_alpha(id, params);
            auto links = [&](const HermitianMatrix& h) {
                const auto qa = wyd_family(rho, h, alpha);
                const auto qh = wyd_family(rho, h, 0.5);
                return tightest({{qh.I, qa.I}, {qh.J, qh.I}, {qa.J, qh.J}});
            };
            const Link l = tightest({links(a), links(b)});
            rec.lhs = l.upper;
            rec.rhs = l.lower;
            break;
        }
        case InequalityId::CHAIN_27: {
            const double alpha = require_alpha(id, params);
            auto links = [&](const HermitianMatrix& h) {
                const auto qa = wyd_family(rho, h, alpha);
                const auto qh = wyd_family(rho, h, 0.5);
                return tightest({{qa.I, 0.0}, {qa.U, qa.I}, {qh.U, qa.U}});
            };
            const Link l = tightest({links(a), links(b)});
            rec.lhs = l.upper;
            rec.rhs = l.lower;
            break;
        }
    }
    rec.margin = rec.lhs - rec.rhs;
    rec.pass = within_slack(rec.lhs, rec.rhs, slack);
    rec.rho = rho.matrix();
    rec.a = a.matrix();
    rec.b = b.matrix();
    return rec;
}

InequalityParams resolve_params(const InequalitySpec& spec, RngStream& rng) {
    InequalityParams p;
    p.alpha = spec.alpha;
    p.beta = spec.beta;
    p.triple = spec.triple ? &*spec.triple : nullptr;
    switch (spec.id) {
        case InequalityId::THM21_WYD:
        case InequalityId::CHAIN_25:
        case InequalityId::CHAIN_27:
            if (!p.alpha) p.alpha = rng.uniform();
            break;
        case InequalityId::THM22_GWYD:
            if (!p.alpha || !p.beta) {
                GwydRegime r = spec.regime;
                if (r == GwydRegime::Both) r = rng.uniform() < 0.5 ? GwydRegime::Low : GwydRegime::High;
                if (r == GwydRegime::Low) {
                    // uniform on the triangle alpha, beta >= 0, alpha + beta <= 1/2
                    double u = rng.uniform(0.0, 0.5), v = rng.uniform(0.0, 0.5);
                    if (u + v > 0.5) {
                        u = 0.5 - u;
                        v = 0.5 - v;
                    }
                    p.alpha = u;
                    p.beta = v;
                } else {
                    // uniform on 1 <= alpha + beta <= cap by rejection from the square
                    double u, v;
                    do {
                        u = rng.uniform(0.0, kGwydCap);
                        v = rng.uniform(0.0, kGwydCap);
                    } while (u + v < 1.0 || u + v > kGwydCap);
                    p.alpha = u;
                    p.beta = v;
                }
            }
            break;
        case InequalityId::THM23_TILDE:
            if (!p.alpha) p.alpha = rng.uniform(kTildeMin, kTildeMax);
            if (!p.beta) p.beta = rng.uniform(kTildeMin, kTildeMax);
            break;
        default:
            break;
    }
    return p;
}

InequalitySpec make_spec(InequalityId id, std::string label) {
    InequalitySpec s;
    s.id = id;
    s.label = label.empty() ? std::string(to_string(id)) : std::move(label);
    return s;
}

void validate_config(const CampaignConfig& c) {
    if (c.samples_per_dim < 1) throw ConfigError("samples_per_dim must be at least 1");
    for (auto n : c.dims)
        if (n < 2) throw ConfigError("every dimension must be at least 2");
    if (!(c.positivity_mix > 0.0 && c.positivity_mix < 1.0)) throw ConfigError("positivity_mix must lie in (0, 1)");
    if (!(c.slack >= 0.0)) throw ConfigError("slack must be nonnegative");
    if (!(c.observable_scale > 0.0)) throw ConfigError("observable_scale must be positive");
    const std::size_t max_dim = c.dims.empty() ? 2 : *std::max_element(c.dims.begin(), c.dims.end());
    const double lambda_floor = c.positivity_mix / static_cast<double>(max_dim);

    for (const auto& s : c.inequalities) {
        const std::string where = "inequality " + s.label;
        const bool takes_alpha = s.id == InequalityId::THM21_WYD || s.id == InequalityId::CHAIN_25 ||
                                 s.id == InequalityId::CHAIN_27 || s.id == InequalityId::THM22_GWYD ||
                                 s.id == InequalityId::THM23_TILDE;
        const bool takes_beta = s.id == InequalityId::THM22_GWYD || s.id == InequalityId::THM23_TILDE;
        const bool takes_triple = s.id == InequalityId::THM31_FGH || s.id == InequalityId::COR41_PAIR;
        if (s.alpha && !takes_alpha) throw ConfigError(where + ": alpha is not used by this inequality");
        if (s.beta && !takes_beta) throw ConfigError(where + ": beta is not used by this inequality");
        if (s.triple && !takes_triple) throw ConfigError(where + ": triple is not used by this inequality");
        if (takes_triple && !s.triple) throw ConfigError(where + ": triple required");

        switch (s.id) {
            case InequalityId::THM21_WYD:
            case InequalityId::CHAIN_25:
            case InequalityId::CHAIN_27:
                if (s.alpha && !(*s.alpha >= 0.0 && *s.alpha <= 1.0)) throw ConfigError(where + ": alpha must lie in [0, 1]");
                break;
            case InequalityId::THM22_GWYD:
                if (s.alpha.has_value() != s.beta.has_value()) {
                    throw ConfigError(where + ": give both alpha and beta, or neither");
                }
                if (s.alpha) {
                    try {
                        check_gwyd_regime(*s.alpha, *s.beta);
                    } catch (const PreconditionError& e) {
                        throw ConfigError(where + ": " + e.what());
                    }
                }
                break;
            case InequalityId::THM23_TILDE:
                if ((s.alpha && !(*s.alpha > 0.0)) || (s.beta && !(*s.beta > 0.0))) {
                    throw ConfigError(where + ": alpha and beta must be positive");
                }
                break;
            case InequalityId::THM31_FGH:
            case InequalityId::COR41_PAIR:
                if (s.triple->assumption == Assumption::Neither) {
                    throw ConfigError(where + ": triple " + s.triple->triple.describe() +
                                      " satisfies neither assumption (I) nor (II)");
                }
                if (s.id == InequalityId::COR41_PAIR && !s.triple->triple.h().is_constant()) {
                    throw ConfigError(where + ": COR41_PAIR needs a constant h");
                }
                if (!(s.triple->triple.eps() < lambda_floor)) {
                    throw ConfigError(where + ": triple eps must lie below positivity_mix / max(dims)");
                }
                break;
            default:
                break;
        }
    }
}

CampaignConfig campaign_config_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("config: top-level JSON object required");
    reject_unknown(j,
                   {"seed", "dims", "samples_per_dim", "positivity_mix", "slack", "observable_scale",
                    "assert_all_pass", "inequalities", "triples", "output"},
                   "config");
    CampaignConfig c;
    c.source = j;
    try {
        if (!j.contains("seed") || !j.at("seed").is_number_unsigned()) {
            throw ConfigError("config: \"seed\" must be a nonnegative integer");
        }
        c.seed = j.at("seed").get<std::uint64_t>();
        if (!j.contains("dims") || !j.at("dims").is_array()) throw ConfigError("config: \"dims\" array required");
        for (const auto& d : j.at("dims")) {
            if (!d.is_number_unsigned()) throw ConfigError("config: dims must be positive integers");
            c.dims.push_back(d.get<std::size_t>());
        }
        if (!j.contains("samples_per_dim") || !j.at("samples_per_dim").is_number_unsigned()) {
            throw ConfigError("config: \"samples_per_dim\" must be a positive integer");
        }
        c.samples_per_dim = j.at("samples_per_dim").get<std::size_t>();
        if (j.contains("positivity_mix")) c.positivity_mix = get_number(j, "positivity_mix", "config");
        if (j.contains("slack")) c.slack = get_number(j, "slack", "config");
        if (j.contains("observable_scale")) c.observable_scale = get_number(j, "observable_scale", "config");
        if (j.contains("assert_all_pass")) {
            if (!j.at("assert_all_pass").is_boolean()) throw ConfigError("config: assert_all_pass must be boolean");
            c.assert_all_pass = j.at("assert_all_pass").get<bool>();
        }
        if (j.contains("output")) {
            const auto& o = j.at("output");
            if (!o.is_object()) throw ConfigError("config: output must be an object");
            reject_unknown(o, {"json", "csv"}, "config output");
            if (o.contains("json")) c.output_json = o.at("json").get<std::string>();
            if (o.contains("csv")) c.output_csv = o.at("csv").get<std::string>();
        }

        std::map<std::string, nlohmann::json> named;
        if (j.contains("triples")) {
            if (!j.at("triples").is_object()) throw ConfigError("config: triples must be an object of named specs");
            for (const auto& [name, spec] : j.at("triples").items()) named[name] = spec;
        }

        if (!j.contains("inequalities") || !j.at("inequalities").is_array()) {
            throw ConfigError("config: \"inequalities\" array required");
        }
        std::set<std::string> labels;
        for (const auto& e : j.at("inequalities")) {
            if (!e.is_object() || !e.contains("id") || !e.at("id").is_string()) {
                throw ConfigError("config: each inequality needs a string \"id\"");
            }
            reject_unknown(e, {"id", "label", "alpha", "beta", "regime", "triple", "grid", "ratio_grid"},
                           "inequality " + e.at("id").get<std::string>());
            const auto id = inequality_from_string(e.at("id").get<std::string>());
            if (!id) throw ConfigError("config: unknown inequality id \"" + e.at("id").get<std::string>() + "\"");
            InequalitySpec s = make_spec(*id, e.contains("label") ? e.at("label").get<std::string>() : "");
            if (!labels.insert(s.label).second) {
                throw ConfigError("config: duplicate inequality label \"" + s.label + "\"; add distinct labels");
            }
            const std::string where = "inequality " + s.label;
            if (e.contains("alpha")) s.alpha = get_number(e, "alpha", where);
            if (e.contains("beta")) s.beta = get_number(e, "beta", where);
            if (e.contains("regime")) {
                if (*id != InequalityId::THM22_GWYD) throw ConfigError(where + ": regime applies to THM22_GWYD only");
                const auto r = e.at("regime").get<std::string>();
                if (r == "low") s.regime = GwydRegime::Low;
                else if (r == "high") s.regime = GwydRegime::High;
                else if (r == "both") s.regime = GwydRegime::Both;
                else throw ConfigError(where + ": regime must be low, high or both");
            }
            int grid = kDefaultPairGrid, ratio_grid = kDefaultRatioGrid;
            if (e.contains("grid")) grid = e.at("grid").get<int>();
            if (e.contains("ratio_grid")) ratio_grid = e.at("ratio_grid").get<int>();
            if (grid < 2 || ratio_grid < 2) throw ConfigError(where + ": grids need at least 2 points");
            if (e.contains("triple")) {
                nlohmann::json spec = e.at("triple");
                if (spec.is_string()) {
                    const auto it = named.find(spec.get<std::string>());
                    if (it == named.end()) throw ConfigError(where + ": unknown triple name " + spec.dump());
                    spec = it->second;
                }
                s.triple_spec = spec;
                try {
                    s.triple = analyze_triple(triple_from_json(spec), grid, ratio_grid);
                } catch (const ConfigError&) {
                    throw;
                } catch (const Error& err) {
                    throw ConfigError(where + ": " + err.what());
                }
            }
            c.inequalities.push_back(std::move(s));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    validate_config(c);
    return c;
}

nlohmann::json config_echo(const CampaignConfig& c) {
    if (!c.source.is_null()) return c.source;
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& s : c.inequalities) {
        nlohmann::json e{{"id", to_string(s.id)}, {"label", s.label}};
        if (s.alpha) e["alpha"] = *s.alpha;
        if (s.beta) e["beta"] = *s.beta;
        if (s.id == InequalityId::THM22_GWYD) e["regime"] = to_string(s.regime);
        if (s.triple) e["triple"] = to_json_value(s.triple->triple);
        entries.push_back(std::move(e));
    }
    return {{"seed", c.seed},
            {"dims", c.dims},
            {"samples_per_dim", c.samples_per_dim},
            {"positivity_mix", c.positivity_mix},
            {"slack", c.slack},
            {"observable_scale", c.observable_scale},
            {"assert_all_pass", c.assert_all_pass},
            {"inequalities", entries}};
}

std::string config_hash(const nlohmann::json& j) {
    const std::string s = j.dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

Sample draw_sample(std::uint64_t seed, std::size_t n, std::uint64_t index, double positivity_mix,
                   double observable_scale) {
    RngStream rng(seed, {static_cast<std::uint64_t>(n), index});
    auto rho = sample_density(n, rng, positivity_mix);
    auto a = sample_observable(n, rng, observable_scale);
    auto b = sample_observable(n, rng, observable_scale);
    return {std::move(rho), std::move(a), std::move(b)};
}

namespace {

struct Task {
    std::size_t entry;
    std::size_t n;
    std::uint64_t index;
};

SampleRecord run_task(const CampaignConfig& c, const Task& t) {
    const auto s = draw_sample(c.seed, t.n, t.index, c.positivity_mix, c.observable_scale);
    RngStream prng(c.seed, {static_cast<std::uint64_t>(t.n), t.index, static_cast<std::uint64_t>(t.entry), kParamStream});
    const auto& spec = c.inequalities[t.entry];
    const auto params = resolve_params(spec, prng);
    auto rec = evaluate_inequality(spec.id, s.rho, s.a, s.b, params, c.slack);
    rec.sample_index = t.index;
    return rec;
}

}  // namespace

std::size_t CampaignReport::theorem_violations() const {
    std::size_t v = 0;
    for (const auto& e : entries)
        if (e.theorem_backed) v += e.violations;
    return v;
}

std::size_t CampaignReport::informational_violations() const {
    std::size_t v = 0;
    for (const auto& e : entries)
        if (!e.theorem_backed) v += e.violations;
    return v;
}

CampaignReport run_campaign(const CampaignConfig& config, unsigned workers) {
    validate_config(config);
    const auto start = std::chrono::steady_clock::now();

    std::vector<Task> tasks;
    for (std::size_t e = 0; e < config.inequalities.size(); ++e)
        for (auto n : config.dims)
            for (std::uint64_t i = 0; i < config.samples_per_dim; ++i) tasks.push_back({e, n, i});

    std::vector<SampleRow> rows(tasks.size());
    std::vector<std::exception_ptr> errors(tasks.size());
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(1, tasks.size()))));

    auto work = [&](unsigned w) {
        for (std::size_t k = w; k < tasks.size(); k += workers) {
            try {
                const auto rec = run_task(config, tasks[k]);
                rows[k] = {tasks[k].entry, tasks[k].n, tasks[k].index, rec.lhs, rec.rhs, rec.margin, rec.pass};
            } catch (...) {
                errors[k] = std::current_exception();
                return;
            }
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
        for (auto& t : pool) t.join();
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    CampaignReport rep;
    rep.config = config_echo(config);
    rep.config_hash = config_hash(rep.config);
    for (std::size_t e = 0; e < config.inequalities.size(); ++e) {
        const auto& spec = config.inequalities[e];
        InequalitySummary s;
        s.id = spec.id;
        s.label = spec.label;
        s.theorem_backed = theorem_backed(spec.id);
        s.min_margin = std::numeric_limits<double>::infinity();
        std::optional<std::size_t> worst;
        for (std::size_t k = 0; k < rows.size(); ++k) {
            if (rows[k].entry != e) continue;
            ++s.samples;
            if (!rows[k].pass) ++s.violations;
            if (rows[k].margin < s.min_margin) {
                s.min_margin = rows[k].margin;
                worst = k;
            }
        }
        if (worst) s.worst = run_task(config, tasks[*worst]);
        rep.entries.push_back(std::move(s));
    }
    rep.rows = std::move(rows);
    rep.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

nlohmann::json to_json_value(const CampaignReport& r, const CampaignConfig& config) {
    nlohmann::json entries = nlohmann::json::array();
    for (std::size_t e = 0; e < r.entries.size(); ++e) {
        const auto& s = r.entries[e];
        const auto& spec = config.inequalities.at(e);
        nlohmann::json j{{"id", to_string(s.id)},
                         {"label", s.label},
                         {"theorem_backed", s.theorem_backed},
                         {"samples", s.samples},
                         {"violations", s.violations}};
        j["min_margin"] = s.samples ? nlohmann::json(s.min_margin) : nlohmann::json(nullptr);
        j["worst"] = s.worst ? to_json_value(*s.worst) : nlohmann::json(nullptr);
        nlohmann::json params = nlohmann::json::object();
        if (spec.alpha) params["alpha"] = *spec.alpha;
        if (spec.beta) params["beta"] = *spec.beta;
        if (spec.id == InequalityId::THM22_GWYD && !spec.alpha) {
            params["regime"] = to_string(spec.regime);
            params["high_regime_cap"] = kGwydCap;
        }
        if (spec.triple) params["triple_analysis"] = analysis_json(*spec.triple);
        j["params"] = std::move(params);
        entries.push_back(std::move(j));
    }
    return {{"config", r.config},
            {"config_hash", r.config_hash},
            {"inequalities", std::move(entries)},
            {"summary",
             {{"theorem_violations", r.theorem_violations()},
              {"informational_violations", r.informational_violations()},
              {"assert_all_pass", config.assert_all_pass}}},
            {"wall_time_s", r.wall_time_s}};
}

void write_csv(std::ostream& os, const CampaignReport& r) {
    os << "id,label,n,sample,lhs,rhs,margin,pass\n";
    for (const auto& row : r.rows) {
        const auto& e = r.entries.at(row.entry);
        os << to_string(e.id) << ',' << e.label << ',' << row.n << ',' << row.index << ',' << fmt17(row.lhs) << ','
           << fmt17(row.rhs) << ',' << fmt17(row.margin) << ',' << (row.pass ? 1 : 0) << '\n';
    }
}

CounterexampleResult search_counterexample(const CounterexampleQuery& q) {
    if (q.budget < 1) throw PreconditionError("search_counterexample: budget must be at least 1");
    CounterexampleResult out;
    for (std::uint64_t i = q.start; i < q.start + q.budget; ++i) {
        const auto s = draw_sample(q.seed, q.n, i, q.positivity_mix, q.observable_scale);
        RngStream prng(q.seed, {static_cast<std::uint64_t>(q.n), i, 0, kParamStream});
        const auto params = resolve_params(q.spec, prng);
        auto rec = evaluate_inequality(q.spec.id, s.rho, s.a, s.b, params, q.slack);
        rec.sample_index = i;
        ++out.tried;
        const double limit =
            std::max(q.threshold, q.slack * std::max({std::abs(rec.lhs), std::abs(rec.rhs), 1.0}));
        if (rec.margin < -limit) {
            out.found = std::move(rec);
            return out;
        }
    }
    return out;
}

}  // namespace skewlab
