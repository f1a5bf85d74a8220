#include "skewlab/scalar_function.hpp"

#include <charconv>
#include <cmath>
#include <set>
#include <sstream>

#include "skewlab/error.hpp"
#include "skewlab/tolerances.hpp"

namespace skewlab {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void validate_kind(const FunctionKind& kind) {
    std::visit(overloaded{
                   [](const Power& k) {
                       if (!std::isfinite(k.p)) throw PreconditionError("power exponent must be finite");
                   },
                   [](const Exp& k) {
                       if (!std::isfinite(k.a)) throw PreconditionError("exp rate must be finite");
                   },
                   [](const Const& k) {
                       if (!(k.c >= 0.0) || !std::isfinite(k.c))
                           throw PreconditionError("constant function must be a finite nonnegative value");
                   },
                   [](const ScaledSum& k) {
                       if (k.terms.empty()) throw PreconditionError("scaled sum needs at least one term");
                       for (const auto& t : k.terms) {
                           if (!(t.coef >= 0.0) || !std::isfinite(t.coef) || !std::isfinite(t.p))
                               throw PreconditionError("scaled sum coefficients must be finite and nonnegative");
                       }
                   },
               },
               kind);
}

// Shortest text that reads back to the same double.
std::string fmt(double v) {
    char buf[32];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

void reject_unknown_keys(const nlohmann::json& j, std::set<std::string> allowed, const std::string& where) {
    for (const auto& [key, value] : j.items()) {
        if (!allowed.count(key)) throw ConfigError(where + ": unknown key \"" + key + "\"");
    }
}

double require_number(const nlohmann::json& j, const char* key, const std::string& where) {
    if (!j.contains(key) || !j.at(key).is_number()) {
        throw ConfigError(where + ": missing numeric \"" + key + "\"");
    }
    return j.at(key).get<double>();
}

}  // namespace

ScalarFunction::ScalarFunction(FunctionKind kind, double eps) : kind_(std::move(kind)), eps_(eps) {
    if (!(eps > 0.0 && eps < 1.0)) throw PreconditionError("domain floor eps must lie in (0, 1)");
    validate_kind(kind_);
}

double ScalarFunction::default_eps() { return default_tolerances().function_floor; }

ScalarFunction ScalarFunction::power(double p, double eps) { return {Power{p}, eps}; }
ScalarFunction ScalarFunction::exp(double a, double eps) { return {Exp{a}, eps}; }
ScalarFunction ScalarFunction::constant(double c, double eps) { return {Const{c}, eps}; }
ScalarFunction ScalarFunction::scaled_sum(std::vector<ScaledSum::Term> terms, double eps) {
    return {ScaledSum{std::move(terms)}, eps};
}

void ScalarFunction::check_domain(double x) const {
    if (!(x >= eps_)) {
        std::ostringstream os;
        os << describe() << ": argument " << x << " lies below the domain floor " << eps_;
        throw DomainError(os.str());
    }
}

double ScalarFunction::eval(double x) const {
    check_domain(x);
    return std::visit(overloaded{
                          [&](const Power& k) { return std::pow(x, k.p); },
                          [&](const Exp& k) { return std::exp(k.a * x); },
                          [&](const Const& k) { return k.c; },
                          [&](const ScaledSum& k) {
                              double s = 0.0;
                              for (const auto& t : k.terms) s += t.coef * std::pow(x, t.p);
                              return s;
                          },
                      },
                      kind_);
}

double ScalarFunction::deriv(double x) const {
    check_domain(x);
    return std::visit(overloaded{
                          [&](const Power& k) { return k.p == 0.0 ? 0.0 : k.p * std::pow(x, k.p - 1.0); },
                          [&](const Exp& k) { return k.a * std::exp(k.a * x); },
                          [&](const Const&) { return 0.0; },
                          [&](const ScaledSum& k) {
                              double s = 0.0;
                              for (const auto& t : k.terms)
                                  if (t.p != 0.0) s += t.coef * t.p * std::pow(x, t.p - 1.0);
                              return s;
                          },
                      },
                      kind_);
}

double ScalarFunction::log_deriv(double x) const {
    check_domain(x);
    return std::visit(overloaded{
                          [&](const Power& k) { return k.p / x; },
                          [&](const Exp& k) { return k.a; },
                          [&](const Const&) { return 0.0; },
                          [&](const ScaledSum&) {
                              const double v = eval(x);
                              if (v <= 0.0) throw DomainError(describe() + ": log-derivative undefined where f = 0");
                              return deriv(x) / v;
                          },
                      },
                      kind_);
}

double ScalarFunction::log_value(double x) const {
    check_domain(x);
    return std::visit(overloaded{
                          [&](const Power& k) { return k.p * std::log(x); },
                          [&](const Exp& k) { return k.a * x; },
                          [&](const Const& k) { return std::log(k.c); },
                          [&](const ScaledSum&) { return std::log(eval(x)); },
                      },
                      kind_);
}

std::string ScalarFunction::describe() const {
    return std::visit(overloaded{
                          [](const Power& k) { return "x^" + fmt(k.p); },
                          [](const Exp& k) { return "exp(" + fmt(k.a) + "x)"; },
                          [](const Const& k) { return fmt(k.c); },
                          [](const ScaledSum& k) {
                              std::string s;
                              for (const auto& t : k.terms) {
                                  if (!s.empty()) s += " + ";
                                  s += fmt(t.coef) + "*x^" + fmt(t.p);
                              }
                              return s;
                          },
                      },
                      kind_);
}

FunctionTriple::FunctionTriple(ScalarFunction f, ScalarFunction g, ScalarFunction h, double eps)
    : f_(f.with_eps(eps)), g_(g.with_eps(eps)), h_(h.with_eps(eps)), eps_(eps) {
    // f strictly increasing and positive: checked on a fine grid plus the endpoints.
    constexpr int kChecks = 1001;
    for (int i = 0; i < kChecks; ++i) {
        const double x = eps + (1.0 - eps) * i / (kChecks - 1);
        if (!(f_.eval(x) > 0.0) || !(f_.deriv(x) > 0.0)) {
            std::ostringstream os;
            os << "f = " << f_.describe() << " must be positive and strictly increasing on [eps, 1]; fails at x = " << x;
            throw PreconditionError(os.str());
        }
        if (!(g_.eval(x) >= 0.0) || !(h_.eval(x) >= 0.0)) {
            throw PreconditionError("g and h must be nonnegative on [eps, 1]");
        }
    }
}

FunctionTriple FunctionTriple::powers(double pf, double pg, double ph, double eps) {
    return {ScalarFunction::power(pf, eps), ScalarFunction::power(pg, eps), ScalarFunction::power(ph, eps), eps};
}

std::string FunctionTriple::describe() const {
    return "(" + f_.describe() + ", " + g_.describe() + ", " + h_.describe() + ")";
}

std::optional<double> constant_log_ratio(const ScalarFunction& f, const ScalarFunction& g) {
    if (g.is_constant()) return 0.0;
    if (const auto* pf = std::get_if<Power>(&f.kind())) {
        if (const auto* pg = std::get_if<Power>(&g.kind())) {
            if (pf->p != 0.0) return pg->p / pf->p;
        }
    }
    if (const auto* ef = std::get_if<Exp>(&f.kind())) {
        if (const auto* eg = std::get_if<Exp>(&g.kind())) {
            if (ef->a != 0.0) return eg->a / ef->a;
        }
    }
    return std::nullopt;
}

ScalarFunction scalar_function_from_json(const nlohmann::json& j, double eps) {
    const std::string where = "function spec";
    if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) {
        throw ConfigError(where + ": object with string \"kind\" required");
    }
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "power") {
        reject_unknown_keys(j, {"kind", "p"}, where);
        return ScalarFunction::power(require_number(j, "p", where), eps);
    }
    if (kind == "exp") {
        reject_unknown_keys(j, {"kind", "a"}, where);
        return ScalarFunction::exp(require_number(j, "a", where), eps);
    }
    if (kind == "const") {
        reject_unknown_keys(j, {"kind", "c"}, where);
        return ScalarFunction::constant(require_number(j, "c", where), eps);
    }
    if (kind == "scaled_sum") {
        reject_unknown_keys(j, {"kind", "terms"}, where);
        if (!j.contains("terms") || !j.at("terms").is_array()) throw ConfigError(where + ": \"terms\" array required");
        std::vector<ScaledSum::Term> terms;
        for (const auto& t : j.at("terms")) {
            if (!t.is_object()) throw ConfigError(where + ": each term must be an object");
            reject_unknown_keys(t, {"coef", "p"}, where + " term");
            terms.push_back({require_number(t, "coef", where), require_number(t, "p", where)});
        }
        return ScalarFunction::scaled_sum(std::move(terms), eps);
    }
    throw ConfigError(where + ": unknown kind \"" + kind + "\"");
}

FunctionTriple triple_from_json(const nlohmann::json& j) {
    const std::string where = "triple spec";
    if (!j.is_object()) throw ConfigError(where + ": object required");
    reject_unknown_keys(j, {"f", "g", "h", "eps"}, where);
    for (const char* key : {"f", "g", "h"}) {
        if (!j.contains(key)) throw ConfigError(where + ": missing \"" + std::string(key) + "\"");
    }
    const double eps = j.contains("eps") ? require_number(j, "eps", where) : ScalarFunction::default_eps();
    try {
        return FunctionTriple(scalar_function_from_json(j.at("f"), eps), scalar_function_from_json(j.at("g"), eps),
                              scalar_function_from_json(j.at("h"), eps), eps);
    } catch (const PreconditionError& e) {
        throw ConfigError(where + ": " + e.what());
    }
}

nlohmann::json to_json_value(const ScalarFunction& f) {
    return std::visit(overloaded{
                          [](const Power& k) -> nlohmann::json { return {{"kind", "power"}, {"p", k.p}}; },
                          [](const Exp& k) -> nlohmann::json { return {{"kind", "exp"}, {"a", k.a}}; },
                          [](const Const& k) -> nlohmann::json { return {{"kind", "const"}, {"c", k.c}}; },
                          [](const ScaledSum& k) -> nlohmann::json {
                              auto terms = nlohmann::json::array();
                              for (const auto& t : k.terms) terms.push_back({{"coef", t.coef}, {"p", t.p}});
                              return {{"kind", "scaled_sum"}, {"terms", terms}};
                          },
                      },
                      f.kind());
}

nlohmann::json to_json_value(const FunctionTriple& t) {
    return {{"f", to_json_value(t.f())}, {"g", to_json_value(t.g())}, {"h", to_json_value(t.h())}, {"eps", t.eps()}};
}

}  // namespace skewlab
