#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace skewlab {

/// x^p
struct Power {
    double p = 1.0;
};

/// e^{a x}
struct Exp {
    double a = 1.0;
};

/// Constant c >= 0.
struct Const {
    double c = 1.0;
};

/// sum_k coef_k x^{p_k}, coef_k >= 0.
struct ScaledSum {
    struct Term {
        double coef = 1.0;
        double p = 1.0;
    };
    std::vector<Term> terms;
};

using FunctionKind = std::variant<Power, Exp, Const, ScaledSum>;

/// A nonnegative function on [eps, 1] with closed-form derivative.
class ScalarFunction {
public:
    ScalarFunction(FunctionKind kind, double eps);

    static ScalarFunction power(double p, double eps = default_eps());
    static ScalarFunction exp(double a, double eps = default_eps());
    static ScalarFunction constant(double c, double eps = default_eps());
    static ScalarFunction scaled_sum(std::vector<ScaledSum::Term> terms, double eps = default_eps());

    static double default_eps();

    const FunctionKind& kind() const noexcept { return kind_; }
    double eps() const noexcept { return eps_; }
    ScalarFunction with_eps(double eps) const { return ScalarFunction(kind_, eps); }

    /// Value at x. Throws DomainError for x < eps.
    double eval(double x) const;
    double deriv(double x) const;
    /// d/dx log f(x) = f'(x) / f(x).
    double log_deriv(double x) const;
    /// log f(x), evaluated in closed form where the kind allows.
    double log_value(double x) const;

    bool is_constant() const noexcept { return std::holds_alternative<Const>(kind_); }

    std::string describe() const;

private:
    void check_domain(double x) const;

    FunctionKind kind_;
    double eps_;
};

/// (f, g, h) sharing one domain floor. f must be strictly increasing and
/// positive on [eps, 1].
class FunctionTriple {
public:
    FunctionTriple(ScalarFunction f, ScalarFunction g, ScalarFunction h, double eps = ScalarFunction::default_eps());

    static FunctionTriple powers(double pf, double pg, double ph, double eps = ScalarFunction::default_eps());

    const ScalarFunction& f() const noexcept { return f_; }
    const ScalarFunction& g() const noexcept { return g_; }
    const ScalarFunction& h() const noexcept { return h_; }
    double eps() const noexcept { return eps_; }

    /// f(x) g(x) h(x)
    double product(double x) const { return f_.eval(x) * g_.eval(x) * h_.eval(x); }

    std::string describe() const;

private:
    ScalarFunction f_, g_, h_;
    double eps_;
};

/// If log_deriv(g) / log_deriv(f) is constant on (0, 1] in closed form,
/// returns that constant.
std::optional<double> constant_log_ratio(const ScalarFunction& f, const ScalarFunction& g);

// JSON forms:
//   {"kind":"power","p":0.25} | {"kind":"exp","a":1} | {"kind":"const","c":1}
//   {"kind":"scaled_sum","terms":[{"coef":1,"p":2}, ...]}
//   triple: {"f": {...}, "g": {...}, "h": {...}, "eps": 1e-6}
// Unknown keys are rejected with ConfigError.
ScalarFunction scalar_function_from_json(const nlohmann::json& j, double eps);
FunctionTriple triple_from_json(const nlohmann::json& j);
nlohmann::json to_json_value(const ScalarFunction& f);
nlohmann::json to_json_value(const FunctionTriple& t);

}  // namespace skewlab
