#pragma once

#include <string_view>
#include <vector>

#include "skewlab/scalar_function.hpp"

namespace skewlab {

/// Default grid size for inf/sup estimates of log-derivative ratios.
inline constexpr int kDefaultRatioGrid = 10000;
/// Default grid size for the pairwise O(K^2) conditions.
inline constexpr int kDefaultPairGrid = 2000;

/// K uniformly spaced points on [eps, 1], endpoints included.
std::vector<double> uniform_grid(double eps, int k);

enum class PairClass { MonotonePair, AntiMonotonePair, Neither };

std::string_view to_string(PairClass c);

struct PairClassification {
    PairClass cls = PairClass::Neither;
    double m = 0.0;  // inf of (log g)' / (log f)'
    double M = 0.0;  // sup of the same ratio
    bool closed_form = false;
    int grid = 0;
    // Condition (a) outcomes; both hold when g is constant.
    bool comonotone = false;
    bool antitone = false;

    bool is_monotone_pair() const;
    bool is_anti_monotone_pair() const;
};

/// Classifies (f, g) by the pairwise sign condition over all grid pairs and
/// by the inf/sup of the log-derivative ratio. Ratio bounds are exact when
/// `constant_log_ratio` applies. Throws DomainError when (log f)' vanishes on
/// the grid.
PairClassification classify_pair(const ScalarFunction& f, const ScalarFunction& g, int grid = kDefaultPairGrid,
                                 int ratio_grid = kDefaultRatioGrid);

/// Bounds of (log g)'/(log f)' and (log h)'/(log f)'.
struct RatioBounds {
    double m_g = 0.0, M_g = 0.0;
    double m_h = 0.0, M_h = 0.0;
    int grid = 0;
};

/// min over k in {m_g, M_g}, l in {m_h, M_h} of k / (1 + k + l)^2, floored at 0.
/// Throws PreconditionError on a vanishing denominator.
double beta_coefficient(const RatioBounds& bounds);

/// The pair-only constant min{m/(m+M)^2, M/(m+M)^2} quoted for the
/// h = 1 special case. Reported for comparison; the harness uses
/// `beta_coefficient` with m_h = M_h = 0.
double beta_pair_alternative(double m, double M);

/// (R^2 - 1)(R^{2k} - 1)(R^l + 1)^2 / (R^{1+k+l} - 1)^2, with the R -> 1
/// limit 16k / (1 + k + l)^2.
double corner_function(double R, double k, double l);

enum class Assumption { AssumptionI, AssumptionII, Neither };

std::string_view to_string(Assumption a);

/// Divided-difference conditions over all grid pairs x < y:
///   (I)  (f,g), (f,h) monotone pairs and 1 + dG/dF <= dH/dF
///   (II) (f,g) monotone, (f,h) anti-monotone and 1 + dG/dF + dH/dF >= 0
/// where F, G, H are the logarithms of f, g, h.
Assumption check_assumption(const FunctionTriple& t, const PairClassification& fg, const PairClassification& fh,
                            int grid = kDefaultPairGrid);

/// Everything the (f, g, h) bound needs about a triple, computed once.
struct TripleAnalysis {
    FunctionTriple triple;
    PairClassification fg;
    PairClassification fh;
    RatioBounds bounds;
    Assumption assumption = Assumption::Neither;
    double beta = 0.0;
    // min{m/(m+M)^2, M/(m+M)^2}; meaningful only when h is constant.
    double beta_pair_alternative = 0.0;
};

TripleAnalysis analyze_triple(const FunctionTriple& t, int grid = kDefaultPairGrid,
                              int ratio_grid = kDefaultRatioGrid);

/// (f(x)^2 - f(y)^2)(g(x)^2 - g(y)^2)(h(x) + h(y))^2 / (fgh(x) - fgh(y))^2.
/// Returns +inf when the denominator is negligible against the numerator
/// scale. Throws PreconditionError for x == y.
double L_eval(const FunctionTriple& t, double x, double y);

struct LScanResult {
    double min_value = 0.0;
    double argmin_x = 0.0;
    double argmin_y = 0.0;
    int grid = 0;
};

/// Minimum of L over all off-diagonal pairs of a K-point grid on [eps, 1].
LScanResult L_scan_min(const FunctionTriple& t, int grid);

/// Left-hand side of the scalar lemma inequality,
/// (e^{2ar}-1)(e^{2br}-1)(e^{cr}+1)^2 / (e^{(a+b+c)r}-1)^2, with the r = 0
/// limit 16ab/(a+b+c)^2.
double lemma41_lhs(double a, double b, double c, double r);
/// 16ab / (a+b+c)^2
double lemma41_rhs(double a, double b, double c);

/// True when (a, b, c >= 0, 0 < a+b <= c) or (a, b >= 0, c <= 0, a+b+c > 0).
bool lemma41_admissible(double a, double b, double c);

struct LemmaSample {
    double r = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;
};

struct LemmaReport {
    double a = 0.0, b = 0.0, c = 0.0;
    std::vector<LemmaSample> samples;
    double min_margin = 0.0;
    int negative_count = 0;
    // max |lhs(r) - rhs| over the probes r = +-limit_probe
    double limit_gap = 0.0;
    double limit_probe = 0.0;
};

/// Evaluates the lemma at every grid r (|r| below the exclusion band is
/// skipped) and probes the r -> 0 equality. Throws PreconditionError outside
/// both parameter regimes.
LemmaReport lemma41_check(double a, double b, double c, const std::vector<double>& r_grid);

/// `steps` evenly spaced r in [-rmax, rmax] with the small-|r| band removed.
std::vector<double> lemma_r_grid(double rmax, int steps);

}  // namespace skewlab
