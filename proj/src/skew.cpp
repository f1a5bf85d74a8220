#include "skewlab/skew.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "skewlab/error.hpp"
#include "skewlab/tolerances.hpp"

namespace skewlab {

namespace {

void require_dims(const DensityMatrix& rho, const HermitianMatrix& h) {
    if (rho.dim() != h.dim()) {
        std::ostringstream os;
        os << "state has dimension " << rho.dim() << " but observable has dimension " << h.dim();
        throw DimensionError(os.str());
    }
}

// Tr[X H0 Y H0]
double sandwich(const ComplexMatrix& x, const ComplexMatrix& h0, const ComplexMatrix& y) {
    return trace_product(matmul(x, h0), matmul(y, h0)).real();
}

// Small negative I from cancellation is clamped; anything beyond the
// roundoff band means the inputs are outside the family's contract.
void finish(QuantityBundle& q, double I, double J) {
    const double tol = default_tolerances().clamp_negative * std::max({1.0, std::abs(J), q.V});
    if (I < -tol || J < -tol) {
        std::ostringstream os;
        os.precision(17);
        os << to_string(q.family) << ": negative value I = " << I << ", J = " << J
           << " beyond roundoff; the function triple is outside the monotone-pair contract";
        throw DomainError(os.str());
    }
    q.I = std::max(0.0, I);
    q.J = std::max(0.0, J);
    q.U = std::sqrt(q.I * q.J);
}

QuantityBundle bundle(Family f, std::optional<double> alpha = std::nullopt, std::optional<double> beta = std::nullopt) {
    QuantityBundle q;
    q.family = f;
    q.alpha = alpha;
    q.beta = beta;
    return q;
}

}  // namespace

std::string_view to_string(Family f) {
    switch (f) {
        case Family::WY: return "WY";
        case Family::WYD: return "WYD";
        case Family::GWYD: return "GWYD";
        case Family::GWYDTilde: return "GWYD_tilde";
        case Family::FGH: return "FGH";
    }
    return "?";
}

std::string_view to_string(EvaluationPath p) {
    return p == EvaluationPath::TraceFormula ? "TraceFormula" : "EigenPairSum";
}

nlohmann::json to_json_value(const QuantityBundle& q) {
    nlohmann::json j{{"family", to_string(q.family)}, {"I", q.I},      {"J", q.J},
                     {"U", q.U},                      {"V", q.V},      {"path", to_string(q.path)}};
    if (q.alpha) j["alpha"] = *q.alpha;
    if (q.beta) j["beta"] = *q.beta;
    if (q.triple) j["triple"] = *q.triple;
    return j;
}

double variance(const DensityMatrix& rho, const HermitianMatrix& h) {
    require_dims(rho, h);
    const auto h0 = center_observable(h, rho);
    const double v = trace_product(rho.matrix(), matmul(h0.matrix(), h0.matrix())).real();
    return std::max(0.0, v);
}

Complex covariance(const DensityMatrix& rho, const HermitianMatrix& a, const HermitianMatrix& b) {
    require_dims(rho, a);
    require_dims(rho, b);
    const auto a0 = center_observable(a, rho);
    const auto b0 = center_observable(b, rho);
    return trace_product(rho.matrix(), matmul(a0.matrix(), b0.matrix()));
}

Complex commutator_expectation(const ComplexMatrix& weight, const HermitianMatrix& a, const HermitianMatrix& b) {
    return trace_product(matmul(weight, a.matrix()), b.matrix()) - trace_product(matmul(weight, b.matrix()), a.matrix());
}

double wy_skew(const DensityMatrix& rho, const HermitianMatrix& h) {
    require_dims(rho, h);
    const auto& hm = h.matrix();
    const auto root = rho.power(0.5);
    const double v = trace_product(rho.matrix(), matmul(hm, hm)).real() - sandwich(root, hm, root);
    const double tol = default_tolerances().clamp_negative * std::max(1.0, frobenius_norm(hm) * frobenius_norm(hm));
    if (v < -tol) throw DomainError("wy_skew: negative value beyond roundoff");
    return std::max(0.0, v);
}

QuantityBundle wyd_family(const DensityMatrix& rho, const HermitianMatrix& h, double alpha) {
    require_dims(rho, h);
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw PreconditionError("wyd_family: alpha must lie in [0, 1]");
    QuantityBundle q = bundle(Family::WYD, alpha);
    const auto h0 = center_observable(h, rho);
    const auto& hm = h0.matrix();
    q.V = variance(rho, h);
    const double cross = sandwich(rho.power(alpha), hm, rho.power(1.0 - alpha));
    finish(q, q.V - cross, q.V + cross);
    return q;
}

double variance_form_U(const QuantityBundle& q) {
    const double rad = q.V * q.V - (q.V - q.I) * (q.V - q.I);
    return std::sqrt(std::max(0.0, rad));
}

QuantityBundle gwyd_family(const DensityMatrix& rho, const HermitianMatrix& h, double alpha, double beta) {
    require_dims(rho, h);
    if (!(alpha >= 0.0 && beta >= 0.0)) throw PreconditionError("gwyd_family: alpha and beta must be nonnegative");
    QuantityBundle q = bundle(Family::GWYD, alpha, beta);
    const auto h0 = center_observable(h, rho);
    const auto& hm = h0.matrix();
    q.V = variance(rho, h);
    const double t_ab = sandwich(rho.power(alpha + beta), hm, rho.power(1.0 - alpha - beta));
    const double t_a = sandwich(rho.power(alpha), hm, rho.power(1.0 - alpha));
    const double t_b = sandwich(rho.power(beta), hm, rho.power(1.0 - beta));
    finish(q, 0.5 * (q.V + t_ab - t_a - t_b), 0.5 * (q.V + t_ab + t_a + t_b));
    return q;
}

QuantityBundle gwyd_tilde_family(const DensityMatrix& rho, const HermitianMatrix& h, double alpha, double beta) {
    require_dims(rho, h);
    if (!(alpha >= 0.0 && beta >= 0.0)) {
        throw PreconditionError("gwyd_tilde_family: alpha and beta must be nonnegative");
    }
    QuantityBundle q = bundle(Family::GWYDTilde, alpha, beta);
    const auto h0 = center_observable(h, rho);
    const auto& hm = h0.matrix();
    q.V = variance(rho, h);
    const double diag = trace_product(rho.power(alpha + beta), matmul(hm, hm)).real();
    const double cross = sandwich(rho.power(alpha), hm, rho.power(beta));
    finish(q, diag - cross, diag + cross);
    return q;
}

QuantityBundle fgh_family(const DensityMatrix& rho, const HermitianMatrix& h, const FunctionTriple& t) {
    require_dims(rho, h);
    const auto& spec = rho.spectrum();
    if (!(spec.min_eigenvalue() > t.eps())) {
        std::ostringstream os;
        os << "fgh_family: smallest eigenvalue " << spec.min_eigenvalue() << " must exceed the domain floor "
           << t.eps();
        throw DomainError(os.str());
    }
    QuantityBundle q = bundle(Family::FGH);
    q.triple = t.describe();
    const auto h0 = center_observable(h, rho);
    const auto& hm = h0.matrix();
    q.V = variance(rho, h);

    const ComplexMatrix f = apply_scalar_function(spec, t.f()).matrix();
    const ComplexMatrix g = apply_scalar_function(spec, t.g()).matrix();
    const ComplexMatrix w = apply_scalar_function(spec, t.h()).matrix();
    const ComplexMatrix fg = matmul(f, g);

    const double t1 = trace_product(matmul(fg, w), matmul(hm, hm)).real();  // Tr[fgh H0^2]
    const double t2 = sandwich(fg, hm, w);                                    // Tr[fg H0 h H0]
    const double t3 = sandwich(f, hm, matmul(g, w));                          // Tr[f H0 gh H0]
    const double t4 = sandwich(g, hm, matmul(f, w));                          // Tr[g H0 fh H0]
    finish(q, 0.5 * (t1 + t2) - 0.5 * (t3 + t4), 0.5 * (t1 + t2) + 0.5 * (t3 + t4));
    return q;
}

MatrixElementTable matrix_elements(const DensityMatrix& rho, const HermitianMatrix& h) {
    require_dims(rho, h);
    const auto h0 = center_observable(h, rho);
    const auto& u = rho.spectrum().eigenvectors;
    return {HermitianMatrix(matmul(adjoint(u), matmul(h0.matrix(), u)))};
}

EigenPairSums fgh_eigensum(const SpectralDecomposition& d, const MatrixElementTable& a, const FunctionTriple& t) {
    const std::size_t n = d.dim();
    if (a.dim() != n) throw DimensionError("fgh_eigensum: table and decomposition differ in dimension");
    std::vector<double> f(n), g(n), w(n);
    for (std::size_t i = 0; i < n; ++i) {
        f[i] = t.f().eval(d.eigenvalues[i]);
        g[i] = t.g().eval(d.eigenvalues[i]);
        w[i] = t.h().eval(d.eigenvalues[i]);
    }
    EigenPairSums s;
    for (std::size_t i = 0; i < n; ++i) {
        s.J_diag += 2.0 * f[i] * g[i] * w[i] * std::norm(a(i, i));
        for (std::size_t j = i + 1; j < n; ++j) {
            const double aij = std::norm(a(i, j));
            s.I += 0.5 * (f[i] - f[j]) * (g[i] - g[j]) * (w[i] + w[j]) * aij;
            s.J_pairsum += 0.5 * (f[i] + f[j]) * (g[i] + g[j]) * (w[i] + w[j]) * aij;
        }
    }
    return s;
}

QuantityBundle fgh_family_eigensum(const DensityMatrix& rho, const HermitianMatrix& h, const FunctionTriple& t) {
    const auto sums = fgh_eigensum(rho.spectrum(), matrix_elements(rho, h), t);
    QuantityBundle q = bundle(Family::FGH);
    q.triple = t.describe();
    q.path = EvaluationPath::EigenPairSum;
    q.V = variance(rho, h);
    finish(q, sums.I, sums.J());
    return q;
}

double luo_U(const DensityMatrix& rho, const HermitianMatrix& h) {
    const double v = variance(rho, h);
    const double i = wy_skew(rho, h);
    const double rad = v * v - (v - i) * (v - i);
    return std::sqrt(std::max(0.0, rad));
}

}  // namespace skewlab
