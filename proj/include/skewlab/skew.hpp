#pragma once

#include <optional>
#include <string>

#include "skewlab/matrix.hpp"
#include "skewlab/scalar_function.hpp"
#include "skewlab/spectral.hpp"

namespace skewlab {

enum class Family { WY, WYD, GWYD, GWYDTilde, FGH };
enum class EvaluationPath { TraceFormula, EigenPairSum };

std::string_view to_string(Family f);
std::string_view to_string(EvaluationPath p);

/// I, J, U = sqrt(I J) and the variance V for one (rho, H, family) evaluation.
struct QuantityBundle {
    Family family = Family::WY;
    std::optional<double> alpha;
    std::optional<double> beta;
    std::optional<std::string> triple;
    double I = 0.0;
    double J = 0.0;
    double U = 0.0;
    double V = 0.0;
    EvaluationPath path = EvaluationPath::TraceFormula;
};

nlohmann::json to_json_value(const QuantityBundle& q);

/// V_rho(H) = Tr[rho H_0^2]
double variance(const DensityMatrix& rho, const HermitianMatrix& h);

/// Cov_rho(A, B) = Tr[rho (A - <A>)(B - <B>)]
Complex covariance(const DensityMatrix& rho, const HermitianMatrix& a, const HermitianMatrix& b);

/// Tr[rho [A, B]], purely imaginary for Hermitian A, B.
Complex commutator_expectation(const ComplexMatrix& weight, const HermitianMatrix& a, const HermitianMatrix& b);

/// I_rho(H) = Tr[rho H^2] - Tr[rho^{1/2} H rho^{1/2} H]
double wy_skew(const DensityMatrix& rho, const HermitianMatrix& h);

/// I = Tr[rho H0^2] - Tr[rho^a H0 rho^{1-a} H0], J with a plus sign.
QuantityBundle wyd_family(const DensityMatrix& rho, const HermitianMatrix& h, double alpha);

/// sqrt(V^2 - (V - I)^2) for the bundle's V and I; equals U whenever I + J = 2V.
double variance_form_U(const QuantityBundle& q);

/// Two-parameter family with the rho^{1 - a - b} weight; a + b > 1 allowed.
QuantityBundle gwyd_family(const DensityMatrix& rho, const HermitianMatrix& h, double alpha, double beta);

/// I = Tr[rho^{a+b} H0^2] - Tr[rho^a H0 rho^b H0], J with a plus sign.
QuantityBundle gwyd_tilde_family(const DensityMatrix& rho, const HermitianMatrix& h, double alpha, double beta);

/// I = 1/2 Tr[(i[f(rho), H0])(i[g(rho), H0]) h(rho)],
/// J = 1/2 Tr[{f(rho), H0}{g(rho), H0} h(rho)], both via their four-term
/// trace expansions. Throws DomainError when rho has an eigenvalue at or
/// below the triple's floor, and when I comes out clearly negative.
QuantityBundle fgh_family(const DensityMatrix& rho, const HermitianMatrix& h, const FunctionTriple& t);

/// a_ij = <phi_i| H_0 |phi_j> in the eigenbasis of rho.
struct MatrixElementTable {
    HermitianMatrix elements;

    Complex operator()(std::size_t i, std::size_t j) const { return elements(i, j); }
    std::size_t dim() const noexcept { return elements.dim(); }
};

MatrixElementTable matrix_elements(const DensityMatrix& rho, const HermitianMatrix& h);

struct EigenPairSums {
    double I = 0.0;          // 1/2 sum_{i<j} (f_i - f_j)(g_i - g_j)(h_i + h_j)|a_ij|^2
    double J_pairsum = 0.0;  // 1/2 sum_{i<j} (f_i + f_j)(g_i + g_j)(h_i + h_j)|a_ij|^2
    double J_diag = 0.0;     // sum_i 2 f_i g_i h_i |a_ii|^2

    double J() const noexcept { return J_pairsum + J_diag; }
};

/// Spectral-sum evaluation of the (f, g, h) quantities.
EigenPairSums fgh_eigensum(const SpectralDecomposition& d, const MatrixElementTable& a, const FunctionTriple& t);

/// Convenience: the eigen-pair-sum route packaged as a bundle.
QuantityBundle fgh_family_eigensum(const DensityMatrix& rho, const HermitianMatrix& h, const FunctionTriple& t);

/// U_rho(H) = sqrt(V^2 - (V - I_rho)^2)
double luo_U(const DensityMatrix& rho, const HermitianMatrix& h);

}  // namespace skewlab
