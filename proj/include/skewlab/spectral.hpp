#pragma once

#include <vector>

#include "skewlab/matrix.hpp"
#include "skewlab/scalar_function.hpp"

namespace skewlab {

/// Eigenvalues in descending order with the matching orthonormal
/// eigenvectors stored as the columns of `eigenvectors`.
struct SpectralDecomposition {
    std::vector<double> eigenvalues;
    ComplexMatrix eigenvectors;
    HermitianMatrix source;

    std::size_t dim() const noexcept { return eigenvalues.size(); }
    double min_eigenvalue() const { return eigenvalues.back(); }
    double max_eigenvalue() const { return eigenvalues.front(); }

    /// U diag(values) U^H for values given per eigenvalue, in the same order.
    HermitianMatrix reassemble(std::span<const double> values) const;
};

struct JacobiStats {
    int sweeps = 0;
    double offdiag_residual = 0.0;
};

/// Cyclic complex Jacobi. Throws ConvergenceError after
/// Tolerances::eigen_max_sweeps sweeps.
SpectralDecomposition hermitian_eigen(const HermitianMatrix& a, JacobiStats* stats = nullptr);

/// sum_i f(lambda_i) |phi_i><phi_i|. Throws DomainError if some eigenvalue
/// lies below the function's floor.
HermitianMatrix apply_scalar_function(const SpectralDecomposition& d, const ScalarFunction& f);

/// ||A - U diag(lambda) U^H||_F
double reconstruction_residual(const SpectralDecomposition& d);
/// ||U^H U - I||_F
double orthonormality_residual(const ComplexMatrix& u);

/// Strictly positive unit-trace Hermitian matrix, with its spectral
/// decomposition.
class DensityMatrix {
public:
    explicit DensityMatrix(const HermitianMatrix& rho);
    explicit DensityMatrix(const ComplexMatrix& rho) : DensityMatrix(HermitianMatrix(rho)) {}

    static DensityMatrix diagonal(std::initializer_list<double> probabilities);

    std::size_t dim() const noexcept { return rho_.dim(); }
    const HermitianMatrix& hermitian() const noexcept { return rho_; }
    const ComplexMatrix& matrix() const noexcept { return rho_.matrix(); }
    const SpectralDecomposition& spectrum() const noexcept { return spectrum_; }

    /// rho^p computed spectrally; negative p allowed.
    HermitianMatrix power(double p) const;

    operator const ComplexMatrix&() const noexcept { return rho_.matrix(); }

private:
    HermitianMatrix rho_;
    SpectralDecomposition spectrum_;
};

/// H_0 = H - Tr[rho H] I
HermitianMatrix center_observable(const HermitianMatrix& h, const DensityMatrix& rho);

/// Tr[rho H], real for Hermitian inputs.
double expectation(const DensityMatrix& rho, const HermitianMatrix& h);

}  // namespace skewlab
