#include "skewlab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "skewlab/error.hpp"
#include "skewlab/tolerances.hpp"

namespace skewlab {

namespace {

double offdiag_mass(const ComplexMatrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

// Zeroes a(p, q) with J = [[c, s], [-s e^{-i phi}, c e^{-i phi}]] acting on
// the (p, q) plane, where a(p, q) = |a(p, q)| e^{i phi}. The phase factor turns
// the 2x2 block real symmetric; the (c, s) pair is the classical real rotation.
void rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p, std::size_t q) {
    const Complex apq = a(p, q);
    const double mag = std::abs(apq);
    if (mag == 0.0) return;

    const Complex phase = std::conj(apq) / mag;  // e^{-i phi}
    const double app = a(p, p).real();
    const double aqq = a(q, q).real();
    const double theta = (aqq - app) / (2.0 * mag);
    double t;
    if (std::abs(theta) > 1e150) {
        t = 0.5 / theta;
    } else {
        t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::hypot(theta, 1.0));
    }
    const double c = 1.0 / std::hypot(t, 1.0);
    const double s = t * c;

    const Complex jpp = c;
    const Complex jpq = s;
    const Complex jqp = -s * phase;
    const Complex jqq = c * phase;

    const std::size_t n = a.dim();
    // A <- A J
    for (std::size_t k = 0; k < n; ++k) {
        const Complex akp = a(k, p);
        const Complex akq = a(k, q);
        a(k, p) = akp * jpp + akq * jqp;
        a(k, q) = akp * jpq + akq * jqq;
    }
    // A <- J^H A
    for (std::size_t k = 0; k < n; ++k) {
        const Complex apk = a(p, k);
        const Complex aqk = a(q, k);
        a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
        a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
    }
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    a(p, p) = a(p, p).real();
    a(q, q) = a(q, q).real();

    for (std::size_t k = 0; k < n; ++k) {
        const Complex vkp = v(k, p);
        const Complex vkq = v(k, q);
        v(k, p) = vkp * jpp + vkq * jqp;
        v(k, q) = vkp * jpq + vkq * jqq;
    }
}

}  // namespace

HermitianMatrix SpectralDecomposition::reassemble(std::span<const double> values) const {
    const std::size_t n = dim();
    if (values.size() != n) throw DimensionError("reassemble: one value per eigenvalue required");
    const ComplexMatrix& u = eigenvectors;
    ComplexMatrix r(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            Complex s{};
            for (std::size_t k = 0; k < n; ++k) s += u(i, k) * values[k] * std::conj(u(j, k));
            r(i, j) = s;
        }
    }
    return HermitianMatrix(r);
}

SpectralDecomposition hermitian_eigen(const HermitianMatrix& input, JacobiStats* stats) {
    const auto& tol = default_tolerances();
    const std::size_t n = input.dim();
    ComplexMatrix a = input.matrix();
    ComplexMatrix v = ComplexMatrix::identity(n);

    const double norm = frobenius_norm(a);
    const double target = tol.eigen_offdiag * norm;
    double off = offdiag_mass(a);
    int sweep = 0;
    while (off > target) {
        if (sweep == tol.eigen_max_sweeps) {
            std::ostringstream os;
            os << "Jacobi eigensolver did not converge after " << sweep
               << " sweeps (off-diagonal mass " << off << ", target " << target << ")";
            throw ConvergenceError(os.str(), off);
        }
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) rotate(a, v, p, q);
        ++sweep;
        off = offdiag_mass(a);
    }
    if (stats) *stats = {sweep, off};

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i).real() > a(j, j).real(); });

    SpectralDecomposition d;
    d.eigenvalues.resize(n);
    d.eigenvectors = ComplexMatrix(n);
    for (std::size_t k = 0; k < n; ++k) {
        d.eigenvalues[k] = a(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) d.eigenvectors(i, k) = v(i, order[k]);
    }
    d.source = input;
    return d;
}

HermitianMatrix apply_scalar_function(const SpectralDecomposition& d, const ScalarFunction& f) {
    std::vector<double> values(d.dim());
    for (std::size_t k = 0; k < d.dim(); ++k) {
        if (d.eigenvalues[k] < f.eps()) {
            std::ostringstream os;
            os << "eigenvalue " << d.eigenvalues[k] << " lies below the domain floor " << f.eps()
               << " of " << f.describe();
            throw DomainError(os.str());
        }
        values[k] = f.eval(d.eigenvalues[k]);
    }
    return d.reassemble(values);
}

double reconstruction_residual(const SpectralDecomposition& d) {
    const HermitianMatrix back = d.reassemble(d.eigenvalues);
    return frobenius_norm(subtract(d.source.matrix(), back.matrix()));
}

double orthonormality_residual(const ComplexMatrix& u) {
    return frobenius_norm(subtract(matmul(adjoint(u), u), ComplexMatrix::identity(u.dim())));
}

DensityMatrix::DensityMatrix(const HermitianMatrix& rho) : rho_(rho), spectrum_(hermitian_eigen(rho)) {
    const auto& tol = default_tolerances();
    const double tr = trace(rho_.matrix()).real();
    if (std::abs(tr - 1.0) > tol.density_trace) {
        std::ostringstream os;
        os.precision(17);
        os << "density matrix trace " << tr << " differs from 1";
        throw DomainError(os.str());
    }
    if (spectrum_.min_eigenvalue() < tol.positivity_floor) {
        std::ostringstream os;
        os << "density matrix smallest eigenvalue " << spectrum_.min_eigenvalue()
           << " is below the positivity floor " << tol.positivity_floor;
        throw DomainError(os.str());
    }
}

DensityMatrix DensityMatrix::diagonal(std::initializer_list<double> probabilities) {
    return DensityMatrix(ComplexMatrix::diagonal(probabilities));
}

HermitianMatrix DensityMatrix::power(double p) const {
    return apply_scalar_function(spectrum_, ScalarFunction::power(p, default_tolerances().positivity_floor));
}

double expectation(const DensityMatrix& rho, const HermitianMatrix& h) {
    return trace_product(rho.matrix(), h.matrix()).real();
}

HermitianMatrix center_observable(const HermitianMatrix& h, const DensityMatrix& rho) {
    if (h.dim() != rho.dim()) throw DimensionError("center_observable: dimension mismatch");
    const double mean = expectation(rho, h);
    ComplexMatrix c = h.matrix();
    for (std::size_t i = 0; i < c.dim(); ++i) c(i, i) -= mean;
    return HermitianMatrix(c);
}

}  // namespace skewlab
