#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "json.hpp"

namespace skewlab {

using Complex = std::complex<double>;

/// Dense square complex matrix, row-major.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(std::size_t dim);
    ComplexMatrix(std::size_t dim, std::vector<Complex> entries);
    /// Row-wise literal, e.g. {{1, 0}, {0, 1}}. Rows must all have the same length.
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static ComplexMatrix identity(std::size_t dim);
    static ComplexMatrix zero(std::size_t dim) { return ComplexMatrix(dim); }
    static ComplexMatrix diagonal(std::span<const double> values);
    static ComplexMatrix diagonal(std::initializer_list<double> values);

    std::size_t dim() const noexcept { return dim_; }
    std::span<const Complex> entries() const noexcept { return entries_; }

    Complex operator()(std::size_t i, std::size_t j) const { return entries_[i * dim_ + j]; }
    Complex& operator()(std::size_t i, std::size_t j) { return entries_[i * dim_ + j]; }

    bool operator==(const ComplexMatrix&) const = default;

private:
    std::size_t dim_ = 0;
    std::vector<Complex> entries_;
};

ComplexMatrix adjoint(const ComplexMatrix& a);
ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix subtract(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix scale(const ComplexMatrix& a, Complex s);
Complex trace(const ComplexMatrix& a);
/// Tr[A B] without forming the product.
Complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b);
double frobenius_norm(const ComplexMatrix& a);
/// [X, Y] = XY - YX
ComplexMatrix commutator(const ComplexMatrix& x, const ComplexMatrix& y);
/// {X, Y} = XY + YX
ComplexMatrix anticommutator(const ComplexMatrix& x, const ComplexMatrix& y);

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex s, const ComplexMatrix& a);

/// Self-adjoint matrix. Construction symmetrizes (A + A^H) / 2 and rejects
/// inputs whose asymmetry exceeds Tolerances::hermitian_asymmetry.
class HermitianMatrix {
public:
    HermitianMatrix() = default;
    explicit HermitianMatrix(const ComplexMatrix& a);

    std::size_t dim() const noexcept { return m_.dim(); }
    const ComplexMatrix& matrix() const noexcept { return m_; }
    Complex operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

    operator const ComplexMatrix&() const noexcept { return m_; }

private:
    ComplexMatrix m_;
};

/// Pauli matrices, handy for qubit examples.
namespace pauli {
HermitianMatrix x();
HermitianMatrix y();
HermitianMatrix z();
}  // namespace pauli

// JSON form: {"dim": n, "entries": [[re, im], ...]} row-major.
nlohmann::json to_json_value(const ComplexMatrix& a);
ComplexMatrix complex_matrix_from_json(const nlohmann::json& j);

}  // namespace skewlab
