#include "skewlab/matrix.hpp"

#include <cmath>
#include <sstream>

#include "skewlab/error.hpp"
#include "skewlab/tolerances.hpp"

namespace skewlab {

namespace {

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
    if (a.dim() != b.dim()) {
        std::ostringstream os;
        os << op << ": dimension mismatch (" << a.dim() << " vs " << b.dim() << ")";
        throw DimensionError(os.str());
    }
}

void require_finite(std::span<const Complex> entries) {
    for (const auto& z : entries) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw DomainError("matrix entry is not finite");
        }
    }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim) {}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<Complex> entries)
    : dim_(dim), entries_(std::move(entries)) {
    if (entries_.size() != dim_ * dim_) {
        throw DimensionError("entry count does not match dim * dim");
    }
    require_finite(entries_);
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : dim_(rows.size()) {
    entries_.reserve(dim_ * dim_);
    for (const auto& row : rows) {
        if (row.size() != dim_) {
            throw DimensionError("matrix literal is not square");
        }
        entries_.insert(entries_.end(), row.begin(), row.end());
    }
    require_finite(entries_);
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
    ComplexMatrix m(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::initializer_list<double> values) {
    return diagonal(std::span<const double>(values.begin(), values.size()));
}

ComplexMatrix adjoint(const ComplexMatrix& a) {
    const auto n = a.dim();
    ComplexMatrix r(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) r(i, j) = std::conj(a(j, i));
    return r;
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_dim(a, b, "matmul");
    const auto n = a.dim();
    ComplexMatrix r(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) continue;
            for (std::size_t j = 0; j < n; ++j) r(i, j) += aik * b(k, j);
        }
    }
    return r;
}

ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_dim(a, b, "add");
    ComplexMatrix r(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) r(i, j) = a(i, j) + b(i, j);
    return r;
}

ComplexMatrix subtract(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_dim(a, b, "subtract");
    ComplexMatrix r(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) r(i, j) = a(i, j) - b(i, j);
    return r;
}

ComplexMatrix scale(const ComplexMatrix& a, Complex s) {
    ComplexMatrix r(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) r(i, j) = s * a(i, j);
    return r;
}

Complex trace(const ComplexMatrix& a) {
    Complex t{};
    for (std::size_t i = 0; i < a.dim(); ++i) t += a(i, i);
    return t;
}

Complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_dim(a, b, "trace_product");
    Complex t{};
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) t += a(i, j) * b(j, i);
    return t;
}

double frobenius_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (const auto& z : a.entries()) s += std::norm(z);
    return std::sqrt(s);
}

ComplexMatrix commutator(const ComplexMatrix& x, const ComplexMatrix& y) {
    return subtract(matmul(x, y), matmul(y, x));
}

ComplexMatrix anticommutator(const ComplexMatrix& x, const ComplexMatrix& y) {
    return add(matmul(x, y), matmul(y, x));
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) { return matmul(a, b); }
ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) { return add(a, b); }
ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) { return subtract(a, b); }
ComplexMatrix operator*(Complex s, const ComplexMatrix& a) { return scale(a, s); }

HermitianMatrix::HermitianMatrix(const ComplexMatrix& a) : m_(a.dim()) {
    const auto n = a.dim();
    double asym = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            asym += std::norm(a(i, j) - std::conj(a(j, i)));
            m_(i, j) = (a(i, j) + std::conj(a(j, i))) / 2.0;
        }
    }
    asym = std::sqrt(asym);
    const double limit = default_tolerances().hermitian_asymmetry * std::max(1.0, frobenius_norm(a));
    if (asym > limit) {
        std::ostringstream os;
        os << "matrix is not Hermitian: ||A - A^H||_F = " << asym;
        throw DomainError(os.str());
    }
}

namespace pauli {

HermitianMatrix x() { return HermitianMatrix(ComplexMatrix{{0.0, 1.0}, {1.0, 0.0}}); }

HermitianMatrix y() {
    const Complex i{0.0, 1.0};
    return HermitianMatrix(ComplexMatrix{{0.0, -i}, {i, 0.0}});
}

HermitianMatrix z() { return HermitianMatrix(ComplexMatrix{{1.0, 0.0}, {0.0, -1.0}}); }

}  // namespace pauli

nlohmann::json to_json_value(const ComplexMatrix& a) {
    auto entries = nlohmann::json::array();
    for (const auto& z : a.entries()) entries.push_back({z.real(), z.imag()});
    return {{"dim", a.dim()}, {"entries", std::move(entries)}};
}

ComplexMatrix complex_matrix_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("entries")) {
        throw ConfigError("matrix JSON needs \"dim\" and \"entries\"");
    }
    const auto n = j.at("dim").get<std::size_t>();
    const auto& e = j.at("entries");
    if (!e.is_array() || e.size() != n * n) {
        throw ConfigError("matrix JSON: entries must hold dim*dim [re, im] pairs");
    }
    std::vector<Complex> values;
    values.reserve(n * n);
    for (const auto& pair : e) {
        if (!pair.is_array() || pair.size() != 2) {
            throw ConfigError("matrix JSON: each entry must be [re, im]");
        }
        values.emplace_back(pair[0].get<double>(), pair[1].get<double>());
    }
    return ComplexMatrix(n, std::move(values));
}

}  // namespace skewlab
