#include "skewlab/sampling.hpp"

#include <cmath>

#include "skewlab/error.hpp"

namespace skewlab {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> keys) {
    std::uint64_t s = splitmix64(seed);
    for (auto k : keys) s = splitmix64(s ^ splitmix64(k + 0x632BE59BD9B4E019ULL));
    return s;
}

ComplexMatrix sample_ginibre(std::size_t n, RngStream& rng) {
    ComplexMatrix g(n);
    const double s = 1.0 / std::sqrt(2.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double re = rng.normal();
            const double im = rng.normal();
            g(i, j) = Complex(re * s, im * s);
        }
    return g;
}

DensityMatrix sample_density(std::size_t n, RngStream& rng, double delta) {
    if (n < 2) throw PreconditionError("sample_density: n must be at least 2");
    if (!(delta > 0.0 && delta < 1.0)) throw PreconditionError("sample_density: delta must lie in (0, 1)");
    const auto g = sample_ginibre(n, rng);
    const auto w = matmul(g, adjoint(g));
    const double tr = trace(w).real();
    ComplexMatrix rho = scale(w, (1.0 - delta) / tr);
    for (std::size_t i = 0; i < n; ++i) rho(i, i) += delta / static_cast<double>(n);
    return DensityMatrix(HermitianMatrix(rho));
}

HermitianMatrix sample_observable(std::size_t n, RngStream& rng, double scale_factor) {
    const auto g = sample_ginibre(n, rng);
    return HermitianMatrix(scale(add(g, adjoint(g)), 0.5 * scale_factor));
}

ComplexMatrix sample_unitary(std::size_t n, RngStream& rng) {
    ComplexMatrix q = sample_ginibre(n, rng);
    for (std::size_t k = 0; k < n; ++k) {
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t j = 0; j < k; ++j) {
                Complex dot{};
                for (std::size_t i = 0; i < n; ++i) dot += std::conj(q(i, j)) * q(i, k);
                for (std::size_t i = 0; i < n; ++i) q(i, k) -= dot * q(i, j);
            }
        }
        double norm = 0.0;
        for (std::size_t i = 0; i < n; ++i) norm += std::norm(q(i, k));
        norm = std::sqrt(norm);
        if (norm == 0.0) throw DomainError("sample_unitary: rank-deficient Ginibre draw");
        for (std::size_t i = 0; i < n; ++i) q(i, k) /= norm;
    }
    return q;
}

}  // namespace skewlab
