#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

#include "skewlab/matrix.hpp"
#include "skewlab/spectral.hpp"

namespace skewlab {

/// Mixes a base seed with a list of keys (splitmix64 chaining). Streams keyed
/// by (seed, dim, sample index) are independent of evaluation order.
std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> keys);

class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : engine_(seed) {}
    RngStream(std::uint64_t seed, std::initializer_list<std::uint64_t> keys) : engine_(derive_seed(seed, keys)) {}

    double normal() { return normal_(engine_); }
    double uniform() { return uniform_(engine_); }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    std::mt19937_64& engine() noexcept { return engine_; }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

/// Complex Ginibre matrix: iid entries (N(0,1) + i N(0,1)) / sqrt(2).
ComplexMatrix sample_ginibre(std::size_t n, RngStream& rng);

/// rho = (1 - delta) G G^H / Tr[G G^H] + delta I / n, so lambda_min >= delta / n.
DensityMatrix sample_density(std::size_t n, RngStream& rng, double delta);

/// GUE-style observable scale * (G + G^H) / 2.
HermitianMatrix sample_observable(std::size_t n, RngStream& rng, double scale = 1.0);

/// Haar unitary from a Ginibre matrix: Gram-Schmidt (applied twice) with
/// the QR phase convention diag(R) > 0.
ComplexMatrix sample_unitary(std::size_t n, RngStream& rng);

}  // namespace skewlab
