#include <cmath>

#include "doctest.h"
#include "skewlab/error.hpp"
#include "skewlab/sampling.hpp"
#include "skewlab/skew.hpp"

using namespace skewlab;

namespace {

// Tr[rho^a sx rho^b sx] for rho = diag(p, q)
double qubit_cross(double p, double q, double a, double b) { return std::pow(p, a) * std::pow(q, b) + std::pow(q, a) * std::pow(p, b); }

bool rel_close(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)}); }

struct Instance {
    DensityMatrix rho;
    HermitianMatrix h;
};

Instance random_instance(std::size_t n, std::uint64_t seed) {
    RngStream rng(seed, {n});
    auto rho = sample_density(n, rng, 1e-2);
    auto h = sample_observable(n, rng);
    return {std::move(rho), std::move(h)};
}

}  // namespace

TEST_SUITE("skew-information") {

TEST_CASE("variance") {
    const auto mixed = DensityMatrix::diagonal({0.5, 0.5});
    CHECK(variance(mixed, pauli::z()) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(variance(mixed, HermitianMatrix(Complex(3.0) * ComplexMatrix::identity(2))) == 0.0);
    CHECK(variance(DensityMatrix::diagonal({0.75, 0.25}), pauli::z()) == doctest::Approx(0.75).epsilon(1e-15));
    CHECK_THROWS_AS(variance(mixed, HermitianMatrix(ComplexMatrix::identity(3))), DimensionError);
}

TEST_CASE("covariance") {
    const auto [rho, a] = random_instance(4, 1);
    const auto cov = covariance(rho, a, a);
    CHECK(std::abs(cov.imag()) < 1e-12);
    CHECK(std::abs(cov.real() - variance(rho, a)) < 1e-12);
    CHECK(std::abs(covariance(rho, a, HermitianMatrix(ComplexMatrix::identity(4)))) < 1e-12);

    const double p = 0.8, q = 0.2;
    const auto c = covariance(DensityMatrix::diagonal({p, q}), pauli::x(), pauli::y());
    CHECK(std::abs(c.real()) < 1e-15);
    CHECK(c.imag() == doctest::Approx(p - q).epsilon(1e-15));
}

TEST_CASE("wy_skew") {
    const auto rho = DensityMatrix::diagonal({0.75, 0.25});
    CHECK(wy_skew(rho, pauli::z()) == doctest::Approx(0.0));
    CHECK(wy_skew(rho, pauli::x()) == doctest::Approx(1.0 - std::sqrt(3.0) / 2.0).epsilon(1e-14));
    CHECK(std::abs(wy_skew(DensityMatrix::diagonal({0.5, 0.5}), pauli::y())) < 1e-15);
    for (std::size_t n : {2u, 3u, 5u}) {
        const auto [r, h] = random_instance(n, 2);
        const double i = wy_skew(r, h);
        CHECK(i >= 0.0);
        CHECK(i <= variance(r, h) + 1e-12);
    }
}

TEST_CASE("wyd family") {
    const double p = 0.75, q = 0.25;
    const auto rho = DensityMatrix::diagonal({p, q});
    const auto b = wyd_family(rho, pauli::x(), 0.5);
    CHECK(b.I == doctest::Approx(1.0 - 2.0 * std::sqrt(p * q)).epsilon(1e-14));
    CHECK(b.J == doctest::Approx(1.0 + 2.0 * std::sqrt(p * q)).epsilon(1e-14));
    CHECK(b.U == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(b.I == doctest::Approx(0.1339746).epsilon(1e-7));
    CHECK(b.J == doctest::Approx(1.8660254).epsilon(1e-7));

    for (double a : {0.0, 0.13, 0.5, 0.77, 1.0}) {
        const auto w = wyd_family(rho, pauli::x(), a);
        CHECK(std::abs(w.I - (1.0 - qubit_cross(p, q, a, 1.0 - a))) < 1e-14);
    }
    CHECK_THROWS_AS(wyd_family(rho, pauli::x(), 1.2), PreconditionError);

    for (std::size_t n : {2u, 4u, 8u}) {
        const auto [r, h] = random_instance(n, 3);
        CHECK(std::abs(wyd_family(r, h, 1.0).I) < 1e-12);
        const auto half = wyd_family(r, h, 0.5);
        CHECK(rel_close(half.I, wy_skew(r, h), 1e-12));
        for (double a : {0.1, 0.35, 0.9}) {
            const auto w = wyd_family(r, h, a);
            CHECK(rel_close(w.I + w.J, 2.0 * w.V, 1e-10));
            CHECK(rel_close(variance_form_U(w), w.U, 1e-9));
            CHECK(rel_close(w.U * w.U, w.I * w.J, 1e-9));
        }
    }
}

TEST_CASE("centering changes J but not I") {
    const auto [rho, h] = random_instance(3, 4);
    const double a = 0.3;
    const auto w = wyd_family(rho, h, a);
    const auto& hm = h.matrix();
    const double v_raw = trace_product(rho.matrix(), hm * hm).real();
    const double cross_raw = trace_product(rho.power(a).matrix() * hm, rho.power(1 - a).matrix() * hm).real();
    CHECK(rel_close(v_raw - cross_raw, w.I, 1e-10));
    CHECK(std::abs((v_raw + cross_raw) - w.J) > 1e-3);
}

TEST_CASE("gwyd family") {
    const double p = 0.7, q = 0.3;
    const auto rho = DensityMatrix::diagonal({p, q});
    for (auto [a, b] : {std::pair{0.1, 0.2}, std::pair{0.25, 0.25}, std::pair{0.9, 0.6}, std::pair{1.5, 0.4}}) {
        const double s = a + b;
        const double cab = qubit_cross(p, q, s, 1 - s), ca = qubit_cross(p, q, a, 1 - a), cb = qubit_cross(p, q, b, 1 - b);
        const auto g = gwyd_family(rho, pauli::x(), a, b);
        CHECK(std::abs(g.I - 0.5 * (1 + cab - ca - cb)) < 1e-14);
        CHECK(std::abs(g.J - 0.5 * (1 + cab + ca + cb)) < 1e-14);
    }
    for (std::size_t n : {2u, 5u}) {
        const auto [r, h] = random_instance(n, 5);
        const auto g = gwyd_family(r, h, 0.3, 0.7);
        const auto w = wyd_family(r, h, 0.3);
        CHECK(rel_close(g.I, w.I, 1e-10));
        CHECK(rel_close(g.J, w.J, 1e-10));
        CHECK(rel_close(gwyd_family(r, h, 0.5, 0.5).I, wy_skew(r, h), 1e-10));
    }
    CHECK_THROWS_AS(gwyd_family(rho, pauli::x(), -0.1, 0.2), PreconditionError);
}

TEST_CASE("tilde family") {
    const double p = 0.6, q = 0.4;
    const auto rho = DensityMatrix::diagonal({p, q});
    for (auto [a, b] : {std::pair{0.2, 0.5}, std::pair{1.2, 0.7}}) {
        const double diag = std::pow(p, a + b) + std::pow(q, a + b);
        const auto t = gwyd_tilde_family(rho, pauli::x(), a, b);
        CHECK(std::abs(t.I - (diag - qubit_cross(p, q, a, b))) < 1e-14);
        CHECK(std::abs(t.J - (diag + qubit_cross(p, q, a, b))) < 1e-14);
    }
    CHECK(gwyd_tilde_family(rho, pauli::z(), 0.3, 0.4).I == doctest::Approx(0.0));
    const auto [r, h] = random_instance(4, 6);
    const auto t = gwyd_tilde_family(r, h, 0.35, 0.65);
    CHECK(rel_close(t.I, wyd_family(r, h, 0.35).I, 1e-10));
    const auto f = fgh_family(r, h, FunctionTriple(ScalarFunction::power(0.4), ScalarFunction::power(0.9), ScalarFunction::constant(1.0)));
    CHECK(rel_close(f.I, gwyd_tilde_family(r, h, 0.4, 0.9).I, 1e-10));
}

TEST_CASE("fgh family reductions") {
    for (std::size_t n : {2u, 3u, 6u}) {
        const auto [r, h] = random_instance(n, 7);
        const FunctionTriple wy(ScalarFunction::power(0.5), ScalarFunction::power(0.5), ScalarFunction::constant(1.0));
        CHECK(rel_close(fgh_family(r, h, wy).I, wy_skew(r, h), 1e-10));
        const auto f = fgh_family(r, h, FunctionTriple::powers(0.3, 0.45, 0.25));
        const auto g = gwyd_family(r, h, 0.3, 0.45);
        CHECK(rel_close(f.I, g.I, 1e-10));
        CHECK(rel_close(f.J, g.J, 1e-10));
    }
    const auto rho = DensityMatrix::diagonal({0.75, 0.25});
    const auto t = FunctionTriple::powers(0.25, 0.25, 0.5);
    const auto trace_path = fgh_family(rho, pauli::x(), t);
    const auto sums = fgh_eigensum(rho.spectrum(), matrix_elements(rho, pauli::x()), t);
    CHECK(rel_close(trace_path.I, sums.I, 1e-10));
    CHECK(rel_close(trace_path.I, gwyd_family(rho, pauli::x(), 0.25, 0.25).I, 1e-10));
}

TEST_CASE("fgh domain floor") {
    const auto rho = DensityMatrix::diagonal({0.9999, 1e-4});
    const auto t = FunctionTriple(ScalarFunction::power(1.0, 1e-3), ScalarFunction::power(1.0, 1e-3),
                                  ScalarFunction::power(-0.5, 1e-3), 1e-3);
    CHECK_THROWS_AS(fgh_family(rho, pauli::x(), t), DomainError);
}

TEST_CASE("eigen-pair sums") {
    for (std::size_t n : {2u, 4u, 8u}) {
        const auto [r, h] = random_instance(n, 8);
        const FunctionTriple t(ScalarFunction::power(1.0), ScalarFunction::scaled_sum({{1, 1}, {1, 2}}),
                               ScalarFunction::power(-0.5));
        const auto tr = fgh_family(r, h, t);
        const auto s = fgh_eigensum(r.spectrum(), matrix_elements(r, h), t);
        CHECK(rel_close(tr.I, s.I, 1e-10));
        CHECK(rel_close(tr.J, s.J(), 1e-10));
        CHECK(s.J_pairsum <= tr.J * (1 + 1e-12));
        const auto e = fgh_family_eigensum(r, h, t);
        CHECK(e.path == EvaluationPath::EigenPairSum);
        CHECK(rel_close(e.U, tr.U, 1e-9));
    }
    // observable diagonal in the eigenbasis of rho
    const auto [r, h] = random_instance(4, 9);
    const auto& u = r.spectrum().eigenvectors;
    const auto diag_h = HermitianMatrix(u * ComplexMatrix::diagonal({0.3, -1.0, 2.0, 0.5}) * adjoint(u));
    const auto s = fgh_eigensum(r.spectrum(), matrix_elements(r, diag_h), FunctionTriple::powers(0.2, 0.3, 0.8));
    CHECK(std::abs(s.I) < 1e-12);
}

TEST_CASE("matrix element table is hermitian") {
    const auto [r, h] = random_instance(5, 10);
    const auto a = matrix_elements(r, h);
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j) CHECK(std::abs(a(i, j) - std::conj(a(j, i))) < 1e-12);
}

TEST_CASE("luo U") {
    const auto rho = DensityMatrix::diagonal({0.75, 0.25});
    CHECK(luo_U(rho, pauli::x()) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(luo_U(rho, pauli::z()) == doctest::Approx(0.0));
    for (std::size_t n : {2u, 3u, 8u}) {
        const auto [r, h] = random_instance(n, 11);
        const double i = wy_skew(r, h), u = luo_U(r, h), v = variance(r, h);
        CHECK(i <= u + 1e-12);
        CHECK(u <= v + 1e-12);
    }
    // nearly pure state: U approaches V
    for (double d : {1e-2, 1e-4, 1e-6}) {
        const auto near_pure = DensityMatrix::diagonal({1.0 - d, d});
        const double gap = variance(near_pure, pauli::x()) - luo_U(near_pure, pauli::x());
        CHECK(gap >= 0.0);
        CHECK(gap <= 4.0 * d);
    }
}

TEST_CASE("unitary covariance of every family") {
    RngStream rng(13);
    for (std::size_t n : {2u, 4u}) {
        const auto rho = sample_density(n, rng, 1e-2);
        const auto h = sample_observable(n, rng);
        const auto v = sample_unitary(n, rng);
        const auto rho2 = DensityMatrix(HermitianMatrix(v * rho.matrix() * adjoint(v)));
        const auto h2 = HermitianMatrix(v * h.matrix() * adjoint(v));
        CHECK(rel_close(wy_skew(rho, h), wy_skew(rho2, h2), 1e-9));
        CHECK(rel_close(wyd_family(rho, h, 0.3).U, wyd_family(rho2, h2, 0.3).U, 1e-9));
        CHECK(rel_close(gwyd_family(rho, h, 0.8, 0.6).U, gwyd_family(rho2, h2, 0.8, 0.6).U, 1e-9));
        CHECK(rel_close(gwyd_tilde_family(rho, h, 0.2, 1.1).U, gwyd_tilde_family(rho2, h2, 0.2, 1.1).U, 1e-9));
        const auto t = FunctionTriple::powers(0.6, 0.7, -0.4);
        CHECK(rel_close(fgh_family(rho, h, t).U, fgh_family(rho2, h2, t).U, 1e-9));
    }
}

TEST_CASE("bundle json") {
    const auto b = wyd_family(DensityMatrix::diagonal({0.75, 0.25}), pauli::x(), 0.5);
    const auto j = to_json_value(b);
    CHECK(j.at("family") == "WYD");
    CHECK(j.at("path") == "TraceFormula");
    CHECK(j.at("U").get<double>() == b.U);
    CHECK(j.at("alpha").get<double>() == 0.5);
}

}  // TEST_SUITE
