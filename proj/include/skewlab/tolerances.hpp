#pragma once

namespace skewlab {

// Every numerical threshold used by invariant checks lives here.
struct Tolerances {
    // HermitianMatrix construction rejects ||A - A^H||_F above this (relative to max(1, ||A||_F)).
    double hermitian_asymmetry = 1e-8;
    // |Tr(rho) - 1| for a DensityMatrix.
    double density_trace = 1e-12;
    // Smallest admissible eigenvalue of a DensityMatrix.
    double positivity_floor = 1e-8;

    // Jacobi stops once the off-diagonal Frobenius mass is below this times ||A||_F.
    double eigen_offdiag = 1e-14;
    int eigen_max_sweeps = 100;
    // Reconstruction and orthonormality residuals, per unit of dimension.
    double eigen_residual = 1e-10;

    // Default domain floor for scalar functions on [eps, 1].
    double function_floor = 1e-6;
    // Sign tolerance for the pairwise condition (f(x)-f(y))(g(x)-g(y)) >= 0.
    double pair_sign = 1e-12;
    // Relative tolerance for divided-difference assumption checks.
    double assumption = 1e-12;
    // Denominators of beta corners treated as zero below this.
    double degenerate_denominator = 1e-12;
    // L(x, y) returns +inf when its denominator is below this times the numerator scale.
    double l_denominator = 1e-14;

    // Negative skew values above -clamp_negative * scale are roundoff and clamped to zero.
    double clamp_negative = 1e-10;
    // Radicands of sqrt(V^2 - (V - I)^2) within this of zero are clamped.
    double clamp_radicand = 1e-12;

    // Relative slack used when deciding whether an inequality sample passes.
    double inequality_slack = 1e-9;
    // Lemma scan: margins below -lemma_margin * max(1, lhs) count as negative.
    double lemma_margin = 1e-12;
    // Lemma scan excludes |r| below this.
    double lemma_r_exclusion = 1e-4;
};

inline const Tolerances& default_tolerances() {
    static const Tolerances tol{};
    return tol;
}

}  // namespace skewlab
