#pragma once

#include "kgy/errors.hpp"

namespace kgy {

/// Coefficients of the parametric second-order template
///   U'' + (a1 - a2 s)/(s (1 - a3 s)) U' + (xi-polynomial)/(s (1 - a3 s))^2 U = 0.
struct NuInput {
    double a1 = 1.0, a2 = 1.0, a3 = 1.0;
    double xi1 = 0.0, xi2 = 0.0, xi3 = 0.0;

    void validate() const;
};

/// The derived constants a4..a13 of the parametric method.
/// By construction a9 = a3 (a7 + a3 a8) + a6, a12 = a4 + sqrt(a8) and
/// a13 = a5 - (sqrt(a9) + a3 sqrt(a8)); both are re-assertable.
struct NuDerived {
    double a4, a5, a6, a7, a8, a9, a10, a11, a12, a13;
};

/// Full cascade. Throws ComplexBranchError when a8 < 0 or a9 < 0 (an unbound
/// or mis-signed configuration), carrying the offending value.
NuDerived derive(const NuInput& in);

/// Left side minus right side of the closed quantization condition
///   n a2 - (2n+1) a5 + n(n-1) a3 + a7 + 2 a3 a8 + (2n+1) sqrt(a9)
///     = -sqrt(a8) [a3 (2n+1) + 2 sqrt(a9)].
/// Zero iff the energy condition holds for radial number n.
double quantization_residual(const NuInput& in, int n);

/// Exponents and Jacobi indices of the closed-form solution
///   U(s) = N s^{a12} (1 - a3 s)^{-a12 - a13/a3} P_n^{(a10 - 1, (a11 - a10 - 1)/a3)}(1 - 2 a3 s).
struct SolutionParams {
    double y_exponent;
    double one_minus_y_exponent;
    double jacobi_a;
    double jacobi_b;
};

/// Reads the solution template off a derived cascade. a3 = 0 degenerates the
/// template and is rejected.
SolutionParams solution_params(const NuDerived& d, double a3);

} // namespace kgy
