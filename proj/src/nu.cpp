#include "kgy/nu.hpp"

#include <cmath>
#include <stdexcept>

namespace kgy {

void NuInput::validate() const {
    for (double v : {a1, a2, a3, xi1, xi2, xi3})
        if (!std::isfinite(v))
            throw std::invalid_argument("template coefficients must be finite");
}

NuDerived derive(const NuInput& in) {
    in.validate();
    NuDerived d{};
    d.a4 = 0.5 * (1.0 - in.a1);
    d.a5 = 0.5 * (in.a2 - 2.0 * in.a3);
    d.a6 = d.a5 * d.a5 + in.xi1;
    d.a7 = 2.0 * d.a4 * d.a5 - in.xi2;
    d.a8 = d.a4 * d.a4 + in.xi3;
    d.a9 = in.a3 * (d.a7 + in.a3 * d.a8) + d.a6;
    if (d.a8 < 0.0)
        throw ComplexBranchError("a8", d.a8);
    if (d.a9 < 0.0)
        throw ComplexBranchError("a9", d.a9);
    const double r8 = std::sqrt(d.a8);
    const double r9 = std::sqrt(d.a9);
    d.a10 = in.a1 + 2.0 * d.a4 + 2.0 * r8;
    d.a11 = in.a2 - 2.0 * d.a5 + 2.0 * (r9 + in.a3 * r8);
    d.a12 = d.a4 + r8;
    d.a13 = d.a5 - (r9 + in.a3 * r8);
    return d;
}

double quantization_residual(const NuInput& in, int n) {
    if (n < 0)
        throw std::invalid_argument("n must be non-negative");
    const NuDerived d = derive(in);
    const double r8 = std::sqrt(d.a8);
    const double r9 = std::sqrt(d.a9);
    const double lhs = n * in.a2 - (2 * n + 1) * d.a5 + n * (n - 1) * in.a3 + d.a7 +
                       2.0 * in.a3 * d.a8 + (2 * n + 1) * r9;
    const double rhs = -r8 * (in.a3 * (2 * n + 1) + 2.0 * r9);
    return lhs - rhs;
}

SolutionParams solution_params(const NuDerived& d, double a3) {
    if (a3 == 0.0)
        throw std::invalid_argument("degenerate template: a3 = 0 is not supported");
    SolutionParams p{};
    p.y_exponent = d.a12;
    p.one_minus_y_exponent = -d.a12 - d.a13 / a3;
    p.jacobi_a = d.a10 - 1.0;
    p.jacobi_b = (d.a11 - d.a10 - 1.0) / a3;
    return p;
}

} // namespace kgy
