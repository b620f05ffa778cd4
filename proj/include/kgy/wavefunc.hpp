#pragma once

#include "kgy/model.hpp"

#include <vector>

namespace kgy {

/// Shape of a bound radial function in y = e^{-delta r}:
///   u(r) = norm * y^p (1-y)^q P_n^{(ja, jb)}(1 - 2y).
/// p > 0 is required for a normalizable state and ja, jb > -1 for polynomial
/// orthogonality.
struct WaveParams {
    double p;
    double q;
    double ja;
    double jb;
    double norm = 1.0;
};

/// Jacobi polynomial P_n^{(a,b)}(x) by the standard three-term recurrence.
double jacobi_eval(int n, double a, double b, double x);

/// Exponents and Jacobi indices of the bound-state shape at energy E inside
/// the bound window |E| < m0. The decay exponent is the sign-corrected
/// magnitude p = sqrt((m0^2 - E^2)/delta^2 + l(l+1)), so that u decays like
/// e^{-kappa r} with kappa^2 = m0^2 - E^2 + l(l+1) delta^2; the verbatim
/// y-exponent is imaginary for bound states. Throws NoRealStateError when
/// the jb root argument is negative.
WaveParams wave_params(const CouplingSet& c, const MassModel& m, const QuantumNumbers& qn,
                       double E);

/// u(r) for the given shape.
double radial_eval(const WaveParams& wp, const QuantumNumbers& qn, double delta, double r);

/// Scale factor that makes the current amplitude unit-normalized:
/// multiplying wp.norm by the returned value gives int_0^inf u(r)^2 dr = 1.
/// Composite Simpson on [1e-6/delta, 40/(p delta)] with interval doubling to
/// relative 1e-8. Throws NonNormalizableError when p <= 0.
double normalize(const WaveParams& wp, const QuantumNumbers& qn, double delta);

/// Number of strict sign changes of u on (0, inf), sampled on a dense grid.
int count_nodes(const WaveParams& wp, const QuantumNumbers& qn, double delta,
                int grid_points = 20000);

/// Residuals of u against the transformed radial equation
///   u'' + (1-y)/(y(1-y)) u' + N(y)/(y(1-y))^2 u = 0
/// under three numerator polynomials N(y) = A1 y^2 + A2 y + A3:
///   verbatim        - A3 as printed, (E^2 - m0^2)/delta^2 + l(l+1);
///   sign_corrected  - A3 replaced by +p^2 so its square root equals the
///                     decay exponent actually used by the shape;
///   self_consistent - the coefficients the shape provably satisfies,
///                     A3 = -p^2, A2 = n^2 + 2np + 2p^2 + q(2n + 2p + 1),
///                     A1 = -(n + p + q)^2, which certifies the numerics
///                     (evaluation, recurrence, differentiation) rather than
///                     the printed algebra.
/// Derivatives use five-point finite-difference stencils on the supplied
/// grid; each residual is max|L[u]| over the grid divided by the largest
/// term magnitude encountered.
struct OdeResidual {
    double verbatim;
    double sign_corrected;
    double self_consistent;
};

OdeResidual ode_residual(const CouplingSet& c, const MassModel& m, const QuantumNumbers& qn,
                         double E, const WaveParams& wp, const std::vector<double>& y_grid);

/// Edge-clustered grid on (eps, 1-eps); spacing shrinks geometrically toward
/// both endpoints so the fractional-power behavior of u stays resolvable by
/// local stencils.
std::vector<double> default_y_grid(int points = 10000, double eps = 1e-3);

} // namespace kgy
