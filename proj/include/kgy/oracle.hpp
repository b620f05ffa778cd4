#pragma once

#include "kgy/model.hpp"
#include "kgy/spectrum.hpp"

#include <array>
#include <optional>
#include <vector>

namespace kgy {

/// Uniform radial grid for the direct integrator.
struct RadialGrid {
    double r_min = 1e-6;
    double r_max = 50.0;
    int count = 20000;

    void validate() const;
};

/// Grid sized for the target state: r_max covers 40 decay lengths of the
/// hydrogenic estimate for the same quantum numbers, floored at 50.
RadialGrid default_grid(double lambda, const QuantumNumbers& qn, const UnitSystem& units);

struct NumerovLevel {
    double energy = 0.0;
    int nodes = 0;
    /// Energy recomputed at twice the grid density; accuracy_warning is set
    /// when the two disagree by more than relative 1e-6.
    double refined_energy = 0.0;
    bool accuracy_warning = false;
};

/// Direct eigenvalue of u'' = [2 mu (V(r) - E)/hbar^2 + l(l+1)/r^2] u with the
/// exact screened-Coulomb V, by fourth-order propagation from both ends and
/// log-derivative matching at the outermost classical turning point. E is
/// bracketed by the node count of the outward sweep, then refined by
/// bisection on the matching defect to |dE| < 1e-9 max(1, |E|). Throws
/// NotFoundError when no state with the requested node count exists in the
/// search window.
NumerovLevel numerov_eigenvalue(double lambda, double delta, int l, int target_nodes,
                                const RadialGrid& grid, const UnitSystem& units);

/// Exact quadratic expansion of residual(E) = c2 E^2 + c1 E + c0 obtained by
/// evaluating the residual at three energies and solving the Vandermonde
/// system. Every closed energy relation here makes the residual a quadratic
/// polynomial in E; a fourth-point mismatch beyond 1e-10 indicates a formula
/// implementation bug and raises std::logic_error.
std::array<double, 3> residual_quadratic_fit(SpectrumMode mode, const ProblemParams& params,
                                             const QuantumNumbers& qn);

/// Real roots of the fitted quadratic inside the window (at most two,
/// ascending). Defaults to the bound-state window.
std::vector<double> quadratic_roots(SpectrumMode mode, const ProblemParams& params,
                                    const QuantumNumbers& qn,
                                    std::optional<SearchWindow> window = std::nullopt);

/// Closed-form level vs. the direct integrator on the same configuration;
/// charts the quality of the screened centrifugal/Coulomb substitution.
struct ApproximationGap {
    double e_analytic;
    double e_numerov;
    double gap; // |e_analytic - e_numerov|
};

ApproximationGap approximation_gap(double lambda, double delta, const QuantumNumbers& qn,
                                   const UnitSystem& units);

} // namespace kgy
