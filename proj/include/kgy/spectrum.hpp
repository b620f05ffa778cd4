#pragma once

#include "kgy/model.hpp"
#include "kgy/nu.hpp"

#include <optional>
#include <vector>

namespace kgy {

/// Problem definition shared by the solvers: couplings, mass model, units.
struct ProblemParams {
    CouplingSet coupling;
    MassModel mass;
    UnitSystem units;

    void validate() const {
        coupling.validate();
        mass.validate();
        units.validate();
    }
};

/// Coefficients of the transformed radial equation in y = e^{-delta r},
///   u'' + (1-y)/(y(1-y)) u' + (A1 y^2 + A2 y + A3)/(y(1-y))^2 u = 0.
/// A1 - A2 + A3 is independent of E (algebraic identity).
struct RadialCoefficients {
    double A1, A2, A3;
};

RadialCoefficients radial_coefficients(const CouplingSet& c, const MassModel& m,
                                       const QuantumNumbers& qn, double E);

/// The building blocks of the closed energy relations: the linear shifts
/// aleph (general) and aleph0 (vector part dropped), and the square-root
/// argument disc of the selected mode. disc < 0 means no real level.
struct BracketTerms {
    double aleph;
    double aleph0;
    double disc;
};

BracketTerms bracket_terms(SpectrumMode mode, const CouplingSet& c, const MassModel& m,
                           const QuantumNumbers& qn, double E);

/// The template coefficients and derived cascade built from the radial
/// coefficients, with xi_i = A_i (the internally consistent mapping:
/// A1 - A2 + A3 reproduces a9 - 1/4).
struct AppendixAlphas {
    NuInput input;
    NuDerived derived;
};

AppendixAlphas appendix_alphas(const CouplingSet& c, const MassModel& m,
                               const QuantumNumbers& qn, double E);

/// Right-hand side of the selected energy relation at trial energy E, i.e.
/// the candidate value of E^2. E-independent for ScalarOnlyPdm. Throws
/// NoRealStateError when the relation's discriminant is negative, and
/// std::invalid_argument when the mode's parameter constraints are violated
/// (ScalarOnlyPdm forces v0 = 0, VectorOnlyPdm forces s0 = 0, constant-mass
/// modes force m1 = 0; the equal-potential modes read coupling.lambda).
double energy_rhs(SpectrumMode mode, const CouplingSet& c, const MassModel& m,
                  const UnitSystem& units, const QuantumNumbers& qn, double E);

/// E^2 - energy_rhs(E). Roots of this function are eigenvalues of the
/// selected relation.
double residual(SpectrumMode mode, const ProblemParams& params, const QuantumNumbers& qn,
                double E);

struct SearchWindow {
    double emin;
    double emax;
};

/// Default bound-state window (-m0 + 1e-9, m0 - 1e-9).
SearchWindow default_window(const MassModel& m);

enum class BranchFilter { Both, Positive, Negative };

/// Scans residual sign changes on a uniform grid over the search window and
/// refines each bracket by bisection to |dE| < 1e-12 and |residual| < 1e-10.
/// Roots are returned sorted ascending and tagged with their branch sign.
/// For ScalarOnlyPdm the relation is E-independent and the closed-form pair
/// +-sqrt(RHS) is returned directly when RHS >= 0 (no scan).
/// An empty list means no sign change in the window (not an error).
std::vector<EnergyLevel> solve_levels(SpectrumMode mode, const ProblemParams& params,
                                      const QuantumNumbers& qn,
                                      std::optional<SearchWindow> window = std::nullopt,
                                      BranchFilter branch = BranchFilter::Both,
                                      int grid_points = 2048);

/// Consistency record for a solved level: the closed quantization condition
/// evaluated on the cascade at the level's energy, against the printed
/// energy relation it was solved from.
///
/// Bound levels have a8 < 0; in that case the quantization condition is
/// evaluated with sqrt(a8) replaced by -sqrt(-a8), the branch that
/// reproduces the printed relations at node count zero, and
/// corrected_branch is set. Both residuals are reported; disagreement is a
/// finding about the printed algebra, not a solver failure.
struct CrossCheck {
    double condition_residual; // quantization-condition defect
    double relation_residual;  // |E^2 - RHS(E)| of the closed relation
    bool corrected_branch;
};

CrossCheck nu_cross_check(const ProblemParams& params, const QuantumNumbers& qn,
                          const EnergyLevel& level);

} // namespace kgy
