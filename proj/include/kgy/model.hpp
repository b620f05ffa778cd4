#pragma once

#include <stdexcept>

namespace kgy {

/// Radial quantum number n (node count) and orbital angular momentum l.
struct QuantumNumbers {
    int n = 0;
    int l = 0;

    void validate() const {
        if (n < 0 || l < 0)
            throw std::invalid_argument("quantum numbers must be non-negative");
    }
};

/// Interaction strengths. v0 and s0 are the vector/scalar screened-Coulomb
/// strengths, lambda is the generic strength used by the equal-potential and
/// nonrelativistic forms, delta > 0 is the screening parameter. The delta -> 0
/// Coulomb limit is reached only through the dedicated limit operations,
/// never by constructing delta = 0.
struct CouplingSet {
    double v0 = 0.0;
    double s0 = 0.0;
    double lambda = 0.0;
    double delta = 0.0;

    void validate() const;
};

/// Mass function M(r) = m0 + m1 e^{-delta r} / (1 - e^{-delta r}).
/// Constant-mass configurations are represented by m1 = 0 exactly.
struct MassModel {
    double m0 = 1.0;
    double m1 = 0.0;

    void validate() const {
        if (!(m0 > 0.0))
            throw std::invalid_argument("rest mass m0 must be positive");
    }
};

/// hbar and the nonrelativistic reduced mass. Relativistic modes work in
/// natural units (hbar = c = 1).
struct UnitSystem {
    double hbar = 1.0;
    double mu = 1.0;
    bool natural = true;

    void validate() const {
        if (!(hbar > 0.0) || !(mu > 0.0))
            throw std::invalid_argument("hbar and mu must be positive");
    }
};

/// Which printed energy relation a level came from.
enum class SpectrumMode {
    GeneralPdm,            // position-dependent mass, both couplings
    VectorOnlyPdm,         // S = 0
    ScalarOnlyPdm,         // V = 0
    ConstMassUnequal,      // m1 = 0, V != S
    ConstMassEqualDoubled, // m1 = 0, S = V, strength-doubled form
    ConstMassEqualSingle   // m1 = 0, S = V, single-strength form
};

const char* to_string(SpectrumMode mode);

enum class Branch { Positive, Negative };

/// A solved eigenvalue. converged implies residual below the solver tolerance.
struct EnergyLevel {
    double value = 0.0;
    Branch branch = Branch::Positive;
    double residual = 0.0; // |E^2 - RHS(E)| at the returned root
    SpectrumMode mode = SpectrumMode::GeneralPdm;
    bool converged = false;
    int iterations = 0;
};

/// -strength e^{-delta r} / r. Strengths are positive in the attractive
/// convention; the sign is applied here.
double yukawa_value(double strength, double delta, double r);

/// -strength / r, the pointwise delta -> 0 limit of yukawa_value.
double coulomb_value(double strength, double r);

/// Mass function value at radius r. Diverges as r -> 0+ when m1 != 0 and
/// tends to m0 as r -> infinity.
double mass_at(const MassModel& mass, double delta, double r);

enum class CentrifugalForm { Exact, Approximate };

/// l(l+1)/r^2, or the screened closed-form stand-in
/// l(l+1) delta^2 / (1 - e^{-delta r})^2 used by the bound-state relations.
double centrifugal(int l, double delta, double r, CentrifugalForm form);

} // namespace kgy
