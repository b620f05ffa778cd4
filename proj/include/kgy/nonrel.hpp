#pragma once

#include "kgy/model.hpp"

namespace kgy {

/// A closed-form nonrelativistic level with its inputs echoed.
struct NonrelLevel {
    double value;
    QuantumNumbers qn;
    double lambda;
    double delta;
};

/// Closed-form screened-Coulomb level
///   E = l(l+1) d^2 hbar^2 / (2 mu)
///       - (d^2 hbar^2 / (2 mu)) [(2 mu lambda / (d hbar^2) - l(l+1) - (1+l+n)^2) / (2(n+l+1))]^2.
double nonrel_energy(double lambda, double delta, const QuantumNumbers& qn,
                     const UnitSystem& units);

NonrelLevel nonrel_level(double lambda, double delta, const QuantumNumbers& qn,
                         const UnitSystem& units);

/// Hydrogenic limit -mu lambda^2 / (2 hbar^2 (n+l+1)^2), the analytic
/// delta -> 0 limit of nonrel_energy.
double coulomb_energy(double lambda, const QuantumNumbers& qn, const UnitSystem& units);

/// The substitution pair mapping the equal-potential relativistic relation
/// onto the nonrelativistic one: mu_eff = hbar^2 (M + E)/2 and
/// e_nonrel = -(M - E).
struct NonrelTransform {
    double mu_eff;
    double e_nonrel;
};

NonrelTransform nonrel_limit_transform(double m, double e_rel, const UnitSystem& units);

/// True iff the bracket numerator 2 mu lambda/(delta hbar^2) - l(l+1) - (1+l+n)^2
/// is positive and the closed-form energy is negative: the condition for the
/// relation to describe a genuinely bound, node-consistent level.
bool bound_state_exists(double lambda, double delta, const QuantumNumbers& qn,
                        const UnitSystem& units);

} // namespace kgy
