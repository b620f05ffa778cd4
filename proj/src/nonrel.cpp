#include "kgy/nonrel.hpp"

#include <cmath>
#include <stdexcept>

namespace kgy {

namespace {

void check_inputs(double lambda, double delta, const QuantumNumbers& qn,
                  const UnitSystem& units) {
    qn.validate();
    units.validate();
    if (!std::isfinite(lambda))
        throw std::invalid_argument("lambda must be finite");
    if (!(delta > 0.0))
        throw std::invalid_argument("delta must be positive");
}

double bracket(double lambda, double delta, const QuantumNumbers& qn, const UnitSystem& u) {
    const double ll = static_cast<double>(qn.l) * (qn.l + 1);
    const double N = qn.n + qn.l + 1.0;
    return (2.0 * u.mu * lambda / (delta * u.hbar * u.hbar) - ll - N * N) / (2.0 * N);
}

} // namespace

double nonrel_energy(double lambda, double delta, const QuantumNumbers& qn,
                     const UnitSystem& units) {
    check_inputs(lambda, delta, qn, units);
    const double ll = static_cast<double>(qn.l) * (qn.l + 1);
    const double scale = delta * delta * units.hbar * units.hbar / (2.0 * units.mu);
    const double b = bracket(lambda, delta, qn, units);
    return ll * scale - scale * b * b;
}

NonrelLevel nonrel_level(double lambda, double delta, const QuantumNumbers& qn,
                         const UnitSystem& units) {
    return NonrelLevel{nonrel_energy(lambda, delta, qn, units), qn, lambda, delta};
}

double coulomb_energy(double lambda, const QuantumNumbers& qn, const UnitSystem& units) {
    qn.validate();
    units.validate();
    if (!(lambda > 0.0))
        throw std::invalid_argument("lambda must be positive");
    const double N = qn.n + qn.l + 1.0;
    return -units.mu * lambda * lambda / (2.0 * units.hbar * units.hbar * N * N);
}

NonrelTransform nonrel_limit_transform(double m, double e_rel, const UnitSystem& units) {
    units.validate();
    NonrelTransform t{};
    t.mu_eff = units.hbar * units.hbar * (m + e_rel) / 2.0;
    t.e_nonrel = -(m - e_rel);
    return t;
}

bool bound_state_exists(double lambda, double delta, const QuantumNumbers& qn,
                        const UnitSystem& units) {
    check_inputs(lambda, delta, qn, units);
    const double ll = static_cast<double>(qn.l) * (qn.l + 1);
    const double N = qn.n + qn.l + 1.0;
    const double num = 2.0 * units.mu * lambda / (delta * units.hbar * units.hbar) - ll - N * N;
    return num > 0.0 && nonrel_energy(lambda, delta, qn, units) < 0.0;
}

} // namespace kgy
