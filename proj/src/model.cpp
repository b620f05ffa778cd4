#include "kgy/model.hpp"

#include <cmath>

namespace kgy {

namespace {

void require_radius(double r) {
    if (!std::isfinite(r) || r <= 0.0)
        throw std::domain_error("radial coordinate must be finite and positive");
}

} // namespace

void CouplingSet::validate() const {
    if (!std::isfinite(v0) || !std::isfinite(s0) || !std::isfinite(lambda) || !std::isfinite(delta))
        throw std::invalid_argument("couplings must be finite");
    if (!(delta > 0.0))
        throw std::invalid_argument("screening parameter delta must be positive");
}

const char* to_string(SpectrumMode mode) {
    switch (mode) {
        case SpectrumMode::GeneralPdm: return "general";
        case SpectrumMode::VectorOnlyPdm: return "vector-only";
        case SpectrumMode::ScalarOnlyPdm: return "scalar-only";
        case SpectrumMode::ConstMassUnequal: return "const-unequal";
        case SpectrumMode::ConstMassEqualDoubled: return "equal-doubled";
        case SpectrumMode::ConstMassEqualSingle: return "equal-single";
    }
    return "?";
}

double yukawa_value(double strength, double delta, double r) {
    if (!std::isfinite(strength) || !std::isfinite(delta) || !(delta > 0.0))
        throw std::domain_error("yukawa_value needs finite strength and delta > 0");
    require_radius(r);
    return -strength * std::exp(-delta * r) / r;
}

double coulomb_value(double strength, double r) {
    if (!std::isfinite(strength))
        throw std::domain_error("coulomb_value needs a finite strength");
    require_radius(r);
    return -strength / r;
}

double mass_at(const MassModel& mass, double delta, double r) {
    mass.validate();
    require_radius(r);
    const double y = std::exp(-delta * r);
    return mass.m0 + mass.m1 * y / (1.0 - y);
}

double centrifugal(int l, double delta, double r, CentrifugalForm form) {
    if (l < 0)
        throw std::invalid_argument("l must be non-negative");
    require_radius(r);
    const double ll = static_cast<double>(l) * (l + 1);
    if (form == CentrifugalForm::Exact)
        return ll / (r * r);
    const double w = -std::expm1(-delta * r); // 1 - e^{-delta r}
    return ll * delta * delta / (w * w);
}

} // namespace kgy
