#include "kgy/spectrum.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <stdexcept>

namespace kgy {

namespace {

double ll(const QuantumNumbers& qn) {
    return static_cast<double>(qn.l) * (qn.l + 1);
}

void check_mode_constraints(SpectrumMode mode, const CouplingSet& c, const MassModel& m) {
    switch (mode) {
        case SpectrumMode::ScalarOnlyPdm:
            if (c.v0 != 0.0)
                throw std::invalid_argument("scalar-only mode requires v0 = 0");
            break;
        case SpectrumMode::VectorOnlyPdm:
            if (c.s0 != 0.0)
                throw std::invalid_argument("vector-only mode requires s0 = 0");
            break;
        case SpectrumMode::ConstMassUnequal:
        case SpectrumMode::ConstMassEqualDoubled:
        case SpectrumMode::ConstMassEqualSingle:
            if (m.m1 != 0.0)
                throw std::invalid_argument("constant-mass modes require m1 = 0");
            break;
        case SpectrumMode::GeneralPdm:
            break;
    }
}

// Shared shape of the relations with a square-root discriminant:
//   E^2 = m0^2 - l(l+1) delta^2 - delta^2 ((shift - (1 + (n+1) sqrt(disc))/2) / (2n+1 + sqrt(disc)))^2
double bracket_rhs(double m0, double delta, const QuantumNumbers& qn, double shift, double disc) {
    if (disc < 0.0)
        throw NoRealStateError(disc);
    const double sd = std::sqrt(disc);
    const double num = shift - 0.5 * (1.0 + (qn.n + 1) * sd);
    const double den = 2.0 * qn.n + 1.0 + sd;
    const double b = num / den;
    return m0 * m0 - ll(qn) * delta * delta - delta * delta * b * b;
}

} // namespace

RadialCoefficients radial_coefficients(const CouplingSet& c, const MassModel& m,
                                       const QuantumNumbers& qn, double E) {
    c.validate();
    m.validate();
    qn.validate();
    if (!std::isfinite(E))
        throw std::invalid_argument("trial energy must be finite");
    const double d = c.delta, d2 = d * d;
    RadialCoefficients a{};
    a.A1 = (E * E - m.m0 * m.m0 + 2.0 * m.m0 * m.m1) / d2 +
           (2.0 * m.m1 * c.s0 - 2.0 * m.m0 * c.s0 - 2.0 * c.v0 * E) / d +
           c.v0 * c.v0 - m.m1 * m.m1 * c.s0 * c.s0;
    a.A2 = (2.0 * E * E - 2.0 * m.m0 * m.m0 + 2.0 * m.m0 * m.m1) / d2 +
           (-2.0 * m.m0 * c.s0 - 2.0 * c.v0 * E) / d;
    a.A3 = (E * E - m.m0 * m.m0) / d2 + ll(qn);
    return a;
}

BracketTerms bracket_terms(SpectrumMode mode, const CouplingSet& c, const MassModel& m,
                           const QuantumNumbers& qn, double E) {
    c.validate();
    m.validate();
    qn.validate();
    const double d = c.delta;
    const double w = 1.0 + 2.0 * qn.l;
    BracketTerms t{};
    t.aleph = -qn.n * (qn.n + 1.0) - 2.0 * ll(qn) + (2.0 * m.m0 * c.s0 + 2.0 * c.v0 * E) / d -
              2.0 * m.m0 * m.m1 / (d * d);
    t.aleph0 = -qn.n * (qn.n + 1.0) - 2.0 * ll(qn) + 2.0 * m.m0 * c.s0 / d -
               2.0 * m.m0 * m.m1 / (d * d);
    switch (mode) {
        case SpectrumMode::GeneralPdm:
            t.disc = w * w + 4.0 * (c.v0 * c.v0 - m.m1 * m.m1 * c.s0 * c.s0) + 8.0 * m.m1 * c.s0 / d;
            break;
        case SpectrumMode::VectorOnlyPdm:
        case SpectrumMode::ConstMassUnequal:
            t.disc = w * w + 4.0 * c.v0 * c.v0;
            break;
        case SpectrumMode::ScalarOnlyPdm:
            // Reduction of the general discriminant at v0 = 0. The standalone
            // scalar relation prints the m1^2 s0^2 term with the opposite
            // sign; the reduction-consistent form is used throughout.
            t.disc = w * w - 4.0 * m.m1 * m.m1 * c.s0 * c.s0 + 8.0 * m.m1 * c.s0 / d;
            break;
        case SpectrumMode::ConstMassEqualDoubled:
        case SpectrumMode::ConstMassEqualSingle:
            t.disc = 0.0; // these relations carry no square root
            break;
    }
    return t;
}

AppendixAlphas appendix_alphas(const CouplingSet& c, const MassModel& m,
                               const QuantumNumbers& qn, double E) {
    const RadialCoefficients a = radial_coefficients(c, m, qn, E);
    AppendixAlphas out{};
    out.input = NuInput{1.0, 1.0, 1.0, a.A1, a.A2, a.A3};
    out.derived = derive(out.input); // throws ComplexBranchError when a8 or a9 < 0
    return out;
}

double energy_rhs(SpectrumMode mode, const CouplingSet& c, const MassModel& m,
                  const UnitSystem& units, const QuantumNumbers& qn, double E) {
    c.validate();
    m.validate();
    units.validate();
    qn.validate();
    check_mode_constraints(mode, c, m);
    if (!std::isfinite(E))
        throw std::invalid_argument("trial energy must be finite");

    const double d = c.delta;
    const BracketTerms t = bracket_terms(mode, c, m, qn, E);

    switch (mode) {
        case SpectrumMode::GeneralPdm:
            return bracket_rhs(m.m0, d, qn, t.aleph, t.disc);
        case SpectrumMode::VectorOnlyPdm:
            return bracket_rhs(m.m0, d, qn, t.aleph, t.disc);
        case SpectrumMode::ScalarOnlyPdm:
            return bracket_rhs(m.m0, d, qn, t.aleph0, t.disc);
        case SpectrumMode::ConstMassUnequal: {
            // Printed numerator -2 (l(l+1) delta - M s0 - v0 E)/delta, kept verbatim.
            const double shift = -qn.n * (qn.n + 1.0) +
                                 (-2.0 * (ll(qn) * d - m.m0 * c.s0 - c.v0 * E)) / d;
            return bracket_rhs(m.m0, d, qn, shift, t.disc);
        }
        case SpectrumMode::ConstMassEqualDoubled:
        case SpectrumMode::ConstMassEqualSingle: {
            const double strength =
                mode == SpectrumMode::ConstMassEqualDoubled ? 2.0 * c.lambda : c.lambda;
            const double N = qn.n + qn.l + 1.0;
            const double num = strength * (m.m0 + E) / d - ll(qn) - N * N;
            const double b = num / (2.0 * N);
            return m.m0 * m.m0 - ll(qn) * d * d - d * d * b * b;
        }
    }
    throw std::logic_error("unreachable mode");
}

double residual(SpectrumMode mode, const ProblemParams& params, const QuantumNumbers& qn,
                double E) {
    return E * E - energy_rhs(mode, params.coupling, params.mass, params.units, qn, E);
}

SearchWindow default_window(const MassModel& m) {
    m.validate();
    return SearchWindow{-m.m0 + 1e-9, m.m0 - 1e-9};
}

std::vector<EnergyLevel> solve_levels(SpectrumMode mode, const ProblemParams& params,
                                      const QuantumNumbers& qn,
                                      std::optional<SearchWindow> window, BranchFilter branch,
                                      int grid_points) {
    params.validate();
    qn.validate();
    if (grid_points < 64)
        throw std::invalid_argument("grid_points must be at least 64");
    const SearchWindow win = window ? *window : default_window(params.mass);
    if (!(win.emin < win.emax))
        throw std::invalid_argument("empty search window");

    const auto keep = [&](double e) {
        if (branch == BranchFilter::Positive && e < 0.0) return false;
        if (branch == BranchFilter::Negative && e >= 0.0) return false;
        return e >= win.emin && e <= win.emax;
    };
    const auto make_level = [&](double e, double res, bool conv, int iters) {
        EnergyLevel lvl;
        lvl.value = e;
        lvl.branch = e < 0.0 ? Branch::Negative : Branch::Positive;
        lvl.residual = std::abs(res);
        lvl.mode = mode;
        lvl.converged = conv;
        lvl.iterations = iters;
        return lvl;
    };

    std::vector<EnergyLevel> out;

    if (mode == SpectrumMode::ScalarOnlyPdm) {
        // RHS is E-independent: the spectrum is the exact sign-symmetric pair.
        const double rhs =
            energy_rhs(mode, params.coupling, params.mass, params.units, qn, 0.0);
        if (rhs < 0.0)
            return out;
        const double root = std::sqrt(rhs);
        for (double e : {-root, root})
            if (keep(e))
                out.push_back(make_level(e, e * e - rhs, true, 0));
        std::sort(out.begin(), out.end(),
                  [](const EnergyLevel& a, const EnergyLevel& b) { return a.value < b.value; });
        return out;
    }

    const auto f = [&](double e) { return residual(mode, params, qn, e); };

    const double step = (win.emax - win.emin) / grid_points;
    double prev_e = win.emin;
    double prev_f = f(prev_e);
    for (int i = 1; i <= grid_points; ++i) {
        const double cur_e = win.emin + i * step;
        const double cur_f = f(cur_e);
        const bool bracketed = (prev_f == 0.0) || (prev_f * cur_f < 0.0);
        if (bracketed) {
            double a = prev_e, b = cur_e, fa = prev_f;
            if (fa == 0.0) {
                if (keep(a))
                    out.push_back(make_level(a, 0.0, true, 0));
            } else {
                double mid = 0.5 * (a + b), fm = 0.0;
                int it = 0;
                for (; it < 200; ++it) {
                    mid = 0.5 * (a + b);
                    fm = f(mid);
                    if ((b - a) < 1e-12 && std::abs(fm) < 1e-10) break;
                    if (b - a < 4.0 * std::numeric_limits<double>::epsilon() *
                                    std::max(1.0, std::abs(mid)))
                        break;
                    if (fm == 0.0) break;
                    if ((fa < 0.0) == (fm < 0.0)) {
                        a = mid;
                        fa = fm;
                    } else {
                        b = mid;
                    }
                }
                const bool conv =
                    std::abs(fm) < 1e-10 && ((b - a) < 1e-12 || fm == 0.0);
                if (it >= 200 && !conv)
                    throw ConvergenceError(a, b, fm);
                if (keep(mid))
                    out.push_back(make_level(mid, fm, conv, it));
            }
        }
        prev_e = cur_e;
        prev_f = cur_f;
    }

    std::sort(out.begin(), out.end(),
              [](const EnergyLevel& a, const EnergyLevel& b) { return a.value < b.value; });
    return out;
}

CrossCheck nu_cross_check(const ProblemParams& params, const QuantumNumbers& qn,
                          const EnergyLevel& level) {
    params.validate();
    qn.validate();
    const SpectrumMode mode = level.mode;
    const double E = level.value;

    // Equal-potential modes correspond to v0 = s0 = strength in the cascade
    // (half the strength for the single form).
    CouplingSet c = params.coupling;
    if (mode == SpectrumMode::ConstMassEqualDoubled) {
        c.v0 = c.s0 = c.lambda;
    } else if (mode == SpectrumMode::ConstMassEqualSingle) {
        c.v0 = c.s0 = 0.5 * c.lambda;
    }

    const RadialCoefficients a = radial_coefficients(c, params.mass, qn, E);
    const double a8 = a.A3;
    const double a9 = 0.25 + a.A1 - a.A2 + a.A3;
    if (a9 < 0.0)
        throw ComplexBranchError("a9", a9);

    CrossCheck cc{};
    cc.corrected_branch = a8 < 0.0;
    const double s8 = a8 >= 0.0 ? std::sqrt(a8) : -std::sqrt(-a8);
    const double s9 = std::sqrt(a9);
    const int n = qn.n;
    // Quantization condition with a1 = a2 = a3 = 1, a5 = -1/2, a7 = -A2.
    const double lhs = n + 0.5 * (2 * n + 1) + n * (n - 1) - a.A2 + 2.0 * a8 + (2 * n + 1) * s9;
    const double rhs = -s8 * ((2 * n + 1) + 2.0 * s9);
    cc.condition_residual = lhs - rhs;
    cc.relation_residual = std::abs(residual(mode, params, qn, E));
    return cc;
}

} // namespace kgy
