#include "kgy/wavefunc.hpp"

#include "kgy/errors.hpp"
#include "kgy/nu.hpp"
#include "kgy/spectrum.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace kgy;

namespace {

const CouplingSet kScalarCoupling{0.0, 1.0, 0.0, 0.1};
const MassModel kPdmMass{1.0, 0.1};
const UnitSystem kNatural{};

double solved_energy(const CouplingSet& c, const MassModel& m, const QuantumNumbers& qn) {
    ProblemParams params{c, m, kNatural};
    const auto levels = solve_levels(SpectrumMode::ScalarOnlyPdm, params, qn, std::nullopt,
                                     BranchFilter::Positive);
    REQUIRE(levels.size() == 1);
    return levels[0].value;
}

// Finite-sum expansion of the degree-2 polynomial, independent of the
// recurrence: P_2 = sum_k C(2+a, 2-k) C(2+b, k) ((x-1)/2)^k ((x+1)/2)^{2-k}.
double jacobi2_direct(double a, double b, double x) {
    const auto binom = [](double top, int k) {
        double acc = 1.0;
        for (int i = 1; i <= k; ++i)
            acc *= (top - (k - i)) / i;
        return acc;
    };
    double acc = 0.0;
    for (int k = 0; k <= 2; ++k)
        acc += binom(2.0 + a, 2 - k) * binom(2.0 + b, k) * std::pow(0.5 * (x - 1.0), k) *
               std::pow(0.5 * (x + 1.0), 2 - k);
    return acc;
}

} // namespace

TEST_CASE("jacobi basics") {
    CHECK(jacobi_eval(0, 0.7, -0.3, 0.2) == 1.0);
    CHECK(jacobi_eval(1, 0.0, 0.0, 0.3) == doctest::Approx(0.3).epsilon(1e-15)); // Legendre
    CHECK(jacobi_eval(1, 1.5, 0.5, -0.4) ==
          doctest::Approx(0.5 * (1.5 - 0.5 + (1.5 + 0.5 + 2.0) * -0.4)).epsilon(1e-15));
}

TEST_CASE("jacobi recurrence matches the direct degree-2 expansion") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> idx(-0.9, 3.0);
    std::uniform_real_distribution<double> arg(-1.0, 1.0);
    CHECK(jacobi_eval(2, 1.0, 1.0, 0.5) == doctest::Approx(jacobi2_direct(1.0, 1.0, 0.5)).epsilon(1e-14));
    for (int i = 0; i < 200; ++i) {
        const double a = idx(rng), b = idx(rng), x = arg(rng);
        CHECK(jacobi_eval(2, a, b, x) == doctest::Approx(jacobi2_direct(a, b, x)).epsilon(1e-12));
    }
}

TEST_CASE("shape parameters at the reference ground state") {
    const QuantumNumbers qn{0, 0};
    const double E = solved_energy(kScalarCoupling, kPdmMass, qn);
    const WaveParams wp = wave_params(kScalarCoupling, kPdmMass, qn, E);
    CHECK(wp.p == doctest::Approx(0.5).epsilon(1e-7));
    CHECK(wp.jb == doctest::Approx(std::sqrt(8.96)).epsilon(1e-9));
    CHECK(wp.q == doctest::Approx(0.5 + 0.5 * std::sqrt(8.96)).epsilon(1e-9));
    CHECK(wp.ja == 2.0 * wp.p);
}

TEST_CASE("ja equals twice the decay exponent for random parameters") {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> str(0.0, 2.0);
    std::uniform_real_distribution<double> m1(0.0, 0.2);
    std::uniform_real_distribution<double> energy(-0.9, 0.9);
    for (int i = 0; i < 100; ++i) {
        const CouplingSet c{str(rng), str(rng), 0.0, 0.1};
        const MassModel m{1.0, m1(rng)};
        const WaveParams wp = wave_params(c, m, QuantumNumbers{i % 3, i % 2}, energy(rng));
        CHECK(wp.ja == 2.0 * wp.p);
    }
}

TEST_CASE("decay exponent closes at threshold") {
    const CouplingSet c{0.0, 0.0, 0.0, 0.1};
    const MassModel m{1.0, 0.0};
    const WaveParams wp = wave_params(c, m, QuantumNumbers{0, 0}, 1.0 - 1e-12);
    CHECK(wp.p < 2e-5);
    CHECK_THROWS_AS(wave_params(c, m, QuantumNumbers{0, 0}, 1.0), std::domain_error);
}

TEST_CASE("radial tail decays with the advertised log-slope") {
    const QuantumNumbers qn{0, 0};
    const double E = solved_energy(kScalarCoupling, kPdmMass, qn);
    const WaveParams wp = wave_params(kScalarCoupling, kPdmMass, qn, E);
    const double delta = kScalarCoupling.delta;
    const double r1 = 20.0 / delta, r2 = 30.0 / delta;
    const double slope = (std::log(std::abs(radial_eval(wp, qn, delta, r2))) -
                          std::log(std::abs(radial_eval(wp, qn, delta, r1)))) /
                         (r2 - r1);
    CHECK(slope == doctest::Approx(-wp.p * delta).epsilon(1e-3));
}

TEST_CASE("radial function vanishes at the origin") {
    const QuantumNumbers qn{0, 0};
    const double E = solved_energy(kScalarCoupling, kPdmMass, qn);
    const WaveParams wp = wave_params(kScalarCoupling, kPdmMass, qn, E);
    CHECK(wp.q > 0.5);
    double prev = std::abs(radial_eval(wp, qn, 0.1, 1e-2));
    for (double r : {1e-3, 1e-4, 1e-5, 1e-6}) {
        const double cur = std::abs(radial_eval(wp, qn, 0.1, r));
        CHECK(cur < prev);
        prev = cur;
    }
    CHECK(prev < 1e-9);
}

TEST_CASE("first excited state changes sign exactly once") {
    const QuantumNumbers qn{1, 0};
    const double E = solved_energy(kScalarCoupling, kPdmMass, qn);
    const WaveParams wp = wave_params(kScalarCoupling, kPdmMass, qn, E);
    CHECK(count_nodes(wp, qn, 0.1) == 1);
}

TEST_CASE("node counts match the radial quantum number") {
    for (int n : {0, 1, 2}) {
        const QuantumNumbers qn{n, 0};
        const double E = solved_energy(kScalarCoupling, kPdmMass, qn);
        const WaveParams wp = wave_params(kScalarCoupling, kPdmMass, qn, E);
        CHECK(count_nodes(wp, qn, 0.1) == n);
    }
}

TEST_CASE("normalization scale halves when the amplitude doubles") {
    const QuantumNumbers qn{0, 0};
    const double E = solved_energy(kScalarCoupling, kPdmMass, qn);
    WaveParams wp = wave_params(kScalarCoupling, kPdmMass, qn, E);
    const double n1 = normalize(wp, qn, 0.1);
    wp.norm *= 2.0;
    const double n2 = normalize(wp, qn, 0.1);
    CHECK(n2 == doctest::Approx(0.5 * n1).epsilon(1e-12));
    CHECK(1.0 * n1 == doctest::Approx(2.0 * n2).epsilon(1e-12));
}

TEST_CASE("normalized ground state has unit norm") {
    const QuantumNumbers qn{0, 0};
    const double E = solved_energy(kScalarCoupling, kPdmMass, qn);
    WaveParams wp = wave_params(kScalarCoupling, kPdmMass, qn, E);
    wp.norm *= normalize(wp, qn, 0.1);
    // independent check: trapezoid on a dense uniform grid
    const double a = 1e-7, b = 40.0 / (wp.p * 0.1);
    const int N = 400000;
    const double h = (b - a) / N;
    double acc = 0.0;
    for (int i = 0; i <= N; ++i) {
        const double u = radial_eval(wp, qn, 0.1, a + i * h);
        acc += (i == 0 || i == N ? 0.5 : 1.0) * u * u;
    }
    acc *= h;
    CHECK(std::abs(acc - 1.0) < 1e-6);
}

TEST_CASE("non-normalizable and degenerate inputs are rejected") {
    WaveParams wp{0.0, 2.0, 0.0, 3.0, 1.0};
    CHECK_THROWS_AS(normalize(wp, QuantumNumbers{0, 0}, 0.1), NonNormalizableError);
    wp.p = 0.5;
    wp.norm = 0.0;
    CHECK_THROWS_AS(normalize(wp, QuantumNumbers{0, 0}, 0.1), std::invalid_argument);
}

TEST_CASE("mean radius follows the hydrogenic expectation in the narrow limit") {
    // constant mass, scalar strength 1/2, delta = 1e-3: the shape collapses
    // to r e^{-kappa r}, whose mean radius is 3/(2 kappa).
    const CouplingSet c{0.0, 0.5, 0.0, 1e-3};
    const MassModel m{1.0, 0.0};
    const QuantumNumbers qn{0, 0};
    const double E = solved_energy(c, m, qn);
    WaveParams wp = wave_params(c, m, qn, E);
    wp.norm *= normalize(wp, qn, c.delta);
    const double kappa = std::sqrt(1.0 - E * E);
    const double a = 1e-7, b = 60.0 / kappa;
    const int N = 200000;
    const double h = (b - a) / N;
    double num = 0.0, den = 0.0;
    for (int i = 0; i <= N; ++i) {
        const double r = a + i * h;
        const double u = radial_eval(wp, qn, c.delta, r);
        const double wgt = (i == 0 || i == N) ? 0.5 : 1.0;
        num += wgt * r * u * u;
        den += wgt * u * u;
    }
    CHECK(num / den == doctest::Approx(3.0 / (2.0 * kappa)).epsilon(0.05));
}

TEST_CASE("flat-measure overlap of neighbouring constant-mass states decays with screening") {
    // m1 = 0, s0 = 1: the n = 0 and n = 1 states are nearly orthogonal in the
    // flat measure and get closer to orthogonal as delta shrinks.
    const MassModel m{1.0, 0.0};
    double prev = 1.0;
    for (double delta : {0.4, 0.2, 0.1, 0.05}) {
        const CouplingSet c{0.0, 1.0, 0.0, delta};
        WaveParams w0 = wave_params(c, m, {0, 0}, solved_energy(c, m, {0, 0}));
        WaveParams w1 = wave_params(c, m, {1, 0}, solved_energy(c, m, {1, 0}));
        w0.norm *= normalize(w0, {0, 0}, delta);
        w1.norm *= normalize(w1, {1, 0}, delta);
        const double a = 1e-7, b = 80.0 / (std::min(w0.p, w1.p) * delta);
        const int N = 200000;
        const double h = (b - a) / N;
        double overlap = 0.0;
        for (int i = 0; i <= N; ++i) {
            const double r = a + i * h;
            const double wgt = (i == 0 || i == N) ? 0.5 : 1.0;
            overlap += wgt * radial_eval(w0, {0, 0}, delta, r) *
                       radial_eval(w1, {1, 0}, delta, r);
        }
        overlap = std::abs(overlap * h);
        CHECK(overlap < 0.15);
        CHECK(overlap < prev);
        prev = overlap;
    }
}

TEST_CASE("solution template and shape agree on the decay exponent") {
    // The verbatim cascade at the reference row sits on the complex branch
    // (a8 = -1/4); with the third coefficient sign-corrected the template
    // y-exponent reproduces the shape's decay exponent and the Jacobi
    // indices stay inside the orthogonality domain.
    const QuantumNumbers qn{0, 0};
    const double E = solved_energy(kScalarCoupling, kPdmMass, qn);
    const auto a = radial_coefficients(kScalarCoupling, kPdmMass, qn, E);
    const NuInput corrected{1.0, 1.0, 1.0, a.A1, a.A2, -a.A3};
    const SolutionParams sp = solution_params(derive(corrected), 1.0);
    const WaveParams wp = wave_params(kScalarCoupling, kPdmMass, qn, E);
    CHECK(sp.y_exponent == doctest::Approx(wp.p).epsilon(1e-12));
    CHECK(sp.jacobi_a == doctest::Approx(wp.ja).epsilon(1e-12));
}

TEST_CASE("jacobi indices exceed -1 on solved levels") {
    for (int n : {0, 1, 2})
        for (double delta : {0.1, 0.2}) {
            CouplingSet c = kScalarCoupling;
            c.delta = delta;
            const QuantumNumbers qn{n, 0};
            const WaveParams wp = wave_params(c, kPdmMass, qn, solved_energy(c, kPdmMass, qn));
            CHECK(wp.ja > -1.0);
            CHECK(wp.jb > -1.0);
            CHECK(wp.p > 0.0);
        }
}

TEST_CASE("equation residuals at the reference ground state") {
    const QuantumNumbers qn{0, 0};
    const double E = solved_energy(kScalarCoupling, kPdmMass, qn);
    const WaveParams wp = wave_params(kScalarCoupling, kPdmMass, qn, E);
    const auto grid = default_y_grid();
    const OdeResidual res = ode_residual(kScalarCoupling, kPdmMass, qn, E, wp, grid);
    // The shape satisfies its own hypergeometric-consistent equation to
    // stencil accuracy: this certifies evaluation and differentiation.
    CHECK(res.self_consistent < 1e-5);
    // Against the printed coefficients the same shape does NOT solve the
    // equation under either square-root reading; the gap is structural
    // (wrong linear and quadratic numerator terms), not numerical noise.
    CHECK(res.verbatim > 1e-3);
    CHECK(res.sign_corrected > 1e-3);
}

TEST_CASE("certifying equation rejects detuned energies") {
    const QuantumNumbers qn{0, 0};
    const double E = solved_energy(kScalarCoupling, kPdmMass, qn);
    const WaveParams wp = wave_params(kScalarCoupling, kPdmMass, qn, E);
    const auto grid = default_y_grid();
    const double at_root =
        ode_residual(kScalarCoupling, kPdmMass, qn, E, wp, grid).self_consistent;
    const double detuned =
        ode_residual(kScalarCoupling, kPdmMass, qn, E - 0.01, wp, grid).self_consistent;
    CHECK(detuned > 100.0 * at_root);
}

TEST_CASE("degenerate input and bad grids are rejected") {
    const QuantumNumbers qn{0, 0};
    const double E = solved_energy(kScalarCoupling, kPdmMass, qn);
    WaveParams wp = wave_params(kScalarCoupling, kPdmMass, qn, E);
    wp.norm = 0.0;
    CHECK_THROWS_AS(
        ode_residual(kScalarCoupling, kPdmMass, qn, E, wp, default_y_grid()),
        std::invalid_argument);
    wp.norm = 1.0;
    CHECK_THROWS_AS(
        ode_residual(kScalarCoupling, kPdmMass, qn, E, wp, {0.1, 0.2, 0.3}),
        std::invalid_argument);
    CHECK_THROWS_AS(
        ode_residual(kScalarCoupling, kPdmMass, qn, E, wp,
                     {0.1, 0.2, 0.3, 0.3, 0.4, 0.5, 0.6, 0.7}),
        std::invalid_argument);
}
