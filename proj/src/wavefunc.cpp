#include "kgy/wavefunc.hpp"

#include "kgy/errors.hpp"
#include "kgy/spectrum.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace kgy {

double jacobi_eval(int n, double a, double b, double x) {
    if (n < 0)
        throw std::invalid_argument("jacobi degree must be non-negative");
    if (n == 0)
        return 1.0;
    double y0 = 1.0;
    double y1 = 0.5 * (a - b + (a + b + 2.0) * x);
    for (int k = 2; k <= n; ++k) {
        const double denom = 2.0 * k * (k + a + b) * (2.0 * k + a + b - 2.0);
        const double g1 = (2.0 * k + a + b - 1.0) *
                          ((2.0 * k + a + b) * (2.0 * k + a + b - 2.0) * x + a * a - b * b);
        const double g0 = -2.0 * (k + a - 1.0) * (k + b - 1.0) * (2.0 * k + a + b);
        const double yk = (g1 * y1 + g0 * y0) / denom;
        y0 = y1;
        y1 = yk;
    }
    return y1;
}

WaveParams wave_params(const CouplingSet& c, const MassModel& m, const QuantumNumbers& qn,
                       double E) {
    c.validate();
    m.validate();
    qn.validate();
    if (!(std::abs(E) < m.m0))
        throw std::domain_error("energy outside the bound window |E| < m0");
    const double d = c.delta;
    const double ll = static_cast<double>(qn.l) * (qn.l + 1);
    WaveParams wp{};
    wp.p = std::sqrt((m.m0 * m.m0 - E * E) / (d * d) + ll);
    const double w = 1.0 + 2.0 * qn.l;
    const double arg = w * w + 8.0 * m.m1 * c.s0 / d + 4.0 * (c.v0 * c.v0 - m.m1 * m.m1 * c.s0 * c.s0);
    if (arg < 0.0)
        throw NoRealStateError(arg);
    wp.jb = std::sqrt(arg);
    wp.ja = 2.0 * wp.p;
    wp.q = 0.5 + 0.5 * wp.jb;
    return wp;
}

double radial_eval(const WaveParams& wp, const QuantumNumbers& qn, double delta, double r) {
    if (!(delta > 0.0) || !(r > 0.0))
        throw std::domain_error("radial_eval needs delta > 0 and r > 0");
    const double y = std::exp(-delta * r);
    const double omy = -std::expm1(-delta * r); // 1 - y, accurate near r = 0
    return wp.norm * std::pow(y, wp.p) * std::pow(omy, wp.q) *
           jacobi_eval(qn.n, wp.ja, wp.jb, 1.0 - 2.0 * y);
}

namespace {

// Composite Simpson of f on [a, b] with 2^k panels.
template <typename F>
double simpson(const F& f, double a, double b, int panels) {
    const double h = (b - a) / panels;
    double acc = f(a) + f(b);
    for (int i = 1; i < panels; ++i)
        acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

} // namespace

double normalize(const WaveParams& wp, const QuantumNumbers& qn, double delta) {
    if (!(wp.p > 0.0))
        throw NonNormalizableError("decay exponent p <= 0: state is not normalizable");
    if (wp.norm == 0.0)
        throw std::invalid_argument("zero amplitude cannot be normalized");
    const double a = 1e-6 / delta;
    const double b = 40.0 / (wp.p * delta);
    const auto f = [&](double r) {
        const double u = radial_eval(wp, qn, delta, r);
        return u * u;
    };
    int panels = 256;
    double prev = simpson(f, a, b, panels);
    for (int k = 0; k < 16; ++k) {
        panels *= 2;
        const double cur = simpson(f, a, b, panels);
        if (std::abs(cur - prev) <= 1e-8 * std::abs(cur)) {
            prev = cur;
            break;
        }
        prev = cur;
    }
    return 1.0 / std::sqrt(prev);
}

int count_nodes(const WaveParams& wp, const QuantumNumbers& qn, double delta, int grid_points) {
    if (grid_points < 16)
        throw std::invalid_argument("grid too coarse for node counting");
    const double a = 1e-4 / delta;
    const double b = 40.0 / (std::max(wp.p, 0.25) * delta);
    const double h = (b - a) / (grid_points - 1);
    int nodes = 0;
    double prev = radial_eval(wp, qn, delta, a);
    for (int i = 1; i < grid_points; ++i) {
        const double cur = radial_eval(wp, qn, delta, a + i * h);
        if (prev != 0.0 && cur != 0.0 && (prev < 0.0) != (cur < 0.0))
            ++nodes;
        if (cur != 0.0)
            prev = cur;
    }
    return nodes;
}

namespace {

// Fornberg weights for the m-th derivative at x0 from the nodes x[0..nn-1].
// B. Fornberg, "Generation of finite difference formulas on arbitrarily
// spaced grids", Math. Comp. 51 (1988).
void fd_weights(const double* x, int nn, double x0, int m, double* w) {
    std::vector<double> c((m + 1) * nn, 0.0);
    auto C = [&](int j, int k) -> double& { return c[k * nn + j]; };
    double c1 = 1.0;
    double c4 = x[0] - x0;
    C(0, 0) = 1.0;
    for (int i = 1; i < nn; ++i) {
        const int mn = std::min(i, m);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = x[i] - x0;
        for (int j = 0; j < i; ++j) {
            const double c3 = x[i] - x[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k)
                    C(i, k) = c1 * (k * C(i - 1, k - 1) - c5 * C(i - 1, k)) / c2;
                C(i, 0) = -c1 * c5 * C(i - 1, 0) / c2;
            }
            for (int k = mn; k >= 1; --k)
                C(j, k) = (c4 * C(j, k) - k * C(j, k - 1)) / c3;
            C(j, 0) = c4 * C(j, 0) / c3;
        }
        c1 = c2;
    }
    for (int j = 0; j < nn; ++j)
        w[j] = C(j, m);
}

} // namespace

OdeResidual ode_residual(const CouplingSet& c, const MassModel& m, const QuantumNumbers& qn,
                         double E, const WaveParams& wp, const std::vector<double>& y_grid) {
    if (!(std::abs(E) < m.m0))
        throw std::domain_error("trial energy outside the bound window |E| < m0");
    if (y_grid.size() < 7)
        throw std::invalid_argument("y grid too small");
    for (size_t i = 0; i + 1 < y_grid.size(); ++i)
        if (!(y_grid[i] > 0.0 && y_grid[i] < y_grid[i + 1] && y_grid[i + 1] < 1.0))
            throw std::invalid_argument("y grid must be strictly increasing inside (0, 1)");

    const size_t N = y_grid.size();
    std::vector<double> u(N);
    double umax = 0.0;
    for (size_t i = 0; i < N; ++i) {
        const double y = y_grid[i];
        u[i] = wp.norm * std::pow(y, wp.p) * std::pow(1.0 - y, wp.q) *
               jacobi_eval(qn.n, wp.ja, wp.jb, 1.0 - 2.0 * y);
        umax = std::max(umax, std::abs(u[i]));
    }
    if (umax == 0.0)
        throw std::invalid_argument("degenerate input: u vanishes on the whole grid");

    const RadialCoefficients A = radial_coefficients(c, m, qn, E);
    const double ll = static_cast<double>(qn.l) * (qn.l + 1);
    const double p2 = (m.m0 * m.m0 - E * E) / (c.delta * c.delta) + ll;
    const double pE = std::sqrt(p2);

    // Numerator polynomials for the three variants.
    const std::array<std::array<double, 3>, 3> numerators = {{
        {A.A1, A.A2, A.A3},  // verbatim
        {A.A1, A.A2, p2},    // A3 sign-corrected to the real decay exponent
        {-(qn.n + pE + wp.q) * (qn.n + pE + wp.q),
         qn.n * qn.n + 2.0 * qn.n * pE + 2.0 * p2 + wp.q * (2.0 * qn.n + 2.0 * pE + 1.0),
         -p2}, // self-consistent
    }};

    std::array<double, 3> worst{0.0, 0.0, 0.0};
    std::array<double, 3> scale{0.0, 0.0, 0.0};

    std::array<double, 5> w1, w2;
    for (size_t i = 2; i + 2 < N; ++i) {
        const double* xs = &y_grid[i - 2];
        fd_weights(xs, 5, y_grid[i], 1, w1.data());
        fd_weights(xs, 5, y_grid[i], 2, w2.data());
        double du = 0.0, ddu = 0.0;
        for (int k = 0; k < 5; ++k) {
            du += w1[k] * u[i - 2 + k];
            ddu += w2[k] * u[i - 2 + k];
        }
        const double y = y_grid[i];
        const double first = du / y; // (1-y)/(y(1-y)) = 1/y
        const double denom = y * y * (1.0 - y) * (1.0 - y);
        for (int v = 0; v < 3; ++v) {
            const auto& nm = numerators[v];
            const double zero = (nm[0] * y * y + nm[1] * y + nm[2]) * u[i] / denom;
            const double res = ddu + first + zero;
            const double mag = std::abs(ddu) + std::abs(first) + std::abs(zero);
            worst[v] = std::max(worst[v], std::abs(res));
            scale[v] = std::max(scale[v], mag);
        }
    }

    OdeResidual out{};
    out.verbatim = worst[0] / scale[0];
    out.sign_corrected = worst[1] / scale[1];
    out.self_consistent = worst[2] / scale[2];
    return out;
}

std::vector<double> default_y_grid(int points, double eps) {
    if (points < 16 || !(eps > 0.0) || !(eps < 0.5))
        throw std::invalid_argument("bad grid request");
    std::vector<double> g;
    g.reserve(points);
    const int half = points / 2;
    // Geometric march from each edge toward the middle. The mirrored half is
    // built from the same values; a point only joins if it advances by a
    // sensible fraction of the local spacing (the two marches meet at 1/2 up
    // to rounding).
    const double ratio = std::log(0.5 / eps);
    for (int i = 0; i < half; ++i)
        g.push_back(eps * std::exp(ratio * i / (half - 1.0)));
    for (int i = half - 1; i >= 0; --i) {
        const double v = 1.0 - g[i];
        if (v - g.back() > 0.25 * (g.back() - g[g.size() - 2]))
            g.push_back(v);
    }
    return g;
}

} // namespace kgy
