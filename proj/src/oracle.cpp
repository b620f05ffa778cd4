#include "kgy/oracle.hpp"

#include "kgy/errors.hpp"
#include "kgy/nonrel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace kgy {

void RadialGrid::validate() const {
    if (!(r_min > 0.0) || !(r_max > r_min))
        throw std::invalid_argument("radial grid needs 0 < r_min < r_max");
    if (count < 1000)
        throw std::invalid_argument("radial grid needs at least 1000 points");
}

RadialGrid default_grid(double lambda, const QuantumNumbers& qn, const UnitSystem& units) {
    qn.validate();
    units.validate();
    if (!(lambda > 0.0))
        throw std::invalid_argument("lambda must be positive");
    const double ec = coulomb_energy(lambda, qn, units);
    const double kappa = std::sqrt(2.0 * units.mu * std::abs(ec)) / units.hbar;
    RadialGrid g;
    g.r_max = std::max(50.0, 40.0 / kappa);
    return g;
}

namespace {

struct NumerovWork {
    std::vector<double> r;
    std::vector<double> base; // 2 mu V / hbar^2 + l(l+1)/r^2
    double h;
    double mu_h2; // 2 mu / hbar^2
    int l;
    double lambda;
    double seed_slope; // mu lambda / (hbar^2 (l+1)), first-order shape near 0
};

NumerovWork make_work(double lambda, double delta, int l, const RadialGrid& grid,
                      const UnitSystem& units) {
    NumerovWork w;
    w.l = l;
    w.lambda = lambda;
    w.mu_h2 = 2.0 * units.mu / (units.hbar * units.hbar);
    w.h = (grid.r_max - grid.r_min) / (grid.count - 1);
    w.r.resize(grid.count);
    w.base.resize(grid.count);
    const double ll = static_cast<double>(l) * (l + 1);
    for (int i = 0; i < grid.count; ++i) {
        const double r = grid.r_min + i * w.h;
        w.r[i] = r;
        w.base[i] = w.mu_h2 * yukawa_value(lambda, delta, r) + ll / (r * r);
    }
    w.seed_slope = units.mu * lambda / (units.hbar * units.hbar * (l + 1.0));
    return w;
}

constexpr double kRescale = 1e250;

// Outward sweep across the whole grid, counting sign changes. Starts at the
// second grid point with the regular small-r shape r^{l+1}(1 - slope r); the
// first point sits too close to the centrifugal wall for the recurrence.
int outward_nodes(const NumerovWork& w, double E) {
    const int N = static_cast<int>(w.r.size());
    const double h2 = w.h * w.h / 12.0;
    auto T = [&](int i) { return h2 * (w.base[i] - w.mu_h2 * E); };
    auto seed = [&](int i) {
        return std::pow(w.r[i], w.l + 1) * (1.0 - w.seed_slope * w.r[i]);
    };
    double prev = seed(1), cur = seed(2);
    double Tm = T(1), Tc = T(2);
    int nodes = 0;
    for (int i = 3; i < N; ++i) {
        const double Tn = T(i);
        const double nxt = ((2.0 + 10.0 * Tc) * cur - (1.0 - Tm) * prev) / (1.0 - Tn);
        if (cur != 0.0 && (nxt < 0.0) != (cur < 0.0))
            ++nodes;
        prev = cur;
        cur = nxt;
        Tm = Tc;
        Tc = Tn;
        if (std::abs(cur) > kRescale) {
            prev /= kRescale;
            cur /= kRescale;
        }
    }
    return nodes;
}

// Propagates outward up to index last (inclusive) and returns the tail
// values needed for a five-point derivative at the matching index.
void outward_sweep(const NumerovWork& w, double E, int last, std::vector<double>& u) {
    const double h2 = w.h * w.h / 12.0;
    auto T = [&](int i) { return h2 * (w.base[i] - w.mu_h2 * E); };
    u.assign(last + 1, 0.0);
    u[0] = std::pow(w.r[0], w.l + 1) * (1.0 - w.seed_slope * w.r[0]);
    u[1] = std::pow(w.r[1], w.l + 1) * (1.0 - w.seed_slope * w.r[1]);
    u[2] = std::pow(w.r[2], w.l + 1) * (1.0 - w.seed_slope * w.r[2]);
    double Tm = T(1), Tc = T(2);
    for (int i = 3; i <= last; ++i) {
        const double Tn = T(i);
        u[i] = ((2.0 + 10.0 * Tc) * u[i - 1] - (1.0 - Tm) * u[i - 2]) / (1.0 - Tn);
        Tm = Tc;
        Tc = Tn;
        if (std::abs(u[i]) > kRescale)
            for (int j = 0; j <= i; ++j)
                u[j] /= kRescale;
    }
}

// Propagates inward from the right edge down to index first (inclusive).
void inward_sweep(const NumerovWork& w, double E, int first, std::vector<double>& u) {
    const int N = static_cast<int>(w.r.size());
    const double h2 = w.h * w.h / 12.0;
    auto T = [&](int i) { return h2 * (w.base[i] - w.mu_h2 * E); };
    u.assign(N, 0.0);
    const double kappa = std::sqrt(std::max(-w.mu_h2 * E, 1e-30));
    u[N - 1] = 1e-20;
    u[N - 2] = 1e-20 * std::exp(kappa * w.h);
    double Tp = T(N - 1), Tc = T(N - 2);
    for (int i = N - 3; i >= first; --i) {
        const double Tn = T(i);
        u[i] = ((2.0 + 10.0 * Tc) * u[i + 1] - (1.0 - Tp) * u[i + 2]) / (1.0 - Tn);
        Tp = Tc;
        Tc = Tn;
        if (std::abs(u[i]) > kRescale)
            for (int j = i; j < N; ++j)
                u[j] /= kRescale;
    }
}

int matching_index(const NumerovWork& w, double E) {
    const int N = static_cast<int>(w.r.size());
    // Outermost point where E crosses the effective potential.
    for (int i = N - 2; i >= 1; --i) {
        const double veff = w.base[i] / w.mu_h2;
        const double veff_next = w.base[i + 1] / w.mu_h2;
        if ((E - veff) > 0.0 && (E - veff_next) <= 0.0)
            return std::clamp(i, 4, N - 6);
    }
    return N / 2; // no turning point in range
}

// Log-derivative mismatch (u'_L/u_L - u'_R/u_R) at the matching index, from
// five-point central stencils on each sweep.
double matching_defect(const NumerovWork& w, double E, int match) {
    std::vector<double> ul, ur;
    outward_sweep(w, E, match + 2, ul);
    inward_sweep(w, E, match - 2, ur);
    const auto deriv = [&](const std::vector<double>& u, int i) {
        return (u[i - 2] - 8.0 * u[i - 1] + 8.0 * u[i + 1] - u[i + 2]) / (12.0 * w.h);
    };
    const double vl = ul[match], vr = ur[match];
    if (vl == 0.0 || vr == 0.0)
        return std::numeric_limits<double>::quiet_NaN();
    return deriv(ul, match) / vl - deriv(ur, match) / vr;
}

double solve_on_grid(double lambda, double delta, int l, int target_nodes,
                     const RadialGrid& grid, const UnitSystem& units, int* nodes_out,
                     double margin_scale = 1.0) {
    const NumerovWork w = make_work(lambda, delta, l, grid, units);
    const QuantumNumbers qn{target_nodes, l};
    const double ec = coulomb_energy(lambda, qn, units);
    // The pure-Coulomb level bounds the screened one from below; pad the
    // margin past the discretization error of coarse grids.
    double margin = margin_scale * std::max(0.02 * std::abs(ec), 1e-6);
    double lo = ec - margin;
    double hi = -1e-12;
    if (outward_nodes(w, hi) <= target_nodes)
        throw NotFoundError("no bound state with the requested node count in the window");
    for (int k = 0; k < 40 && outward_nodes(w, lo) > target_nodes; ++k) {
        margin *= 2.0;
        lo = ec - margin;
    }
    if (outward_nodes(w, lo) > target_nodes)
        throw NotFoundError("search window bottom already above the requested state");

    // Phase 1: bracket the node-count transition.
    const double tol = 1e-9 * std::max(1.0, std::abs(ec));
    while (hi - lo > std::max(1e-4 * std::abs(ec), 8.0 * tol)) {
        const double mid = 0.5 * (lo + hi);
        if (outward_nodes(w, mid) <= target_nodes)
            lo = mid;
        else
            hi = mid;
    }

    // Phase 2: refine on the matching defect when it brackets; otherwise
    // keep narrowing the node transition, which converges to the same point.
    const int match = matching_index(w, 0.5 * (lo + hi));
    double flo = matching_defect(w, lo, match);
    const double fhi = matching_defect(w, hi, match);
    bool use_defect =
        std::isfinite(flo) && std::isfinite(fhi) && (flo < 0.0) != (fhi < 0.0);
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (use_defect) {
            const double fm = matching_defect(w, mid, match);
            if (!std::isfinite(fm)) {
                use_defect = false; // node at the match point, fall back
                continue;
            }
            if ((fm < 0.0) == (flo < 0.0)) {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
            }
        } else {
            if (outward_nodes(w, mid) <= target_nodes)
                lo = mid;
            else
                hi = mid;
        }
    }
    const double E = 0.5 * (lo + hi);
    if (nodes_out) {
        // Node count of the merged eigenfunction.
        std::vector<double> ul, ur;
        outward_sweep(w, E, match + 2, ul);
        inward_sweep(w, E, match - 2, ur);
        const double scale = ul[match] / ur[match];
        int nodes = 0;
        double prev = ul[1];
        for (int i = 2; i <= match; ++i) {
            if (prev != 0.0 && ul[i] != 0.0 && (prev < 0.0) != (ul[i] < 0.0))
                ++nodes;
            prev = ul[i];
        }
        for (int i = match + 1; i < static_cast<int>(w.r.size()); ++i) {
            const double cur = scale * ur[i];
            if (prev != 0.0 && cur != 0.0 && (prev < 0.0) != (cur < 0.0))
                ++nodes;
            if (cur != 0.0)
                prev = cur;
        }
        *nodes_out = nodes;
    }
    return E;
}

} // namespace

NumerovLevel numerov_eigenvalue(double lambda, double delta, int l, int target_nodes,
                                const RadialGrid& grid, const UnitSystem& units) {
    grid.validate();
    units.validate();
    if (l < 0 || target_nodes < 0)
        throw std::invalid_argument("l and target_nodes must be non-negative");
    if (!(lambda > 0.0) || !(delta > 0.0))
        throw std::invalid_argument("lambda and delta must be positive");

    NumerovLevel out;
    out.energy = solve_on_grid(lambda, delta, l, target_nodes, grid, units, &out.nodes);

    // The refined run starts from a deliberately different bracket so the
    // two bisection paths are independent and the comparison reflects the
    // actual grid sensitivity.
    RadialGrid fine = grid;
    fine.count = 2 * grid.count;
    out.refined_energy =
        solve_on_grid(lambda, delta, l, target_nodes, fine, units, nullptr, 1.5);
    out.accuracy_warning = std::abs(out.refined_energy - out.energy) >
                           1e-6 * std::max(1.0, std::abs(out.energy));
    return out;
}

std::array<double, 3> residual_quadratic_fit(SpectrumMode mode, const ProblemParams& params,
                                             const QuantumNumbers& qn) {
    params.validate();
    qn.validate();
    const double h = 0.5 * params.mass.m0;
    const auto f = [&](double e) { return residual(mode, params, qn, e); };
    const double f0 = f(0.0), fp = f(h), fm = f(-h);
    const double c0 = f0;
    const double c1 = (fp - fm) / (2.0 * h);
    const double c2 = (fp + fm - 2.0 * f0) / (2.0 * h * h);
    // A fourth point must land on the parabola exactly.
    const double e4 = 0.25 * params.mass.m0;
    const double predicted = c2 * e4 * e4 + c1 * e4 + c0;
    const double actual = f(e4);
    const double tol = 1e-10 * std::max({1.0, std::abs(f0), std::abs(fp), std::abs(fm)});
    if (std::abs(predicted - actual) > tol)
        throw std::logic_error("residual is not quadratic in E: formula implementation bug");
    return {c2, c1, c0};
}

std::vector<double> quadratic_roots(SpectrumMode mode, const ProblemParams& params,
                                    const QuantumNumbers& qn,
                                    std::optional<SearchWindow> window) {
    const auto c = residual_quadratic_fit(mode, params, qn);
    const SearchWindow win = window ? *window : default_window(params.mass);
    const double disc = c[1] * c[1] - 4.0 * c[0] * c[2];
    std::vector<double> roots;
    if (disc < 0.0)
        return roots;
    // Numerically stable quadratic formula.
    const double sq = std::sqrt(disc);
    const double qq = -0.5 * (c[1] + (c[1] >= 0.0 ? sq : -sq));
    double r1 = qq / c[0];
    double r2 = (qq != 0.0) ? c[2] / qq : -c[1] / (2.0 * c[0]) ;
    if (r1 > r2)
        std::swap(r1, r2);
    for (double r : {r1, r2})
        if (r >= win.emin && r <= win.emax)
            roots.push_back(r);
    if (roots.size() == 2 && roots[0] == roots[1])
        roots.pop_back();
    return roots;
}

ApproximationGap approximation_gap(double lambda, double delta, const QuantumNumbers& qn,
                                   const UnitSystem& units) {
    ApproximationGap g{};
    g.e_analytic = nonrel_energy(lambda, delta, qn, units);
    const RadialGrid grid = default_grid(lambda, qn, units);
    g.e_numerov = numerov_eigenvalue(lambda, delta, qn.l, qn.n, grid, units).energy;
    g.gap = std::abs(g.e_analytic - g.e_numerov);
    return g;
}

} // namespace kgy
