#include "kgy/cli.hpp"

#include "kgy/errors.hpp"
#include "kgy/nonrel.hpp"
#include "kgy/oracle.hpp"
#include "kgy/report.hpp"
#include "kgy/spectrum.hpp"
#include "kgy/wavefunc.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

namespace kgy {

namespace {

std::string g10(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

SpectrumMode parse_mode(const std::string& name) {
    static const std::map<std::string, SpectrumMode> table = {
        {"general", SpectrumMode::GeneralPdm},
        {"vector-only", SpectrumMode::VectorOnlyPdm},
        {"scalar-only", SpectrumMode::ScalarOnlyPdm},
        {"const-unequal", SpectrumMode::ConstMassUnequal},
        {"equal-doubled", SpectrumMode::ConstMassEqualDoubled},
        {"equal-single", SpectrumMode::ConstMassEqualSingle},
    };
    const auto it = table.find(name);
    if (it == table.end())
        throw CLI::ValidationError("--mode", "unknown mode '" + name + "'");
    return it->second;
}

BranchFilter parse_branch(const std::string& name) {
    if (name == "both") return BranchFilter::Both;
    if (name == "positive") return BranchFilter::Positive;
    if (name == "negative") return BranchFilter::Negative;
    throw CLI::ValidationError("--branch", "expected both|positive|negative");
}

// Injects values from a JSON config document as synthetic trailing options
// for every long option the user did not pass explicitly.
std::vector<std::string> apply_config(const std::vector<std::string>& args,
                                      std::ostream& err) {
    std::string path;
    for (size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size())
            path = args[i + 1];
        else if (args[i].rfind("--config=", 0) == 0)
            path = args[i].substr(9);
    }
    if (path.empty())
        return args;
    std::ifstream in(path);
    if (!in) {
        err << "cannot open config file: " << path << "\n";
        throw CLI::ValidationError("--config", "unreadable file");
    }
    nlohmann::json j;
    in >> j;
    if (!j.is_object())
        throw CLI::ValidationError("--config", "config must be a JSON object");

    std::vector<std::string> out = args;
    for (const auto& [key, value] : j.items()) {
        const std::string flag = "--" + key;
        bool given = false;
        for (const auto& a : args)
            if (a == flag || a.rfind(flag + "=", 0) == 0) {
                given = true;
                break;
            }
        if (given)
            continue;
        std::string rendered;
        if (value.is_string())
            rendered = value.get<std::string>();
        else if (value.is_boolean())
            rendered = value.get<bool>() ? "true" : "false";
        else
            rendered = value.dump();
        out.push_back(flag + "=" + rendered);
    }
    return out;
}

struct SolveArgs {
    std::string mode = "general";
    double m0 = 1.0, m1 = 0.0, v0 = 0.0, s0 = 0.0, lambda = 0.0, delta = 0.1;
    int n = 0, l = 0;
    std::string branch = "both";
    double emin = 0.0, emax = 0.0;
    bool has_emin = false, has_emax = false;
    int grid = 2048;
};

int cmd_solve(const SolveArgs& a, std::ostream& out) {
    const SpectrumMode mode = parse_mode(a.mode);
    ProblemParams params;
    params.coupling = CouplingSet{a.v0, a.s0, a.lambda, a.delta};
    params.mass = MassModel{a.m0, a.m1};
    std::optional<SearchWindow> window;
    if (a.has_emin || a.has_emax) {
        SearchWindow w = default_window(params.mass);
        if (a.has_emin) w.emin = a.emin;
        if (a.has_emax) w.emax = a.emax;
        window = w;
    }
    const auto levels =
        solve_levels(mode, params, QuantumNumbers{a.n, a.l}, window, parse_branch(a.branch),
                     a.grid);
    if (levels.empty()) {
        out << "no roots in window\n";
        return 0;
    }
    for (const auto& lvl : levels)
        out << "E = " << g10(lvl.value) << "  (" << (lvl.branch == Branch::Negative ? "negative" : "positive")
            << " branch, residual " << g10(lvl.residual) << ", " << lvl.iterations
            << " iterations)\n";
    return 0;
}

struct WaveArgs {
    SolveArgs solve;
    int points = 200;
    double rmax = 0.0;
    std::string out_path;
};

int cmd_wavefunction(const WaveArgs& wa, std::ostream& out) {
    const SpectrumMode mode = parse_mode(wa.solve.mode);
    ProblemParams params;
    params.coupling = CouplingSet{wa.solve.v0, wa.solve.s0, wa.solve.lambda, wa.solve.delta};
    params.mass = MassModel{wa.solve.m0, wa.solve.m1};
    const QuantumNumbers qn{wa.solve.n, wa.solve.l};
    const std::string branch = wa.solve.branch == "both" ? "positive" : wa.solve.branch;
    const auto levels = solve_levels(mode, params, qn, std::nullopt, parse_branch(branch));
    if (levels.empty())
        throw NotFoundError("no eigenvalue for the requested configuration");
    const EnergyLevel lvl = levels.back();

    // Equal-potential modes map onto v0 = s0 = strength for the shape.
    CouplingSet c = params.coupling;
    if (mode == SpectrumMode::ConstMassEqualDoubled)
        c.v0 = c.s0 = c.lambda;
    else if (mode == SpectrumMode::ConstMassEqualSingle)
        c.v0 = c.s0 = 0.5 * c.lambda;

    WaveParams wp = wave_params(c, params.mass, qn, lvl.value);
    wp.norm = normalize(wp, qn, c.delta);
    const double rmax = wa.rmax > 0.0 ? wa.rmax : 40.0 / (wp.p * c.delta);

    std::ostringstream csv;
    csv << "r,u\n";
    for (int i = 1; i <= wa.points; ++i) {
        const double r = rmax * i / wa.points;
        csv << g10(r) << ',' << g10(radial_eval(wp, qn, c.delta, r)) << '\n';
    }
    if (wa.out_path.empty()) {
        out << "# E = " << g10(lvl.value) << ", decay exponent " << g10(wp.p * c.delta)
            << ", nodes " << count_nodes(wp, qn, c.delta) << "\n"
            << csv.str();
    } else {
        std::ofstream f(wa.out_path);
        if (!f)
            throw std::runtime_error("cannot write " + wa.out_path);
        f << csv.str();
        out << "wrote " << wa.points << " samples to " << wa.out_path << "\n";
    }
    return 0;
}

int cmd_check(std::ostream& out) {
    struct Case {
        SpectrumMode mode;
        CouplingSet coupling;
        MassModel mass;
    };
    const std::vector<Case> cases = {
        {SpectrumMode::GeneralPdm, {1.0, 1.0, 0.0, 0.1}, {1.0, 0.1}},
        {SpectrumMode::VectorOnlyPdm, {1.0, 0.0, 0.0, 0.1}, {1.0, 0.1}},
        {SpectrumMode::ScalarOnlyPdm, {0.0, 1.0, 0.0, 0.1}, {1.0, 0.1}},
        {SpectrumMode::ConstMassUnequal, {2.0, 1.0, 0.0, 0.1}, {1.0, 0.0}},
        {SpectrumMode::ConstMassEqualDoubled, {0.0, 0.0, 2.0, 0.1}, {1.0, 0.0}},
        {SpectrumMode::ConstMassEqualSingle, {0.0, 0.0, 2.0, 0.1}, {1.0, 0.0}},
    };
    out << "mode,n,l,E,condition_residual,relation_residual,corrected_branch\n";
    for (const auto& cs : cases) {
        ProblemParams params{cs.coupling, cs.mass, UnitSystem{}};
        for (int n = 0; n <= 1; ++n)
            for (int l = 0; l <= 1; ++l) {
                const QuantumNumbers qn{n, l};
                std::vector<EnergyLevel> levels;
                try {
                    levels = solve_levels(cs.mode, params, qn);
                } catch (const NoRealStateError&) {
                    out << to_string(cs.mode) << ',' << n << ',' << l << ",,,no-real-state,\n";
                    continue;
                }
                for (const auto& lvl : levels) {
                    const CrossCheck cc = nu_cross_check(params, qn, lvl);
                    out << to_string(cs.mode) << ',' << n << ',' << l << ',' << g10(lvl.value)
                        << ',' << g10(cc.condition_residual) << ',' << g10(cc.relation_residual)
                        << ',' << (cc.corrected_branch ? "yes" : "no") << '\n';
                }
            }
    }
    return 0;
}

} // namespace

int run_cli(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Bound-state spectra for the effective-mass Klein-Gordon equation with "
                 "screened-Coulomb couplings"};
    app.require_subcommand(1);

    // solve ----------------------------------------------------------------
    SolveArgs sa;
    std::string solve_config;
    auto* solve = app.add_subcommand("solve", "Solve a closed energy relation for its levels");
    solve->add_option("--mode", sa.mode,
                      "general|vector-only|scalar-only|const-unequal|equal-doubled|equal-single");
    solve->add_option("--m0", sa.m0, "rest mass");
    solve->add_option("--m1", sa.m1, "mass-variation constant");
    solve->add_option("--v0", sa.v0, "vector strength");
    solve->add_option("--s0", sa.s0, "scalar strength");
    solve->add_option("--lambda", sa.lambda, "equal-potential strength");
    solve->add_option("--delta", sa.delta, "screening parameter");
    solve->add_option("--n", sa.n, "radial quantum number");
    solve->add_option("--l", sa.l, "orbital quantum number");
    solve->add_option("--branch", sa.branch, "both|positive|negative");
    auto* emin_opt = solve->add_option("--emin", sa.emin, "window lower edge");
    auto* emax_opt = solve->add_option("--emax", sa.emax, "window upper edge");
    solve->add_option("--grid", sa.grid, "scan grid points");
    solve->add_option("--config", solve_config, "JSON config file");

    // nonrel ---------------------------------------------------------------
    struct {
        double lambda = 1.0, delta = 0.1, hbar = 1.0, mu = 1.0;
        int n = 0, l = 0;
        std::string config;
    } na;
    auto* nonrel = app.add_subcommand("nonrel", "Closed-form nonrelativistic level");
    nonrel->add_option("--lambda", na.lambda, "potential strength");
    nonrel->add_option("--delta", na.delta, "screening parameter");
    nonrel->add_option("--n", na.n, "radial quantum number");
    nonrel->add_option("--l", na.l, "orbital quantum number");
    nonrel->add_option("--hbar", na.hbar, "hbar");
    nonrel->add_option("--mu", na.mu, "reduced mass");
    nonrel->add_option("--config", na.config, "JSON config file");

    // wavefunction ----------------------------------------------------------
    WaveArgs wa;
    auto* wave = app.add_subcommand("wavefunction", "Sample a solved eigenfunction to CSV");
    wave->add_option("--mode", wa.solve.mode, "energy relation");
    wave->add_option("--m0", wa.solve.m0, "rest mass");
    wave->add_option("--m1", wa.solve.m1, "mass-variation constant");
    wave->add_option("--v0", wa.solve.v0, "vector strength");
    wave->add_option("--s0", wa.solve.s0, "scalar strength");
    wave->add_option("--lambda", wa.solve.lambda, "equal-potential strength");
    wave->add_option("--delta", wa.solve.delta, "screening parameter");
    wave->add_option("--n", wa.solve.n, "radial quantum number");
    wave->add_option("--l", wa.solve.l, "orbital quantum number");
    wave->add_option("--branch", wa.solve.branch, "positive|negative");
    wave->add_option("--points", wa.points, "sample count");
    wave->add_option("--rmax", wa.rmax, "sampling range (default 40 decay lengths)");
    wave->add_option("--out", wa.out_path, "CSV destination (default standard output)");
    std::string wave_config;
    wave->add_option("--config", wave_config, "JSON config file");

    // oracle ----------------------------------------------------------------
    struct {
        double lambda = 1.0, delta = 0.1, hbar = 1.0, mu = 1.0, rmin = 0.0, rmax = 0.0;
        int l = 0, nodes = 0, count = 20000;
        std::string config;
    } oa;
    auto* oracle = app.add_subcommand("oracle", "Direct-integration eigenvalue (exact potential)");
    oracle->add_option("--lambda", oa.lambda, "potential strength");
    oracle->add_option("--delta", oa.delta, "screening parameter");
    oracle->add_option("--l", oa.l, "orbital quantum number");
    oracle->add_option("--nodes", oa.nodes, "radial node count");
    oracle->add_option("--hbar", oa.hbar, "hbar");
    oracle->add_option("--mu", oa.mu, "reduced mass");
    oracle->add_option("--rmin", oa.rmin, "grid start");
    oracle->add_option("--rmax", oa.rmax, "grid end");
    oracle->add_option("--count", oa.count, "grid points");
    oracle->add_option("--config", oa.config, "JSON config file");

    // table -----------------------------------------------------------------
    struct {
        int id = 0;
        std::string format = "csv";
        std::string out_path;
        std::string convention;
        double match_tol = 1e-4;
        int numerov_count = 20000;
        std::string data;
        std::string config;
    } ta;
    auto* table = app.add_subcommand("table", "Reproduce a reference table as a deviation report");
    table->add_option("--id", ta.id, "table id 1..6")->required();
    table->add_option("--format", ta.format, "csv|json");
    table->add_option("--out", ta.out_path, "destination (default standard output)");
    table->add_option("--delta-convention", ta.convention,
                      "glambda|glambda-half|glambda-sq-half (table 5; default all)");
    table->add_option("--match-tol", ta.match_tol, "relative deviation counted as a match");
    table->add_option("--numerov-count", ta.numerov_count, "integrator grid points");
    table->add_option("--data", ta.data, "table data file override");
    table->add_option("--config", ta.config, "JSON config file");

    // check -----------------------------------------------------------------
    auto* check =
        app.add_subcommand("check", "Quantization-condition consistency matrix across modes");
    (void)check;

    std::vector<std::string> args;
    try {
        args = apply_config(raw_args, err);
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 1;
    }

    try {
        // CLI11 consumes arguments in reverse order.
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? 0 : 1;
    }

    try {
        if (solve->parsed()) {
            sa.has_emin = emin_opt->count() > 0;
            sa.has_emax = emax_opt->count() > 0;
            return cmd_solve(sa, out);
        }
        if (nonrel->parsed()) {
            const double e =
                nonrel_energy(na.lambda, na.delta, QuantumNumbers{na.n, na.l},
                              UnitSystem{na.hbar, na.mu, false});
            out << g10(e) << "\n";
            return 0;
        }
        if (wave->parsed())
            return cmd_wavefunction(wa, out);
        if (oracle->parsed()) {
            const QuantumNumbers qn{oa.nodes, oa.l};
            const UnitSystem units{oa.hbar, oa.mu, false};
            RadialGrid grid = default_grid(oa.lambda, qn, units);
            if (oa.rmin > 0.0) grid.r_min = oa.rmin;
            if (oa.rmax > 0.0) grid.r_max = oa.rmax;
            grid.count = oa.count;
            const NumerovLevel lvl =
                numerov_eigenvalue(oa.lambda, oa.delta, oa.l, oa.nodes, grid, units);
            out << "E = " << g10(lvl.energy) << "  (nodes " << lvl.nodes << ")\n";
            if (lvl.accuracy_warning)
                out << "warning: grid-doubling disagreement, refined E = "
                    << g10(lvl.refined_energy) << "\n";
            return 0;
        }
        if (table->parsed()) {
            TableOptions opt;
            opt.match_tol = ta.match_tol;
            opt.numerov_count = ta.numerov_count;
            if (!ta.data.empty())
                opt.data_path = ta.data;
            if (!ta.convention.empty()) {
                if (ta.convention == "glambda")
                    opt.convention = DeltaConvention::GLambda;
                else if (ta.convention == "glambda-half")
                    opt.convention = DeltaConvention::GLambdaHalf;
                else if (ta.convention == "glambda-sq-half")
                    opt.convention = DeltaConvention::GLambdaSqHalf;
                else {
                    err << "unknown delta convention '" << ta.convention << "'\n";
                    return 1;
                }
            }
            if (ta.id < 1 || ta.id > 6) {
                err << "table id must be 1..6\n";
                return 1;
            }
            if (ta.format != "json" && ta.format != "csv") {
                err << "unknown format '" << ta.format << "'\n";
                return 1;
            }
            const ReportFormat fmt =
                ta.format == "json" ? ReportFormat::Json : ReportFormat::Csv;
            const ComparisonReport report = reproduce_table(ta.id, opt);
            if (ta.out_path.empty())
                emit(report, fmt, out);
            else
                emit_to_file(report, fmt, ta.out_path);
            return 0;
        }
        if (check->parsed())
            return cmd_check(out);
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    err << "no subcommand\n";
    return 1;
}

int run_cli(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run_cli(args, std::cout, std::cerr);
}

} // namespace kgy
