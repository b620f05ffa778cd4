#include "kgy/report.hpp"

#include "kgy/errors.hpp"
#include "kgy/nonrel.hpp"
#include "kgy/oracle.hpp"
#include "kgy/spectrum.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

namespace kgy {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
const double kSqrt2 = std::sqrt(2.0);

std::string fmt10(double v) {
    if (std::isnan(v))
        return "";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

double round10(double v) {
    if (std::isnan(v))
        return v;
    return std::strtod(fmt10(v).c_str(), nullptr);
}

std::string fmt_int(int v) {
    return v < 0 ? std::string{} : std::to_string(v);
}

std::string table_tag(int id, const std::string& column) {
    if (id == 4)
        return column == "present_E" ? "4a" : "4b";
    return std::to_string(id);
}

std::string cell_key(const std::string& table, const TableCellSpec& c) {
    return table + "|" + c.group + "|" + c.column + "|" + fmt_int(c.n) + "|" + fmt_int(c.l) +
           "|" + fmt10(c.g) + "|" + fmt10(c.delta) + "|" + fmt10(c.lambda);
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur.push_back(ch);
        }
    }
    out.push_back(cur);
    return out;
}

} // namespace

const char* to_string(DeltaConvention c) {
    switch (c) {
        case DeltaConvention::GLambda: return "g*lambda";
        case DeltaConvention::GLambdaHalf: return "g*lambda/2";
        case DeltaConvention::GLambdaSqHalf: return "g*lambda^2/2";
    }
    return "?";
}

double convention_delta(DeltaConvention c, double g, double lambda) {
    switch (c) {
        case DeltaConvention::GLambda: return g * lambda;
        case DeltaConvention::GLambdaHalf: return 0.5 * g * lambda;
        case DeltaConvention::GLambdaSqHalf: return 0.5 * g * lambda * lambda;
    }
    return kNaN;
}

TableSpec table_spec(int id) {
    TableSpec spec;
    spec.id = id;
    const auto cell = [&](std::string group, std::string column, int n, int l, double g,
                          double delta, double lambda, double v0, double s0) {
        spec.cells.push_back(TableCellSpec{std::move(group), std::move(column), n, l, g, delta,
                                           lambda, v0, s0});
    };

    switch (id) {
        case 1: {
            spec.caption = "vector screened coupling, m0=1 m1=0.1 s0=0";
            const std::pair<int, int> nl[] = {{0, 0}, {1, 0}, {1, 1}, {2, 0}, {2, 1}, {2, 2}};
            for (auto [n, l] : nl)
                for (auto [delta, v0] : {std::pair{0.01, 0.10}, std::pair{0.10, 0.01}})
                    for (const char* col :
                         {"present_E", "ref27_E", "present_negE", "ref27_negE"})
                        cell("", col, n, l, kNaN, delta, kNaN, v0, 0.0);
            break;
        }
        case 2:
        case 3: {
            spec.caption = id == 2 ? "mixed couplings, m0=1 m1=0.1"
                                   : "single couplings, m0=1 m1=0.1";
            const std::pair<int, int> nl[] = {{0, 0}, {1, 0}, {0, 1}, {1, 1},
                                              {0, 2}, {2, 0}, {2, 1}};
            const auto groups = id == 2
                                    ? std::vector<std::pair<double, double>>{{1, 2}, {2, 1}}
                                    : std::vector<std::pair<double, double>>{{1, 0}, {0, 1}};
            for (auto [n, l] : nl)
                for (double delta : {0.1, 0.2})
                    for (auto [v0, s0] : groups) {
                        char buf[32];
                        std::snprintf(buf, sizeof buf, "v0=%g s0=%g", v0, s0);
                        for (const char* col : {"present_E", "present_negE"})
                            cell(buf, col, n, l, kNaN, delta, kNaN, v0, s0);
                    }
            break;
        }
        case 4: {
            spec.caption = "constant mass, m0=1 m1=0";
            const std::pair<int, int> nl[] = {{0, 0}, {1, 0}, {0, 1}, {1, 1},
                                              {0, 2}, {2, 0}, {2, 1}};
            for (const char* col : {"present_E", "present_negE"})
                for (auto [n, l] : nl)
                    for (double delta : {0.1, 0.2}) {
                        cell("v0=s0=2", col, n, l, kNaN, delta, 2.0, 2.0, 2.0);
                        cell("v0=2 s0=1", col, n, l, kNaN, delta, kNaN, 2.0, 1.0);
                        cell("v0=1 s0=2", col, n, l, kNaN, delta, kNaN, 1.0, 2.0);
                    }
            break;
        }
        case 5: {
            spec.caption = "nonrelativistic -E, lambda=sqrt(2), hbar=mu=1, screening per g";
            const std::tuple<const char*, int, int> states[] = {{"2p", 0, 1},
                                                                {"3p", 1, 1},
                                                                {"3d", 0, 2}};
            for (auto [st, n, l] : states)
                for (double g : {0.002, 0.005, 0.010, 0.020, 0.025, 0.050})
                    for (const char* col : {"present", "ref32", "ref33"})
                        cell(st, col, n, l, g, kNaN, kNaN, kNaN, kNaN);
            break;
        }
        case 6: {
            spec.caption = "nonrelativistic -E, hbar=1 mu=1/2 delta=0.4, ground state per l";
            const std::pair<double, int> rows[] = {{4, 0},  {8, 0},  {8, 1},  {16, 0},
                                                   {16, 1}, {24, 0}, {24, 1}, {24, 2}};
            for (auto [lambda, l] : rows)
                for (const char* col : {"present", "ref34", "ref33"})
                    cell("", col, 0, l, kNaN, 0.4, lambda, kNaN, kNaN);
            break;
        }
        default:
            throw std::invalid_argument("table id must be 1..6");
    }
    return spec;
}

PaperTables PaperTables::load(const std::string& csv_path) {
    std::ifstream in(csv_path);
    if (!in)
        throw std::runtime_error("cannot open table data file: " + csv_path);
    PaperTables t;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        if (!header_seen) { // header row
            header_seen = true;
            continue;
        }
        const auto f = split_csv(line);
        if (f.size() != 11)
            throw std::runtime_error("malformed table data row: " + line);
        const auto num = [](const std::string& s) {
            return s.empty() ? kNaN : std::strtod(s.c_str(), nullptr);
        };
        const auto idx = [](const std::string& s) {
            return s.empty() ? -1 : std::atoi(s.c_str());
        };
        TableCellSpec c;
        c.group = f[1];
        c.column = f[2];
        c.n = idx(f[3]);
        c.l = idx(f[4]);
        c.g = num(f[5]);
        c.delta = num(f[6]);
        c.lambda = num(f[7]);
        c.v0 = num(f[8]);
        c.s0 = num(f[9]);
        const std::string key = cell_key(f[0], c);
        if (!t.values_.emplace(key, num(f[10])).second)
            throw std::runtime_error("duplicate table cell: " + key);
    }
    return t;
}

double PaperTables::value(const TableCellSpec& cell, int table_id) const {
    const std::string key = cell_key(table_tag(table_id, cell.column), cell);
    const auto it = values_.find(key);
    if (it == values_.end())
        throw std::runtime_error("missing table cell: " + key);
    return it->second;
}

std::string default_data_path() {
    if (const char* env = std::getenv("KGYUKAWA_DATA_DIR"))
        return std::string(env) + "/paper_tables.csv";
#ifdef KGY_DATA_DIR
    return std::string(KGY_DATA_DIR) + "/paper_tables.csv";
#else
    return "data/paper_tables.csv";
#endif
}

namespace {

struct RootPair {
    double pos = kNaN; // largest positive root
    double neg = kNaN; // magnitude of the most negative root
    std::string failure; // status when the solve produced nothing
};

RootPair solve_pair(SpectrumMode mode, const ProblemParams& params, const QuantumNumbers& qn) {
    RootPair rp;
    std::vector<EnergyLevel> levels;
    try {
        levels = solve_levels(mode, params, qn);
    } catch (const NoRealStateError&) {
        rp.failure = "no-root";
        return rp;
    } catch (const ComplexBranchError&) {
        rp.failure = "complex-branch";
        return rp;
    }
    for (const auto& lvl : levels) {
        if (lvl.value > 0.0)
            rp.pos = std::isnan(rp.pos) ? lvl.value : std::max(rp.pos, lvl.value);
        else
            rp.neg = std::isnan(rp.neg) ? -lvl.value : std::max(rp.neg, -lvl.value);
    }
    rp.failure = "no-root";
    return rp;
}

struct CellValue {
    double computed = kNaN;
    std::string failure = "no-root";
};

void finish_row(ReportRow& row, double paper, double computed, const std::string& failure,
                double match_tol) {
    row.paper = round10(paper);
    if (std::isnan(computed)) {
        row.computed = kNaN;
        row.abs_dev = kNaN;
        row.rel_dev = kNaN;
        row.status = failure;
        return;
    }
    row.computed = round10(computed);
    const double abs_dev = std::abs(computed - paper);
    const double rel_dev = paper != 0.0 ? abs_dev / std::abs(paper) : kNaN;
    row.abs_dev = round10(abs_dev);
    row.rel_dev = round10(rel_dev);
    row.status = (rel_dev <= match_tol) ? "match" : "deviation";
}

void summarize(ComparisonReport& report) {
    std::map<std::pair<std::string, std::string>, ColumnSummary> acc;
    std::map<std::pair<std::string, std::string>, int> counted;
    std::vector<std::pair<std::string, std::string>> order;
    for (const auto& row : report.rows) {
        const auto key = std::make_pair(row.convention, row.column);
        if (!acc.count(key)) {
            acc[key] = ColumnSummary{row.convention, row.column, 0, 0, 0, 0, 0, 0, 0};
            order.push_back(key);
        }
        auto& s = acc[key];
        if (std::isnan(row.abs_dev)) {
            ++s.missing;
            continue;
        }
        s.max_abs_dev = std::max(s.max_abs_dev, row.abs_dev);
        s.mean_abs_dev += row.abs_dev;
        if (!std::isnan(row.rel_dev)) {
            s.max_rel_dev = std::max(s.max_rel_dev, row.rel_dev);
            s.mean_rel_dev += row.rel_dev;
        }
        ++counted[key];
        if (row.status == "match")
            ++s.matches;
        else
            ++s.deviations;
    }
    for (const auto& key : order) {
        auto s = acc[key];
        const int nn = counted[key];
        if (nn > 0) {
            s.mean_abs_dev = round10(s.mean_abs_dev / nn);
            s.mean_rel_dev = round10(s.mean_rel_dev / nn);
        }
        s.max_abs_dev = round10(s.max_abs_dev);
        s.max_rel_dev = round10(s.max_rel_dev);
        report.summary.push_back(s);
    }
}

} // namespace

ComparisonReport reproduce_table(int id, const TableOptions& options) {
    const TableSpec spec = table_spec(id);
    const PaperTables paper = PaperTables::load(options.data_path);

    ComparisonReport report;
    report.table_id = id;

    const UnitSystem natural{};
    const MassModel pdm_mass{1.0, 0.1};
    const MassModel const_mass{1.0, 0.0};

    // One solve per distinct configuration; cells share results.
    std::map<std::string, RootPair> pair_cache;
    const auto pair_for = [&](SpectrumMode mode, const ProblemParams& params,
                              const QuantumNumbers& qn) -> RootPair& {
        std::ostringstream key;
        key.precision(17);
        key << to_string(mode) << '|' << params.coupling.v0 << '|' << params.coupling.s0 << '|'
            << params.coupling.lambda << '|' << params.coupling.delta << '|' << params.mass.m1
            << '|' << qn.n << '|' << qn.l;
        auto it = pair_cache.find(key.str());
        if (it == pair_cache.end())
            it = pair_cache.emplace(key.str(), solve_pair(mode, params, qn)).first;
        return it->second;
    };

    std::map<std::string, CellValue> numerov_cache;
    const auto numerov_for = [&](double lambda, double delta, const QuantumNumbers& qn,
                                 const UnitSystem& units) -> CellValue& {
        std::ostringstream key;
        key.precision(17);
        key << lambda << '|' << delta << '|' << qn.n << '|' << qn.l << '|' << units.mu;
        auto it = numerov_cache.find(key.str());
        if (it == numerov_cache.end()) {
            CellValue v;
            try {
                RadialGrid grid = default_grid(lambda, qn, units);
                grid.count = options.numerov_count;
                v.computed = -numerov_eigenvalue(lambda, delta, qn.l, qn.n, grid, units).energy;
            } catch (const NotFoundError&) {
                v.failure = "no-root";
            }
            it = numerov_cache.emplace(key.str(), v).first;
        }
        return it->second;
    };

    const auto relativistic_cell = [&](const TableCellSpec& c, SpectrumMode mode,
                                       const MassModel& mass) {
        ProblemParams params;
        params.coupling = CouplingSet{c.v0, c.s0, std::isnan(c.lambda) ? 0.0 : c.lambda,
                                      c.delta};
        params.mass = mass;
        params.units = natural;
        const RootPair& rp = pair_for(mode, params, QuantumNumbers{c.n, c.l});
        const bool positive = c.column.find("negE") == std::string::npos;
        ReportRow row;
        row.group = c.group;
        row.column = c.column;
        row.n = c.n;
        row.l = c.l;
        row.g = c.g;
        row.delta = c.delta;
        row.lambda = c.lambda;
        row.v0 = c.v0;
        row.s0 = c.s0;
        finish_row(row, paper.value(c, id), positive ? rp.pos : rp.neg, rp.failure,
                   options.match_tol);
        report.rows.push_back(row);
    };

    switch (id) {
        case 1:
            for (const auto& c : spec.cells)
                relativistic_cell(c, SpectrumMode::VectorOnlyPdm, pdm_mass);
            break;
        case 2:
            for (const auto& c : spec.cells)
                relativistic_cell(c, SpectrumMode::GeneralPdm, pdm_mass);
            break;
        case 3:
            for (const auto& c : spec.cells)
                relativistic_cell(c, c.v0 == 0.0 ? SpectrumMode::ScalarOnlyPdm
                                                 : SpectrumMode::VectorOnlyPdm,
                                  pdm_mass);
            break;
        case 4:
            for (const auto& c : spec.cells)
                relativistic_cell(c,
                                  c.group == "v0=s0=2" ? SpectrumMode::ConstMassEqualDoubled
                                                       : SpectrumMode::ConstMassUnequal,
                                  const_mass);
            break;
        case 5: {
            std::vector<DeltaConvention> conventions;
            if (options.convention)
                conventions.push_back(*options.convention);
            else
                conventions = {DeltaConvention::GLambda, DeltaConvention::GLambdaHalf,
                               DeltaConvention::GLambdaSqHalf};
            const UnitSystem units{1.0, 1.0, false};
            for (DeltaConvention conv : conventions)
                for (const auto& c : spec.cells) {
                    const double delta = convention_delta(conv, c.g, kSqrt2);
                    const QuantumNumbers qn{c.n, c.l};
                    ReportRow row;
                    row.convention = to_string(conv);
                    row.group = c.group;
                    row.column = c.column;
                    row.n = c.n;
                    row.l = c.l;
                    row.g = c.g;
                    row.delta = round10(delta);
                    row.lambda = round10(kSqrt2);
                    row.v0 = kNaN;
                    row.s0 = kNaN;
                    double computed = kNaN;
                    std::string failure = "no-root";
                    if (c.column == "present") {
                        computed = -nonrel_energy(kSqrt2, delta, qn, units);
                    } else {
                        const CellValue& v = numerov_for(kSqrt2, delta, qn, units);
                        computed = v.computed;
                        failure = v.failure;
                    }
                    finish_row(row, paper.value(c, id), computed, failure, options.match_tol);
                    report.rows.push_back(row);
                }
            break;
        }
        case 6: {
            const UnitSystem units{1.0, 0.5, false};
            for (const auto& c : spec.cells) {
                const QuantumNumbers qn{c.n, c.l};
                ReportRow row;
                row.group = c.group;
                row.column = c.column;
                row.n = c.n;
                row.l = c.l;
                row.g = kNaN;
                row.delta = c.delta;
                row.lambda = c.lambda;
                row.v0 = kNaN;
                row.s0 = kNaN;
                double computed = kNaN;
                std::string failure = "no-root";
                if (c.column == "present") {
                    computed = -nonrel_energy(c.lambda, c.delta, qn, units);
                } else {
                    const CellValue& v = numerov_for(c.lambda, c.delta, qn, units);
                    computed = v.computed;
                    failure = v.failure;
                }
                finish_row(row, paper.value(c, id), computed, failure, options.match_tol);
                report.rows.push_back(row);
            }
            break;
        }
        default:
            throw std::invalid_argument("table id must be 1..6");
    }

    summarize(report);
    return report;
}

namespace {

nlohmann::json num_or_null(double v) {
    if (std::isnan(v))
        return nullptr;
    return v;
}

double null_or_num(const nlohmann::json& j) {
    return j.is_null() ? kNaN : j.get<double>();
}

} // namespace

void emit(const ComparisonReport& report, ReportFormat format, std::ostream& out) {
    if (format == ReportFormat::Csv) {
        out << "table,convention,group,n,l,g,delta,lambda,v0,s0,column,"
               "computed,paper,abs_dev,rel_dev,status\n";
        for (const auto& r : report.rows) {
            out << report.table_id << ',' << r.convention << ',' << r.group << ','
                << fmt_int(r.n) << ',' << fmt_int(r.l) << ',' << fmt10(r.g) << ','
                << fmt10(r.delta) << ',' << fmt10(r.lambda) << ',' << fmt10(r.v0) << ','
                << fmt10(r.s0) << ',' << r.column << ',' << fmt10(r.computed) << ','
                << fmt10(r.paper) << ',' << fmt10(r.abs_dev) << ',' << fmt10(r.rel_dev) << ','
                << r.status << '\n';
        }
        return;
    }

    nlohmann::json j;
    j["table"] = report.table_id;
    j["rows"] = nlohmann::json::array();
    for (const auto& r : report.rows) {
        nlohmann::json row;
        row["convention"] = r.convention;
        row["group"] = r.group;
        row["column"] = r.column;
        row["n"] = r.n < 0 ? nlohmann::json(nullptr) : nlohmann::json(r.n);
        row["l"] = r.l < 0 ? nlohmann::json(nullptr) : nlohmann::json(r.l);
        row["g"] = num_or_null(r.g);
        row["delta"] = num_or_null(r.delta);
        row["lambda"] = num_or_null(r.lambda);
        row["v0"] = num_or_null(r.v0);
        row["s0"] = num_or_null(r.s0);
        row["computed"] = num_or_null(r.computed);
        row["paper"] = num_or_null(r.paper);
        row["abs_dev"] = num_or_null(r.abs_dev);
        row["rel_dev"] = num_or_null(r.rel_dev);
        row["status"] = r.status;
        j["rows"].push_back(row);
    }
    j["summary"] = nlohmann::json::array();
    for (const auto& s : report.summary) {
        nlohmann::json row;
        row["convention"] = s.convention;
        row["column"] = s.column;
        row["max_abs_dev"] = num_or_null(s.max_abs_dev);
        row["mean_abs_dev"] = num_or_null(s.mean_abs_dev);
        row["max_rel_dev"] = num_or_null(s.max_rel_dev);
        row["mean_rel_dev"] = num_or_null(s.mean_rel_dev);
        row["matches"] = s.matches;
        row["deviations"] = s.deviations;
        row["missing"] = s.missing;
        j["summary"].push_back(row);
    }
    out << j.dump() << '\n';
}

void emit_to_file(const ComparisonReport& report, ReportFormat format,
                  const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write report to " + path);
    emit(report, format, out);
    out.flush();
    if (!out)
        throw std::runtime_error("write failed for " + path);
}

ComparisonReport parse_report_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    ComparisonReport report;
    report.table_id = j.at("table").get<int>();
    for (const auto& row : j.at("rows")) {
        ReportRow r;
        r.convention = row.at("convention").get<std::string>();
        r.group = row.at("group").get<std::string>();
        r.column = row.at("column").get<std::string>();
        r.n = row.at("n").is_null() ? -1 : row.at("n").get<int>();
        r.l = row.at("l").is_null() ? -1 : row.at("l").get<int>();
        r.g = null_or_num(row.at("g"));
        r.delta = null_or_num(row.at("delta"));
        r.lambda = null_or_num(row.at("lambda"));
        r.v0 = null_or_num(row.at("v0"));
        r.s0 = null_or_num(row.at("s0"));
        r.computed = null_or_num(row.at("computed"));
        r.paper = null_or_num(row.at("paper"));
        r.abs_dev = null_or_num(row.at("abs_dev"));
        r.rel_dev = null_or_num(row.at("rel_dev"));
        r.status = row.at("status").get<std::string>();
        report.rows.push_back(r);
    }
    for (const auto& row : j.at("summary")) {
        ColumnSummary s;
        s.convention = row.at("convention").get<std::string>();
        s.column = row.at("column").get<std::string>();
        s.max_abs_dev = null_or_num(row.at("max_abs_dev"));
        s.mean_abs_dev = null_or_num(row.at("mean_abs_dev"));
        s.max_rel_dev = null_or_num(row.at("max_rel_dev"));
        s.mean_rel_dev = null_or_num(row.at("mean_rel_dev"));
        s.matches = row.at("matches").get<int>();
        s.deviations = row.at("deviations").get<int>();
        s.missing = row.at("missing").get<int>();
        report.summary.push_back(s);
    }
    return report;
}

} // namespace kgy
