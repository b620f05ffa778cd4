#pragma once

#include "kgy/model.hpp"

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace kgy {

/// Candidate readings of the screening column of reference table 5, which
/// lists a dimensionless g per row. The published caption does not reproduce
/// its own entries; g*lambda does at g = 0.002, so it is the default.
enum class DeltaConvention { GLambda, GLambdaHalf, GLambdaSqHalf };

const char* to_string(DeltaConvention c);
double convention_delta(DeltaConvention c, double g, double lambda);

/// One printed cell of a reference table: its position keys and nothing else.
struct TableCellSpec {
    std::string group;
    std::string column;
    int n = -1, l = -1; // -1 when not applicable
    double g, delta, lambda, v0, s0; // NaN when not applicable
};

/// A reference table: its caption constants encoded as cells in printed order.
struct TableSpec {
    int id = 0;
    std::string caption;
    std::vector<TableCellSpec> cells;
};

/// Layout of reference table 1..6. Throws std::invalid_argument otherwise.
TableSpec table_spec(int id);

/// Loaded printed values, keyed by cell position.
class PaperTables {
public:
    static PaperTables load(const std::string& csv_path);

    double value(const TableCellSpec& cell, int table_id) const;
    std::size_t size() const { return values_.size(); }

private:
    std::map<std::string, double> values_;
};

/// Location of the transcription data file. Compile-time default, overridable
/// with the KGYUKAWA_DATA_DIR environment variable.
std::string default_data_path();

struct ReportRow {
    std::string convention; // table 5 block label, empty elsewhere
    std::string group;
    std::string column;
    int n = -1, l = -1;
    double g, delta, lambda, v0, s0;
    double computed; // NaN when no value was produced
    double paper;
    double abs_dev, rel_dev; // NaN when computed is missing
    std::string status;      // match | deviation | no-root | complex-branch
};

struct ColumnSummary {
    std::string convention;
    std::string column;
    double max_abs_dev, mean_abs_dev;
    double max_rel_dev, mean_rel_dev;
    int matches, deviations, missing;
};

struct ComparisonReport {
    int table_id = 0;
    std::vector<ReportRow> rows;
    std::vector<ColumnSummary> summary;
};

struct TableOptions {
    /// Pins the table-5 screening reading; all three blocks when unset.
    std::optional<DeltaConvention> convention;
    /// Relative deviation below which a cell counts as a match.
    double match_tol = 1e-4;
    /// Grid density for the direct-integrator reference columns.
    int numerov_count = 20000;
    std::string data_path = default_data_path();
};

/// Recomputes every cell of the requested table and pairs it with the
/// printed value. Deviations are data, never fatal: cells whose relation has
/// no root in the bound window are reported as such.
ComparisonReport reproduce_table(int id, const TableOptions& options = {});

enum class ReportFormat { Csv, Json };

/// Serializes a report. CSV carries a fixed header row and one line per cell;
/// JSON is a schema-stable object whose parse/emit round trip is
/// byte-identical. All numbers carry 10 significant digits.
void emit(const ComparisonReport& report, ReportFormat format, std::ostream& out);

/// Same, to a file. Unwritable destinations raise std::runtime_error naming
/// the path.
void emit_to_file(const ComparisonReport& report, ReportFormat format,
                  const std::string& path);

/// Parses a JSON report back (the round-trip counterpart of emit).
ComparisonReport parse_report_json(const std::string& text);

} // namespace kgy
