// sweep.hpp — run configs, parameter sweeps, and deterministic CSV/JSON
// emission for the command-line harness.

#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace cavent::sweep {

// Raised for malformed configs; the CLI maps it to the usage exit code.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Format { csv, json };
enum class Status { ok, truncation_warning, tolerance_fail };

std::string to_string(Status s);

// Angles are accepted as raw radians or as multiples of pi:
// "1.5", "pi", "0.75pi", "3pi/4", "pi/2".
double parse_angle(const std::string& text);

struct SweepAxis {
    std::string parameter;
    std::vector<double> values;
};

struct RunConfig {
    std::string scenario;  // scenario-a | scenario-b | micromaser
    std::map<std::string, double> params;
    std::vector<SweepAxis> axes;
    std::string out_path;  // empty = stdout
    Format format = Format::csv;
    bool emit_both_routes = false;
    std::string preset;  // "", "table1", "fig1"
    double truncation_warn = 1e-8;  // block-leakage level that flags a row
};

// Parses the JSON config document; CLI flag overrides are applied on top by
// the caller.
RunConfig load_config(const std::string& path);
RunConfig config_from_json_text(const std::string& text);

using Cell = std::variant<double, std::string>;

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<Cell>> rows;
    bool any_tolerance_fail = false;
};

// Throws ConfigError when out_path points into a missing directory.
void check_output_path(const RunConfig& config);

// Evaluates the config (cartesian sweep, first axis outermost; deterministic
// row order) and produces the output table. Throws ConfigError for invalid
// configs and std::runtime_error for numeric failures.
Table run(const RunConfig& config);

std::string format_double(double v);  // %.9g
std::string to_csv(const Table& t);   // header row, LF endings
std::string to_json(const Table& t);  // array of objects, same field names

// Renders and writes the table (or stdout when out_path is empty). The file
// is written in one shot after the run completes. Returns the process exit
// code: 0 ok, 3 when a validation-mode row failed its tolerance.
int write_output(const Table& t, const RunConfig& config);

}  // namespace cavent::sweep
